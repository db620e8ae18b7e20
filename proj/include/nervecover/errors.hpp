#pragma once

#include <stdexcept>
#include <string>

namespace nervecover {

// Invalid parameters, malformed configuration, unusable sampling setup.
// Maps to process exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Two routes that must agree (exact vs. resampled, closed form vs. oracle)
// disagreed beyond tolerance. Maps to process exit code 2.
class consistency_error : public std::runtime_error {
 public:
  explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable or malformed input files. Maps to process exit code 3.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nervecover
