#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nervecover {

// Shortest decimal form that parses back to the same double; integers and
// infinities print plainly. Deterministic across runs.
std::string format_double(double x);

// Comma-joined row writer with a '#' comment header carrying the tool
// version and a config echo. No timestamps: identical configurations must
// produce byte-identical files.
class csv_writer {
 public:
  csv_writer(std::ostream& out, const std::string& config_echo);

  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace nervecover
