#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nervecover {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // the measured quantities behind the verdict
  double seconds = 0.0;
};

// Worker count for the Monte Carlo checks: NERVECOVER_WORKERS when set
// (must be a positive integer), else the hardware concurrency capped at 8.
int default_worker_count();

// Runs the ten acceptance checks with fixed seeds and writes one pass/fail
// line per criterion to `out` as each finishes. An exception inside a
// criterion fails that criterion and is reported in its detail string; the
// remaining criteria still run.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace nervecover
