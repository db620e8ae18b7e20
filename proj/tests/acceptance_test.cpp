#include <iostream>

#include "nervecover/selftest.hpp"

int main() {
  std::vector<nervecover::CriterionResult> results =
      nervecover::run_acceptance(std::cout);
  bool ok = nervecover::all_passed(results);
  std::cout << (ok ? "all 10 criteria passed" : "criteria FAILED") << std::endl;
  return ok ? 0 : 1;
}
