// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure.  Also reachable as `singpot verify`.

#include <cstdio>
#include <iostream>

#include "singpot/verify.hpp"

int main() {
  const auto results = singpot::run_acceptance(&std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.passed) ++failed;
  double total = 0.0;
  for (const auto& r : results) total += r.seconds;
  std::printf("%zu criteria, %d failed, %.1f s total\n", results.size(), failed, total);
  return failed == 0 ? 0 : 1;
}
