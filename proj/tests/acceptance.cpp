// Acceptance gate: runs every criterion and prints one pass/fail line each.
// Exit status is the number of failing criteria (0 = all pass).
#include <cstdio>

#include "regional/selftest.hpp"

int main() {
  const auto results = regional::run_acceptance(/*quick=*/false);
  const int failures = regional::report_acceptance(results);
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures;
}
