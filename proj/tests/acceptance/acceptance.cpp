// Acceptance suite: runs every verification criterion and prints one
// PASS/FAIL line per criterion. Exits nonzero when any criterion fails.

#include <cstdio>

#include "frontwave/verify.hpp"

int main() {
  const auto report = frontwave::run_verification(1);
  int failures = 0;
  for (const auto& c : report.criteria) {
    std::printf("%s  criterion %2d: %s  [%s]  (%.1fs)\n",
                c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                c.detail.c_str(), c.seconds);
    if (!c.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(report.criteria.size()) - failures,
              report.criteria.size());
  return failures == 0 ? 0 : 1;
}
