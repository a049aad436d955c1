#pragma once

#include <string>
#include <vector>

namespace frontwave {

/// Outcome of one acceptance criterion.
struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

struct VerifyReport {
  unsigned long seed = 1;
  std::vector<CriterionResult> criteria;
  bool all_pass = true;
};

/// Runs the full verification suite (simulation targets, envelope audits,
/// ODE/Lyapunov checks, spectral checks, convergence orders).
VerifyReport run_verification(unsigned long seed);

std::string render_verify_report(const VerifyReport& report);

}  // namespace frontwave
