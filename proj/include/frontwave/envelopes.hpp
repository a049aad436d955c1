#pragma once

#include <cstddef>
#include <vector>

#include "frontwave/model.hpp"
#include "frontwave/solver.hpp"

namespace frontwave {

/// Amplitudes of the closed-form comparison envelopes and the audit speed.
struct EnvelopeConstants {
  double A1;       // farmer super-solution amplitude
  double A2;       // converted-farmer super-solution amplitude
  double A_star;   // sharper farmer amplitude for the a < 1+s audit
  double c_audit;  // audit frame speed, > c*
};

/// A1 e^{-lambda* (r - c* t)}; dominates F for all t once it dominates F0.
double super_F(double t, double r, double A1, const DerivedSpeeds& v);

/// A_star e^{-sqrt(a) (r - 2 sqrt(a) t)}; farmer envelope at the slower
/// a-rate, used when a < 1+s.
double super_F_star(double t, double r, double A_star, double a);

/// A2 e^{-lambda* (r - c_audit t)} with c_audit > c*.
double super_C(double t, double r, double A2, const DerivedSpeeds& v,
               double c_audit);

/// max(0, 1 - g (A1+A2) e^{-lambda* (r - c_audit t) / d}).
double sub_H(double t, double r, const EnvelopeConstants& k,
             const DerivedSpeeds& v, double g, double d);

/// Smallest amplitudes dominating the initial state, times a safety factor
/// of 2, with floors at 1e-6. A2 additionally satisfies the super-solution
/// balance (c_audit lambda* - lambda*^2 - 1 - s) A2 >= s A1 and the
/// sub-H positivity requirement g (A1 + A2) > 1.
EnvelopeConstants choose_constants(const FieldState& state0,
                                   const RadialGrid& grid,
                                   const ModelParams& m, double c_audit);

struct EnvelopeViolation {
  double t;
  double r;
  char field;  // 'F', 'C', 'H', or '*' for the a<1+s farmer envelope
  double margin;
};

struct EnvelopeReport {
  EnvelopeConstants constants;
  bool h_audit_restricted = false;  // d > 1: H audited only on r >= c_audit t
  std::size_t checks = 0;
  std::vector<EnvelopeViolation> violations;

  bool clean() const { return violations.empty(); }
};

/// Pointwise comparison of every snapshot against the envelopes with
/// tolerance 1e-8 + 1e-6 * |envelope|. Violations are data, not errors,
/// ordered by (t, r).
EnvelopeReport audit_envelopes(const SimulationResult& sim,
                               const EnvelopeConstants& k);

}  // namespace frontwave
