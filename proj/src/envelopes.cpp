#include "frontwave/envelopes.hpp"

#include <algorithm>
#include <cmath>

namespace frontwave {

double super_F(double t, double r, double A1, const DerivedSpeeds& v) {
  return A1 * std::exp(-v.lambda_star * (r - v.c_star * t));
}

double super_F_star(double t, double r, double A_star, double a) {
  const double sq = std::sqrt(a);
  return A_star * std::exp(-sq * (r - 2.0 * sq * t));
}

double super_C(double t, double r, double A2, const DerivedSpeeds& v,
               double c_audit) {
  return A2 * std::exp(-v.lambda_star * (r - c_audit * t));
}

double sub_H(double t, double r, const EnvelopeConstants& k,
             const DerivedSpeeds& v, double g, double d) {
  const double e = std::exp(-v.lambda_star * (r - k.c_audit * t) / d);
  return std::max(0.0, 1.0 - g * (k.A1 + k.A2) * e);
}

EnvelopeConstants choose_constants(const FieldState& state0,
                                   const RadialGrid& grid,
                                   const ModelParams& m, double c_audit) {
  m.validate();
  const auto v = spreading_speeds(m);
  if (!(c_audit > v.c_star))
    throw ConfigError("audit speed must exceed c*");

  // Smallest A with A e^{-rate r} >= F0 on the grid. Only nodes carrying
  // farmers contribute; e^{rate r} overflows at large r otherwise.
  auto minimal_amplitude = [&](double rate) {
    double need = 0.0;
    for (Index i = 0; i < state0.size(); ++i)
      if (state0.F[i] > 0.0)
        need = std::max(need, state0.F[i] * std::exp(rate * grid.r(i)));
    return need;
  };

  EnvelopeConstants k;
  k.c_audit = c_audit;
  k.A1 = std::max(2.0 * minimal_amplitude(v.lambda_star), 1e-6);
  k.A_star = std::max(2.0 * minimal_amplitude(std::sqrt(m.a)), 1e-6);

  // Super-solution balance for the C envelope at the audit speed.
  const double balance =
      c_audit * v.lambda_star - v.lambda_star * v.lambda_star - 1.0 - m.s;
  double a2 = m.s * k.A1 / balance;
  // Sub-H validity needs the bracket to reach zero somewhere: g(A1+A2) > 1.
  a2 = std::max(a2, 1.0 / m.g - k.A1);
  k.A2 = std::max(2.0 * a2, 1e-6);
  return k;
}

EnvelopeReport audit_envelopes(const SimulationResult& sim,
                               const EnvelopeConstants& k) {
  const ModelParams& m = sim.config.params;
  const RadialGrid& grid = sim.config.grid;
  const auto v = spreading_speeds(m);
  const bool slow_farmers = m.a < 1.0 + m.s;

  EnvelopeReport report;
  report.constants = k;
  report.h_audit_restricted = m.d > 1.0;

  auto tol = [](double envelope) {
    return 1e-8 + 1e-6 * std::abs(envelope);
  };

  for (const auto& s : sim.snapshots) {
    for (Index i = 0; i < s.size(); ++i) {
      const double r = grid.r(i);
      const double fbar = super_F(s.t, r, k.A1, v);
      ++report.checks;
      if (s.F[i] > fbar + tol(fbar))
        report.violations.push_back({s.t, r, 'F', s.F[i] - fbar});
      const double cbar = super_C(s.t, r, k.A2, v, k.c_audit);
      ++report.checks;
      if (s.C[i] > cbar + tol(cbar))
        report.violations.push_back({s.t, r, 'C', s.C[i] - cbar});
      if (slow_farmers) {
        const double fstar = super_F_star(s.t, r, k.A_star, m.a);
        ++report.checks;
        if (s.F[i] > fstar + tol(fstar))
          report.violations.push_back({s.t, r, '*', s.F[i] - fstar});
      }
      if (!report.h_audit_restricted || r >= k.c_audit * s.t) {
        const double hlow = sub_H(s.t, r, k, v, m.g, m.d);
        ++report.checks;
        if (s.H[i] < hlow - tol(hlow))
          report.violations.push_back({s.t, r, 'H', hlow - s.H[i]});
      }
    }
  }
  return report;
}

}  // namespace frontwave
