#pragma once

#include <Eigen/Core>

#include <vector>

#include "frontwave/model.hpp"
#include "frontwave/types.hpp"

namespace frontwave {

/// Spatially homogeneous (C, H) pair of the converted-farmer /
/// hunter-gatherer subsystem. The open box
/// Sigma = {0 < C < 1+s, 0 < H < 1} is forward-invariant.
struct OdeState {
  double C = 0.0;
  double H = 0.0;
};

/// ( C(1-C) + sCH, bH(1-H-gC) ).
Eigen::Vector2d ode_rhs(const OdeState& x, const ModelParams& m);

struct OdeTrajectory {
  std::vector<double> times;
  std::vector<OdeState> states;

  const OdeState& back() const { return states.back(); }
};

/// Largest step admitted by the integrator contract:
/// 0.01 / max(1+s, b(1+g(1+s))).
double ode_max_dt(const ModelParams& m);

/// Classical 4th-order one-step integration from x0 to time T, sampling
/// every step. Throws ConfigError if dt violates the step bound and
/// NumericsError if the state leaves [-1e-8, 1e3]^2.
OdeTrajectory integrate_ode(const OdeState& x0, const ModelParams& m,
                            double dt, double T);

/// Streaming variant: calls observer(t, state) after every step (and once
/// at t=0) without storing the trajectory.
template <typename Observer>
void integrate_ode_observe(const OdeState& x0, const ModelParams& m, double dt,
                           double T, Observer&& observer);

/// Strict Lyapunov function of the subsystem for g < 1:
///   Phi = bg[(C-C*) - C* ln(C/C*)] + s[(H-H*) - H* ln(H/H*)],
/// nonnegative on Sigma, zero only at (C*, H*).
double lyapunov(const OdeState& x, const ModelParams& m);

/// Time derivative of Phi along the flow: -bg(C-C*)^2 - bs(H-H*)^2.
double lyapunov_dissipation(const OdeState& x, const ModelParams& m);

/// Gradient of Phi, used by the dissipation identity:
///   ( bg(C-C*)/C, s(H-H*)/H ).
Eigen::Vector2d lyapunov_gradient(const OdeState& x, const ModelParams& m);

// -- implementation ---------------------------------------------------------

namespace detail {
void check_ode_inputs(const ModelParams& m, double dt, double T);
void check_ode_bounds(const OdeState& x, double t);
OdeState rk4_step(const OdeState& x, const ModelParams& m, double dt);
}  // namespace detail

template <typename Observer>
void integrate_ode_observe(const OdeState& x0, const ModelParams& m, double dt,
                           double T, Observer&& observer) {
  detail::check_ode_inputs(m, dt, T);
  OdeState x = x0;
  observer(0.0, x);
  if (T <= 0.0) return;
  // Divide the horizon evenly so the last sample lands exactly on T.
  const auto n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(T / dt * (1.0 - 1e-12))));
  const double dt_eff = T / static_cast<double>(n_steps);
  for (long k = 1; k <= n_steps; ++k) {
    x = detail::rk4_step(x, m, dt_eff);
    const double t = dt_eff * static_cast<double>(k);
    detail::check_ode_bounds(x, t);
    observer(t, x);
  }
}

}  // namespace frontwave
