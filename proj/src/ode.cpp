#include "frontwave/ode.hpp"

#include <cmath>

namespace frontwave {

Eigen::Vector2d ode_rhs(const OdeState& x, const ModelParams& m) {
  return {x.C * (1.0 - x.C) + m.s * x.C * x.H,
          m.b * x.H * (1.0 - x.H - m.g * x.C)};
}

double ode_max_dt(const ModelParams& m) {
  return 0.01 / std::max(1.0 + m.s, m.b * (1.0 + m.g * (1.0 + m.s)));
}

namespace detail {

void check_ode_inputs(const ModelParams& m, double dt, double T) {
  m.validate();
  if (!(T >= 0.0)) throw ConfigError("integration horizon must be >= 0");
  if (!(dt > 0.0) || dt > ode_max_dt(m) * (1.0 + 1e-12))
    throw ConfigError("ode step must satisfy dt <= 0.01/max(1+s, b(1+g(1+s)))");
}

void check_ode_bounds(const OdeState& x, double t) {
  const double lo = -1e-8, hi = 1e3;
  if (!(x.C >= lo && x.C <= hi && x.H >= lo && x.H <= hi) ||
      !std::isfinite(x.C) || !std::isfinite(x.H))
    throw NumericsError("ode trajectory left the guard region [-1e-8, 1e3]^2", t);
}

OdeState rk4_step(const OdeState& x, const ModelParams& m, double dt) {
  auto f = [&m](const OdeState& y) { return ode_rhs(y, m); };
  const Eigen::Vector2d k1 = f(x);
  const Eigen::Vector2d k2 = f({x.C + 0.5 * dt * k1[0], x.H + 0.5 * dt * k1[1]});
  const Eigen::Vector2d k3 = f({x.C + 0.5 * dt * k2[0], x.H + 0.5 * dt * k2[1]});
  const Eigen::Vector2d k4 = f({x.C + dt * k3[0], x.H + dt * k3[1]});
  const Eigen::Vector2d incr = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return {x.C + incr[0], x.H + incr[1]};
}

}  // namespace detail

OdeTrajectory integrate_ode(const OdeState& x0, const ModelParams& m,
                            double dt, double T) {
  OdeTrajectory traj;
  integrate_ode_observe(x0, m, dt, T, [&traj](double t, const OdeState& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
  });
  return traj;
}

namespace {
CoexistenceState require_coexistence(const ModelParams& m) {
  auto cx = coexistence_state(m);
  if (!cx) throw DomainError("Lyapunov function requires g < 1");
  return *cx;
}
}  // namespace

double lyapunov(const OdeState& x, const ModelParams& m) {
  const auto cx = require_coexistence(m);
  if (!(x.C > 0.0) || !(x.H > 0.0))
    throw DomainError("Lyapunov function requires C > 0 and H > 0");
  const double termC = (x.C - cx.C_star) - cx.C_star * std::log(x.C / cx.C_star);
  const double termH = (x.H - cx.H_star) - cx.H_star * std::log(x.H / cx.H_star);
  return m.b * m.g * termC + m.s * termH;
}

Eigen::Vector2d lyapunov_gradient(const OdeState& x, const ModelParams& m) {
  const auto cx = require_coexistence(m);
  if (!(x.C > 0.0) || !(x.H > 0.0))
    throw DomainError("Lyapunov gradient requires C > 0 and H > 0");
  return {m.b * m.g * (x.C - cx.C_star) / x.C, m.s * (x.H - cx.H_star) / x.H};
}

double lyapunov_dissipation(const OdeState& x, const ModelParams& m) {
  const auto cx = require_coexistence(m);
  if (!(x.C > 0.0) || !(x.H > 0.0))
    throw DomainError("Lyapunov dissipation requires C > 0 and H > 0");
  const double dc = x.C - cx.C_star;
  const double dh = x.H - cx.H_star;
  return -m.b * m.g * dc * dc - m.b * m.s * dh * dh;
}

}  // namespace frontwave
