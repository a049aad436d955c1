#include "frontwave/solver.hpp"

#include <algorithm>
#include <cmath>

namespace frontwave {

void SimConfig::validate() const {
  params.validate();
  grid.validate();
  init.validate(grid);
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (!(snapshot_dt > 0.0)) throw ConfigError("snapshot_dt must be > 0");
  if (t_end > 0.0 && snapshot_dt > t_end)
    throw ConfigError("snapshot_dt must be <= t_end");
  if (!(cfl_factor > 0.0 && cfl_factor < 1.0))
    throw ConfigError("cfl_factor must lie in (0,1)");
  for (double lv : levels)
    if (!(lv > 0.0)) throw ConfigError("front levels must be > 0");
}

const FieldState& SimulationResult::at_time(double t) const {
  const FieldState* best = &snapshots.front();
  double gap = std::abs(best->t - t);
  for (const auto& s : snapshots) {
    const double g = std::abs(s.t - t);
    if (g < gap) {
      gap = g;
      best = &s;
    }
  }
  return *best;
}

FieldState init_state(const RadialGrid& grid, const InitSpec& init) {
  grid.validate();
  init.validate(grid);
  FieldState s;
  s.t = 0.0;
  s.F = ArrayXd::Zero(grid.n_points);
  s.C = ArrayXd::Zero(grid.n_points);
  s.H = ArrayXd::Ones(grid.n_points);
  for (Index i = 0; i < grid.n_points; ++i)
    s.F[i] = init.amplitude * smooth_bump(grid.r(i) / init.support_radius);
  return s;
}

namespace {

// Diffusion stencil: central second differences plus the radial advection
// term, with the symmetry limit N * d2u/dr2 at the origin. Last node 0.
void laplacian_radial(const ArrayXd& u, const RadialGrid& grid, double diff,
                      const ArrayXd& adv_coef, ArrayXd& out) {
  const Index n = u.size();
  const Index m = n - 2;
  const double inv_dr2 = 1.0 / (grid.dr * grid.dr);
  out.segment(1, m) =
      diff * ((u.head(m) - 2.0 * u.segment(1, m) + u.tail(m)) * inv_dr2 +
              adv_coef * (u.tail(m) - u.head(m)));
  out[0] = diff * grid.dim_N * 2.0 * (u[1] - u[0]) * inv_dr2;
  out[n - 1] = 0.0;
}

// (N-1)/(r_i * 2dr) on interior nodes i = 1..n-2.
ArrayXd advection_coefficients(const RadialGrid& grid) {
  const Index m = grid.n_points - 2;
  ArrayXd coef(m);
  const double f = (grid.dim_N - 1.0) / (2.0 * grid.dr);
  for (Index i = 0; i < m; ++i) coef[i] = f / grid.r(i + 1);
  return coef;
}

struct RhsWorkspace {
  ArrayXd adv;
  ArrayXd k1F, k1C, k1H, k2F, k2C, k2H;
  ArrayXd F1, C1, H1;

  explicit RhsWorkspace(const RadialGrid& grid) : adv(advection_coefficients(grid)) {
    const Index n = grid.n_points;
    for (ArrayXd* a : {&k1F, &k1C, &k1H, &k2F, &k2C, &k2H, &F1, &C1, &H1})
      a->resize(n);
  }
};

void rhs_into(const ArrayXd& F, const ArrayXd& C, const ArrayXd& H,
              const RadialGrid& grid, const ModelParams& m, const ArrayXd& adv,
              ArrayXd& dF, ArrayXd& dC, ArrayXd& dH) {
  const Index n = F.size();
  laplacian_radial(F, grid, 1.0, adv, dF);
  laplacian_radial(C, grid, 1.0, adv, dC);
  laplacian_radial(H, grid, m.d, adv, dH);
  dF += m.a * F * (1.0 - F - C);
  dC += C * (1.0 - F - C) + m.s * H * (F + C);
  dH += m.b * H * (1.0 - H - m.g * (F + C));
  dF[n - 1] = dC[n - 1] = dH[n - 1] = 0.0;
}

void heun_step_inplace(ArrayXd& F, ArrayXd& C, ArrayXd& H,
                       const RadialGrid& grid, const ModelParams& m, double dt,
                       RhsWorkspace& w) {
  rhs_into(F, C, H, grid, m, w.adv, w.k1F, w.k1C, w.k1H);
  w.F1 = F + dt * w.k1F;
  w.C1 = C + dt * w.k1C;
  w.H1 = H + dt * w.k1H;
  rhs_into(w.F1, w.C1, w.H1, grid, m, w.adv, w.k2F, w.k2C, w.k2H);
  F += (0.5 * dt) * (w.k1F + w.k2F);
  C += (0.5 * dt) * (w.k1C + w.k2C);
  H += (0.5 * dt) * (w.k1H + w.k2H);
}

void check_finite(const FieldState& s, double t) {
  if (s.F.allFinite() && s.C.allFinite() && s.H.allFinite()) return;
  for (Index i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s.F[i]) || !std::isfinite(s.C[i]) || !std::isfinite(s.H[i]))
      throw NumericsError("time stepping produced a non-finite value", t, i);
  }
}

}  // namespace

void rhs(const FieldState& state, const RadialGrid& grid, const ModelParams& m,
         ArrayXd& dF, ArrayXd& dC, ArrayXd& dH) {
  grid.validate();
  m.validate();
  if (state.size() != grid.n_points)
    throw ConfigError("state size does not match grid");
  const ArrayXd adv = advection_coefficients(grid);
  dF.resize(grid.n_points);
  dC.resize(grid.n_points);
  dH.resize(grid.n_points);
  rhs_into(state.F, state.C, state.H, grid, m, adv, dF, dC, dH);
}

double total_farmer_bound(double initial_sup, const ModelParams& m) {
  return std::max(initial_sup, (std::max(1.0, m.a) + m.s) / std::min(1.0, m.a));
}

double max_stable_dt(const RadialGrid& grid, const ModelParams& m,
                     double cfl_factor) {
  const double diffusive =
      cfl_factor * grid.dr * grid.dr / (2.0 * grid.dim_N * std::max(1.0, m.d));
  const double M = (std::max(1.0, m.a) + m.s) / std::min(1.0, m.a);
  const double rho_reaction = std::max({m.a, 1.0 + m.s, m.b}) * (1.0 + M);
  return std::min(diffusive, 0.1 / rho_reaction);
}

FieldState step(const FieldState& state, const RadialGrid& grid,
                const ModelParams& m, double dt) {
  if (dt > max_stable_dt(grid, m, 1.0) * (1.0 + 1e-12))
    throw ConfigError("dt exceeds the stable explicit step");
  RhsWorkspace w(grid);
  FieldState out = state;
  heun_step_inplace(out.F, out.C, out.H, grid, m, dt, w);
  out.t = state.t + dt;
  check_finite(out, out.t);
  return out;
}

double logistic_barrier(double m0, double t, const ModelParams& m) {
  if (m0 <= 0.0) return 0.0;
  const double eps1 = std::max({1.0, m.a, m.s, m.g});
  const double eps2 = std::min({1.0, m.a, m.b});
  const double eps3 = std::max({1.0, eps1, eps1 * m.b});
  return eps2 / (eps3 + (eps2 / m0 - eps3) * std::exp(-eps2 * t));
}

namespace {

constexpr double kTolNeg = 1e-10;
constexpr double kTolSup = 1e-6;

void audit_snapshot(const FieldState& s, const ModelParams& m, double sup0,
                    double fch_min0, SimulationResult& result) {
  auto push = [&](const char* id, double margin) {
    result.audits.push_back({s.t, id, margin});
    if (!(margin >= 0.0)) result.audits_ok = false;
  };
  push("nonneg_F", s.F.minCoeff() + kTolNeg);
  push("nonneg_C", s.C.minCoeff() + kTolNeg);
  push("nonneg_H", s.H.minCoeff() + kTolNeg);
  push("H_le_one", 1.0 + kTolNeg - s.H.maxCoeff());
  const double bound = total_farmer_bound(sup0, m) + kTolSup;
  push("total_farmer_sup", bound - (s.F + s.C).maxCoeff());
  if (m.d == 1.0) {
    const double barrier = logistic_barrier(fch_min0, s.t, m) - kTolSup;
    push("fch_logistic_lower", (s.F + s.C + s.H).minCoeff() - barrier);
  }
}

void record_fronts(const FieldState& s, const SimConfig& cfg,
                   SimulationResult& result) {
  const double dr = cfg.grid.dr;
  result.fronts.times.push_back(s.t);
  const ArrayXd fc = s.F + s.C;
  for (double lv : cfg.levels) {
    result.fronts.record(s.t, FieldId::F, lv, level_set_position(s.F, dr, lv));
    result.fronts.record(s.t, FieldId::C, lv, level_set_position(s.C, dr, lv));
    result.fronts.record(s.t, FieldId::H, lv, level_set_position(s.H, dr, lv));
    result.fronts.record(s.t, FieldId::FC, lv, level_set_position(fc, dr, lv));
  }
  if (front_near_boundary(s, cfg.grid))
    throw FrontAtBoundaryError("front reached the domain boundary at t=" +
                               std::to_string(s.t));
}

}  // namespace

bool front_near_boundary(const FieldState& state, const RadialGrid& grid) {
  const double guard = grid.r_max() - 10.0 * grid.dr;
  const ArrayXd fc = state.F + state.C;
  for (const ArrayXd* u : {&state.F, &state.C, &fc}) {
    const auto pos = level_set_position(*u, grid.dr, 0.01);
    if (pos && *pos > guard) return true;
  }
  return false;
}

SimulationResult simulate(const SimConfig& config) {
  config.validate();
  const auto speeds = spreading_speeds(config.params);
  if (!(config.grid.r_max() > speeds.c_star * config.t_end + 20.0))
    throw ConfigError("r_max must exceed c*. t_end + 20 so fronts stay interior");

  SimulationResult result;
  result.config = config;

  FieldState s = init_state(config.grid, config.init);
  const double sup0 = (s.F + s.C).maxCoeff();
  const double fch_min0 = (s.F + s.C + s.H).minCoeff();

  std::vector<double> snap_times{0.0};
  for (long k = 1; k * config.snapshot_dt < config.t_end - 1e-12; ++k)
    snap_times.push_back(k * config.snapshot_dt);
  if (config.t_end > 0.0) snap_times.push_back(config.t_end);

  const double dt_max = max_stable_dt(config.grid, config.params,
                                      config.cfl_factor);
  RhsWorkspace work(config.grid);

  audit_snapshot(s, config.params, sup0, fch_min0, result);
  record_fronts(s, config, result);
  result.snapshots.push_back(s);

  for (std::size_t k = 1; k < snap_times.size(); ++k) {
    const double span = snap_times[k] - snap_times[k - 1];
    const auto n_sub = static_cast<long>(std::ceil(span / dt_max - 1e-12));
    const double dt = span / static_cast<double>(n_sub);
    for (long j = 0; j < n_sub; ++j)
      heun_step_inplace(s.F, s.C, s.H, config.grid, config.params, dt, work);
    s.t = snap_times[k];
    check_finite(s, s.t);
    audit_snapshot(s, config.params, sup0, fch_min0, result);
    record_fronts(s, config, result);
    result.snapshots.push_back(s);
  }
  return result;
}

}  // namespace frontwave
