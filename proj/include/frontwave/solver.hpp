#pragma once

#include <string>
#include <vector>

#include "frontwave/fronts.hpp"
#include "frontwave/grid.hpp"
#include "frontwave/model.hpp"

namespace frontwave {

/// Full configuration of one radial simulation.
struct SimConfig {
  ModelParams params;
  RadialGrid grid;
  InitSpec init;
  double t_end = 150.0;
  double snapshot_dt = 5.0;
  double cfl_factor = 0.8;
  std::vector<double> levels = {0.05, 0.5};  // tracked front levels

  void validate() const;
};

/// One solver-invariant check at a snapshot; margin >= 0 means satisfied.
struct AuditRecord {
  double t;
  std::string invariant_id;
  double margin;
};

struct SimulationResult {
  SimConfig config;
  std::vector<FieldState> snapshots;
  FrontSeries fronts;
  std::vector<AuditRecord> audits;
  bool audits_ok = true;

  const FieldState& final_state() const { return snapshots.back(); }
  /// Snapshot with time closest to t (snapshot times are exact multiples).
  const FieldState& at_time(double t) const;
};

/// Initial state per the standard localized-farmer setup: H == 1, C == 0,
/// F = amplitude * smooth_bump(r / support_radius).
FieldState init_state(const RadialGrid& grid, const InitSpec& init);

/// Semi-discrete right-hand side: second-order central stencils, with the
/// origin term (N-1)/r * du/dr replaced by its symmetry limit (N-1)*d2u/dr2
/// at r=0. The last node is Dirichlet-pinned to (0,0,1) and gets rhs 0.
void rhs(const FieldState& state, const RadialGrid& grid, const ModelParams& m,
         ArrayXd& dF, ArrayXd& dC, ArrayXd& dH);

/// Largest stable explicit step: cfl * dr^2 / (2 N max(1,d)), further capped
/// at 0.1 / rho_reaction where rho_reaction = max(a, 1+s, b) * (1 + M) and
/// M = (max(1,a)+s)/min(1,a) is the sup bound on F+C.
double max_stable_dt(const RadialGrid& grid, const ModelParams& m,
                     double cfl_factor);

/// One Heun (explicit trapezoidal) step; right boundary held at (0,0,1).
/// Throws NumericsError (with t and node) on NaN/Inf.
FieldState step(const FieldState& state, const RadialGrid& grid,
                const ModelParams& m, double dt);

/// Integrates to t_end, emitting snapshots at multiples of snapshot_dt,
/// tracking fronts at the configured levels and auditing the solver
/// invariants at every snapshot. Requires r_max > c* t_end + 20.
SimulationResult simulate(const SimConfig& config);

/// True when any level-0.01 front of F, C or F+C lies beyond
/// r_max - 10 dr; simulate aborts with FrontAtBoundaryError in that case.
bool front_near_boundary(const FieldState& state, const RadialGrid& grid);

/// Closed-form logistic lower barrier m(t) for min(F+C+H) when d=1:
/// m' = eps2*m - eps3*m^2 with m(0)=m0.
double logistic_barrier(double m0, double t, const ModelParams& m);

/// Static sup bound on F+C: max(sup(F0+C0), (max(1,a)+s)/min(1,a)).
double total_farmer_bound(double initial_sup, const ModelParams& m);

}  // namespace frontwave
