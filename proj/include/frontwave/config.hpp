#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontwave/ode.hpp"
#include "frontwave/solver.hpp"

namespace frontwave {

enum class RunMode { Simulate, Sweep, Verify, Ode, Dirichlet, Fit };

const char* mode_name(RunMode m);
std::optional<RunMode> mode_from_name(const std::string& name);

/// One swept parameter: literal tokens are kept for stable directory names.
struct SweepAxis {
  std::string key;
  std::vector<std::string> tokens;
  std::vector<double> values;
};

/// Fully resolved experiment description parsed from the key=value format.
struct ExperimentConfig {
  std::optional<RunMode> mode;

  SimConfig sim;          // grid filled after r_max resolution
  bool r_max_auto = true; // r_max = 1.3 c* t_end + 50 when auto
  double r_max_value = 0.0;
  double c_audit_factor = 1.05;

  OdeState ode_x0{0.1, 0.9};
  double ode_T = 500.0;
  double ode_dt = 0.0;  // 0 -> step bound from the integrator contract

  double dirichlet_t0 = 400.0;
  double dirichlet_dxi = 0.2;
  double dirichlet_drho = 0.005;
  double dirichlet_tau_end = 1.0;
  bool dirichlet_delta_auto = true;  // delta = (N+2)/(2 lambda*)
  double dirichlet_delta = 0.0;

  FieldId fit_field = FieldId::FC;
  double fit_level = 0.5;
  bool fit_window_auto = true;
  double fit_t1 = 0.0, fit_t2 = 0.0;

  std::vector<SweepAxis> sweep_axes;

  unsigned long seed = 1;
  int workers = 1;
};

/// Parses the documented key=value / [sweep] table format. Unknown keys,
/// duplicates, type mismatches and invariant violations raise ConfigError
/// with the offending key and line.
ExperimentConfig parse_config(const std::string& text);

/// Applies the auto r_max rule and builds the grid for the current params.
void resolve_grid(ExperimentConfig& cfg);

/// Applies one sweep assignment (key from the sweep whitelist) to a config.
void apply_sweep_value(ExperimentConfig& cfg, const std::string& key,
                       double value);

}  // namespace frontwave
