#pragma once

#include <Eigen/Core>

#include "frontwave/types.hpp"

namespace frontwave {

/// Uniform radial grid r_i = i*dr on [0, r_max], r_max = dr*(n_points-1).
struct RadialGrid {
  double dr = 0.1;
  Index n_points = 16;
  int dim_N = 1;

  double r_max() const { return dr * static_cast<double>(n_points - 1); }
  double r(Index i) const { return dr * static_cast<double>(i); }
  ArrayXd nodes() const {
    return ArrayXd::LinSpaced(n_points, 0.0, r_max());
  }

  void validate() const {
    if (!(dr > 0.0)) throw ConfigError("grid spacing dr must be > 0");
    if (n_points < 16) throw ConfigError("grid needs at least 16 points");
    if (dim_N < 1) throw ConfigError("spatial dimension must be >= 1");
  }
};

/// Time-stamped radial profiles of the three populations.
struct FieldState {
  double t = 0.0;
  ArrayXd F, C, H;

  Index size() const { return F.size(); }
};

/// Compactly supported initial farmer distribution: a plateau with
/// C-infinity edges, amplitude * smooth_bump(r / support_radius).
struct InitSpec {
  double amplitude = 1.0;
  double support_radius = 5.0;

  void validate(const RadialGrid& grid) const {
    if (!(amplitude > 0.0)) throw ConfigError("init amplitude must be > 0");
    if (!(support_radius > 0.0)) throw ConfigError("support_radius must be > 0");
    if (!(support_radius < grid.r_max() / 4.0))
      throw ConfigError("support_radius must be < r_max/4");
  }
};

}  // namespace frontwave
