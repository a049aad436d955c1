#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "frontwave/grid.hpp"
#include "frontwave/types.hpp"

namespace frontwave {

/// Rightmost downward crossing of `level` by a radial profile, refined by
/// linear interpolation between nodes. Absent when the profile never
/// crosses the level from above.
std::optional<double> level_set_position(const ArrayXd& profile, double dr,
                                         double level);

/// Per-snapshot level-set positions x_m(t) for tracked (field, level) pairs.
/// Positions are NaN where the crossing is absent.
struct FrontSeries {
  struct Key {
    FieldId field;
    double level;
    bool operator<(const Key& o) const {
      if (field != o.field) return field < o.field;
      return level < o.level;
    }
  };

  std::vector<double> times;
  std::map<Key, std::vector<double>> positions;

  void record(double t, FieldId field, double level, std::optional<double> pos);

  /// (t, x) pairs with a present crossing, restricted to [t_lo, t_hi].
  std::vector<std::pair<double, double>> present_samples(
      FieldId field, double level, double t_lo, double t_hi) const;
};

struct SpeedEstimate {
  double c_hat;
  double std_error;
  int n_samples;
};

/// Least-squares slope of x_m(t) over the window; needs >= 10 present samples.
SpeedEstimate speed_estimate(const FrontSeries& series, FieldId field,
                             double level, double t_lo, double t_hi);

struct DriftFit {
  double c_hat;         // fixed to the supplied spreading speed
  double k_hat;         // fitted log-drift coefficient
  double b_hat;         // fitted offset
  double residual_rms;
  int n_samples;
};

/// Fits c_star*t - x_m(t) ~ k*ln(t) + b with c fixed at c_star.
/// Window defaults to the last half of the series; samples require t >= 10
/// and at least 20 present points.
DriftFit drift_fit(const FrontSeries& series, FieldId field, double level,
                   double c_star,
                   std::optional<std::pair<double, double>> window = std::nullopt);

/// Per-field extrema over a radial zone (ball r <= c*t or annulus
/// c1*t <= r <= c2*t) at the snapshot's time.
struct ZoneStats {
  double t;
  double r_lo, r_hi;
  struct Extrema {
    double inf, sup;
  };
  Extrema F, C, H, FC;
};

ZoneStats zone_stats_ball(const FieldState& state, const RadialGrid& grid,
                          double c);
ZoneStats zone_stats_annulus(const FieldState& state, const RadialGrid& grid,
                             double c1, double c2);

struct Peak {
  double value;
  double location;
};

/// Maximum of F over r >= 0.8 * front_position and its location.
Peak peak_detect(const ArrayXd& profile_F, double dr, double front_position);

}  // namespace frontwave
