#include "frontwave/fronts.hpp"

#include <cmath>
#include <limits>

namespace frontwave {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::optional<double> level_set_position(const ArrayXd& profile, double dr,
                                         double level) {
  for (Index i = profile.size() - 2; i >= 0; --i) {
    if (profile[i] >= level && profile[i + 1] < level) {
      const double frac = (profile[i] - level) / (profile[i] - profile[i + 1]);
      return dr * (static_cast<double>(i) + frac);
    }
  }
  return std::nullopt;
}

void FrontSeries::record(double t, FieldId field, double level,
                         std::optional<double> pos) {
  (void)t;  // times vector is appended once per snapshot by the caller
  positions[{field, level}].push_back(pos.value_or(kNaN));
}

std::vector<std::pair<double, double>> FrontSeries::present_samples(
    FieldId field, double level, double t_lo, double t_hi) const {
  std::vector<std::pair<double, double>> out;
  auto it = positions.find({field, level});
  if (it == positions.end()) return out;
  const auto& xs = it->second;
  for (std::size_t k = 0; k < times.size() && k < xs.size(); ++k) {
    if (times[k] < t_lo || times[k] > t_hi) continue;
    if (std::isnan(xs[k])) continue;
    out.emplace_back(times[k], xs[k]);
  }
  return out;
}

SpeedEstimate speed_estimate(const FrontSeries& series, FieldId field,
                             double level, double t_lo, double t_hi) {
  const auto pts = series.present_samples(field, level, t_lo, t_hi);
  const int n = static_cast<int>(pts.size());
  if (n < 10)
    throw InsufficientSamplesError(
        "speed_estimate needs >= 10 present samples in the window, got " +
        std::to_string(n));
  double st = 0.0, sx = 0.0;
  for (auto [t, x] : pts) {
    st += t;
    sx += x;
  }
  const double tbar = st / n, xbar = sx / n;
  double stt = 0.0, stx = 0.0;
  for (auto [t, x] : pts) {
    stt += (t - tbar) * (t - tbar);
    stx += (t - tbar) * (x - xbar);
  }
  const double slope = stx / stt;
  double rss = 0.0;
  for (auto [t, x] : pts) {
    const double r = (x - xbar) - slope * (t - tbar);
    rss += r * r;
  }
  const double sigma2 = n > 2 ? rss / (n - 2) : 0.0;
  return {slope, std::sqrt(sigma2 / stt), n};
}

DriftFit drift_fit(const FrontSeries& series, FieldId field, double level,
                   double c_star,
                   std::optional<std::pair<double, double>> window) {
  double t_lo, t_hi;
  if (window) {
    t_lo = window->first;
    t_hi = window->second;
  } else {
    t_hi = series.times.empty() ? 0.0 : series.times.back();
    t_lo = t_hi / 2.0;
  }
  t_lo = std::max(t_lo, 10.0);

  const auto pts = series.present_samples(field, level, t_lo, t_hi);
  const int n = static_cast<int>(pts.size());
  if (n < 20)
    throw InsufficientSamplesError(
        "drift_fit needs >= 20 present samples with t >= 10, got " +
        std::to_string(n));

  // Regress y = c* t - x_m(t) on ln t.
  double su = 0.0, sy = 0.0;
  for (auto [t, x] : pts) {
    su += std::log(t);
    sy += c_star * t - x;
  }
  const double ubar = su / n, ybar = sy / n;
  double suu = 0.0, suy = 0.0;
  for (auto [t, x] : pts) {
    const double u = std::log(t) - ubar;
    suu += u * u;
    suy += u * (c_star * t - x - ybar);
  }
  DriftFit fit;
  fit.c_hat = c_star;
  fit.k_hat = suy / suu;
  fit.b_hat = ybar - fit.k_hat * ubar;
  double rss = 0.0;
  for (auto [t, x] : pts) {
    const double r = (c_star * t - x) - (fit.k_hat * std::log(t) + fit.b_hat);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  fit.n_samples = n;
  return fit;
}

namespace {

ZoneStats stats_over(const FieldState& state, const RadialGrid& grid,
                     double r_lo, double r_hi) {
  ZoneStats z;
  z.t = state.t;
  z.r_lo = r_lo;
  z.r_hi = r_hi;
  bool any = false;
  auto acc = [&](ZoneStats::Extrema& e, double v) {
    e.inf = std::min(e.inf, v);
    e.sup = std::max(e.sup, v);
  };
  const double inf0 = std::numeric_limits<double>::infinity();
  z.F = z.C = z.H = z.FC = {inf0, -inf0};
  for (Index i = 0; i < state.size(); ++i) {
    const double r = grid.r(i);
    if (r < r_lo - 1e-12 || r > r_hi + 1e-12) continue;
    any = true;
    acc(z.F, state.F[i]);
    acc(z.C, state.C[i]);
    acc(z.H, state.H[i]);
    acc(z.FC, state.F[i] + state.C[i]);
  }
  if (!any) throw DomainError("zone contains no grid nodes");
  return z;
}

}  // namespace

ZoneStats zone_stats_ball(const FieldState& state, const RadialGrid& grid,
                          double c) {
  return stats_over(state, grid, 0.0, c * state.t);
}

ZoneStats zone_stats_annulus(const FieldState& state, const RadialGrid& grid,
                             double c1, double c2) {
  return stats_over(state, grid, c1 * state.t, c2 * state.t);
}

Peak peak_detect(const ArrayXd& profile_F, double dr, double front_position) {
  const Index n = profile_F.size();
  Index start = static_cast<Index>(std::ceil(0.8 * front_position / dr - 1e-12));
  start = std::max<Index>(0, std::min(start, n - 1));
  Index best = start;
  for (Index i = start + 1; i < n; ++i)
    if (profile_F[i] > profile_F[best]) best = i;
  return {profile_F[best], dr * static_cast<double>(best)};
}

}  // namespace frontwave
