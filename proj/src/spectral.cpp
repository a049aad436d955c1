#include "frontwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace frontwave {

namespace {

const double kPi = 3.14159265358979323846;

ArrayXd rho_nodes(double drho, Index n) {
  return ArrayXd::LinSpaced(n, 0.0, drho * static_cast<double>(n - 1));
}

// Linear interpolation with zero extension outside the sample range.
double interp_or_zero(const ArrayXd& values, double dx, double x) {
  if (x < 0.0) return 0.0;
  const double pos = x / dx;
  const auto i = static_cast<Index>(std::floor(pos));
  if (i >= values.size() - 1) return 0.0;
  const double frac = pos - static_cast<double>(i);
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

}  // namespace

MovingFrame frame_position(double t, const DirichletParams& p) {
  p.validate();
  const double tp = t + p.t0;
  return {t, p.t0, p.delta,
          p.c_star() * tp - p.delta * std::log(tp / p.t0)};
}

SpectralProfile make_profile(double drho, ArrayXd values) {
  if (!(drho > 0.0)) throw ConfigError("drho must be > 0");
  if (values.size() < 8) throw ConfigError("profile needs at least 8 samples");
  if (!values.allFinite()) throw ConfigError("profile samples must be finite");
  SpectralProfile f{drho, std::move(values)};
  // Tail envelope: beyond rho_max-2 the samples must sit under the
  // e^{-rho^2/8} decay of the head, otherwise the weighted norm is garbage.
  const double rho_head = f.rho_max() - 2.0;
  double head_env = 0.0;
  for (Index i = 0; i < f.size(); ++i) {
    const double r = f.rho(i);
    if (r > rho_head) break;
    head_env = std::max(head_env, std::abs(f.values[i]) * std::exp(r * r / 8.0));
  }
  const double slack = 1e-12 * (1.0 + head_env);
  for (Index i = 0; i < f.size(); ++i) {
    const double r = f.rho(i);
    if (r <= rho_head) continue;
    if (std::abs(f.values[i]) * std::exp(r * r / 8.0) > head_env + slack)
      throw ConfigError("profile tail decays slower than e^{-rho^2/8}");
  }
  return f;
}

SpectralProfile phi_k(int k, double drho, double rho_max) {
  const auto n = static_cast<Index>(std::round(rho_max / drho)) + 1;
  const ArrayXd rho = rho_nodes(drho, n);
  ArrayXd q;
  double c;
  switch (k) {
    case 1:
      q = rho;
      c = 1.0 / (std::sqrt(2.0) * std::pow(kPi, 0.25));
      break;
    case 2:
      q = 0.75 * rho - 0.125 * rho.pow(3);
      c = 2.0 / (std::sqrt(3.0) * std::pow(kPi, 0.25));
      break;
    case 3:
      q = 1.875 * rho - 0.625 * rho.pow(3) + rho.pow(5) / 32.0;
      c = 1.0 / (std::sqrt(3.75) * std::pow(kPi, 0.25));
      break;
    default:
      throw ConfigError("phi_k implemented for k in {1,2,3}");
  }
  return make_profile(drho, c * q * (-rho.square() / 4.0).exp());
}

SpectralProfile default_zeta0(double drho, double rho_max) {
  const auto n = static_cast<Index>(std::round(rho_max / drho)) + 1;
  ArrayXd v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = smooth_bump(drho * static_cast<double>(i) - 1.0);
  return make_profile(drho, std::move(v));
}

SpectralProfile windowed_principal_mode(double drho, double rho_max) {
  auto edge = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  auto roll = [&](double x) {
    return edge(1.0 - x) / (edge(x) + edge(1.0 - x));
  };
  const auto n = static_cast<Index>(std::round(rho_max / drho)) + 1;
  ArrayXd v(n);
  for (Index i = 0; i < n; ++i) {
    const double rho = drho * static_cast<double>(i);
    const double win = rho <= 6.0 ? 1.0 : roll((rho - 6.0) / 2.0);
    v[i] = rho * std::exp(-rho * rho / 4.0) * win;
  }
  return make_profile(drho, std::move(v));
}

SpectralProfile operator_L(const SpectralProfile& f) {
  if (f.drho > 0.01 + 1e-15)
    throw ConfigError("operator_L requires drho <= 0.01");
  const Index n = f.size();
  const double h = f.drho;
  const ArrayXd& u = f.values;
  ArrayXd out(n);
  const Index m = n - 2;
  const ArrayXd rho = rho_nodes(h, n);
  out.segment(1, m) =
      (u.head(m) - 2.0 * u.segment(1, m) + u.tail(m)) / (h * h) +
      (rho.segment(1, m) / 2.0) * (u.tail(m) - u.head(m)) / (2.0 * h) +
      u.segment(1, m);
  // One-sided second-order stencils at the walls.
  out[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / (h * h) + u[0];
  const double d2_end =
      (2.0 * u[n - 1] - 5.0 * u[n - 2] + 4.0 * u[n - 3] - u[n - 4]) / (h * h);
  const double d1_end = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  out[n - 1] = d2_end + (rho[n - 1] / 2.0) * d1_end + u[n - 1];
  return SpectralProfile{h, std::move(out)};
}

double weighted_inner(const SpectralProfile& f, const SpectralProfile& g) {
  if (f.size() != g.size() || std::abs(f.drho - g.drho) > 1e-15)
    throw ConfigError("weighted_inner requires profiles on the same grid");
  const Index n = f.size();
  const ArrayXd rho = rho_nodes(f.drho, n);
  ArrayXd integrand = f.values * g.values * (rho.square() / 4.0).exp();
  double sum = integrand.sum() - 0.5 * (integrand[0] + integrand[n - 1]);
  return sum * f.drho;
}

double weighted_norm(const SpectralProfile& f) {
  return std::sqrt(weighted_inner(f, f));
}

double profile_moment(const SpectralProfile& f) {
  const Index n = f.size();
  const ArrayXd rho = rho_nodes(f.drho, n);
  ArrayXd integrand = f.values * rho;
  double sum = integrand.sum() - 0.5 * (integrand[0] + integrand[n - 1]);
  return sum * f.drho;
}

SpectralProfile project_Q(const SpectralProfile& f) {
  const SpectralProfile p1 = phi_k(1, f.drho, f.rho_max());
  const double coef = weighted_inner(f, p1);
  return SpectralProfile{f.drho, f.values - coef * p1.values};
}

double self_adjointness_defect(unsigned long seed, double drho, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const auto n = static_cast<Index>(std::round(12.0 / drho)) + 1;
  double defect = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    ArrayXd fv(n), gv(n);
    double cf[4], cg[4];
    for (int j = 0; j < 4; ++j) {
      cf[j] = coef(rng);
      cg[j] = coef(rng);
    }
    for (Index i = 0; i < n; ++i) {
      const double rho = drho * static_cast<double>(i);
      const double win = smooth_bump((rho - 3.0) / 2.5);
      double pf = 0.0, pg = 0.0, p = 1.0;
      for (int j = 0; j < 4; ++j) {
        p *= rho;
        pf += cf[j] * p;
        pg += cg[j] * p;
      }
      fv[i] = pf * win;
      gv[i] = pg * win;
    }
    auto f = make_profile(drho, std::move(fv));
    auto g = make_profile(drho, std::move(gv));
    f.values /= weighted_norm(f);
    g.values /= weighted_norm(g);
    defect = std::max(defect, std::abs(weighted_inner(operator_L(f), g) -
                                       weighted_inner(f, operator_L(g))));
  }
  return defect;
}

double asymptotic_leading_conjugate(double t, double xi,
                                    const DirichletParams& p,
                                    double zeta0_moment) {
  p.validate();
  if (xi < 0.0) throw DomainError("asymptotic_leading requires xi >= 0");
  const double tp = t + p.t0;
  const double gamma = p.gamma();
  const double pref = std::pow(tp, gamma - 0.5) / std::pow(p.t0, gamma);
  return pref * xi * (zeta0_moment / (2.0 * std::sqrt(kPi))) *
         std::exp(-xi * xi / (4.0 * tp));
}

double asymptotic_leading(double t, double xi, const DirichletParams& p,
                          double zeta0_moment) {
  return std::exp(-p.lambda_star * xi) *
         asymptotic_leading_conjugate(t, xi, p, zeta0_moment);
}

ArrayXd LinearDriftResult::z_at(std::size_t k) const {
  const ArrayXd& wk = w.at(k);
  const ArrayXd xi = ArrayXd::LinSpaced(wk.size(), 0.0,
                                        dxi * static_cast<double>(wk.size() - 1));
  return (-params.lambda_star * xi).exp() * wk;
}

SpectralProfile LinearDriftResult::self_similar_at(std::size_t k, double drho,
                                                   double rho_max) const {
  const double t = times.at(k);
  const double tp = t + params.t0;
  const double tau = std::log(tp / params.t0);
  const double scale = std::exp(-params.gamma() * tau);
  const double sq = std::sqrt(tp);
  const auto n = static_cast<Index>(std::round(rho_max / drho)) + 1;
  ArrayXd v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = scale * interp_or_zero(w[k], dxi, drho * static_cast<double>(i) * sq);
  return SpectralProfile{drho, std::move(v)};
}

LinearDriftResult solve_linear_drift(const DirichletParams& p,
                                     const SpectralProfile& zeta0,
                                     double t_end, double dxi,
                                     const std::vector<double>& sample_times) {
  p.validate();
  if (!(dxi > 0.0)) throw ConfigError("dxi must be > 0");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be > 0");
  for (double ts : sample_times)
    if (ts < 0.0 || ts > t_end + 1e-9)
      throw ConfigError("sample times must lie in [0, t_end]");

  const double sqrt_t0 = std::sqrt(p.t0);
  const double xi_support = (zeta0.rho_max() + 1.0) * sqrt_t0;
  const double Xi = std::max(10.0 * std::sqrt(t_end + p.t0), xi_support);
  const auto n = static_cast<Index>(std::ceil(Xi / dxi)) + 1;

  // Conjugated initial data w(0, xi) = zeta0(xi / sqrt(t0)).
  ArrayXd w(n);
  for (Index i = 0; i < n; ++i)
    w[i] = interp_or_zero(zeta0.values, zeta0.drho,
                          dxi * static_cast<double>(i) / sqrt_t0);
  w[0] = 0.0;
  w[n - 1] = 0.0;

  LinearDriftResult result;
  result.params = p;
  result.dxi = dxi;

  std::vector<double> stops = sample_times;
  std::sort(stops.begin(), stops.end());
  if (stops.empty() || stops.back() < t_end - 1e-9) stops.push_back(t_end);

  const ArrayXd xi = ArrayXd::LinSpaced(n, 0.0, dxi * static_cast<double>(n - 1));
  const Index m = n - 2;
  const double inv_h2 = 1.0 / (dxi * dxi);
  const double dt_max = 0.4 * dxi * dxi;
  ArrayXd drift(m), wnew(m);

  double t = 0.0;
  auto store = [&](double ts) {
    result.times.push_back(ts);
    result.w.push_back(w);
  };
  if (!stops.empty() && stops.front() <= 1e-12) store(0.0);

  for (double ts : stops) {
    if (ts <= t + 1e-12) continue;
    const auto n_sub = static_cast<long>(std::ceil((ts - t) / dt_max - 1e-12));
    const double dt = (ts - t) / static_cast<double>(n_sub);
    for (long j = 0; j < n_sub; ++j) {
      const double tp = t + p.t0;
      const double xi_front =
          p.c_star() * tp - p.delta * std::log(tp / p.t0);
      // w_t = w_xx + b w_x - lambda* b w,  b = -delta/(t+t0) + (N-1)/(xi+front)
      drift = -p.delta / tp +
              (p.dim_N - 1.0) / (xi.segment(1, m) + xi_front);
      auto um = w.head(m);
      auto uc = w.segment(1, m);
      auto up = w.tail(m);
      wnew = uc +
             dt * ((um - 2.0 * uc + up) * inv_h2 +
                   drift.max(0.0) * (up - uc) / dxi +
                   drift.min(0.0) * (uc - um) / dxi -
                   p.lambda_star * drift * uc);
      w.segment(1, m) = wnew;
      t += dt;
    }
    t = ts;
    if (!w.allFinite())
      throw NumericsError("linear drift solver produced non-finite values", t);
    store(ts);
  }
  return result;
}

}  // namespace frontwave
