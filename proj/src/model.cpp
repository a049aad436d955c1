#include "frontwave/model.hpp"

#include <algorithm>
#include <cmath>

namespace frontwave {

void DimensionalParams::validate() const {
  const double fields[] = {D, D_h, r_f, r_c, r_h, K, L, e_conv};
  const char* names[] = {"D", "D_h", "r_f", "r_c", "r_h", "K", "L", "e_conv"};
  for (int i = 0; i < 8; ++i) {
    if (!(fields[i] > 0.0))
      throw ConfigError(std::string("dimensional parameter ") + names[i] +
                        " must be strictly positive");
  }
  if (D_h < D)
    throw ConfigError("D_h must be >= D (hunter-gatherers diffuse at least as fast, d >= 1)");
}

void ModelParams::validate() const {
  if (!(a > 0.0)) throw ConfigError("a must be > 0");
  if (!(b > 0.0)) throw ConfigError("b must be > 0");
  if (!(s > 0.0)) throw ConfigError("s must be > 0");
  if (!(g > 0.0)) throw ConfigError("g must be > 0");
  if (!(d >= 1.0)) throw ConfigError("d must be >= 1 (d = D_h/D)");
  if (dim_N < 1) throw ConfigError("dim_N must be a positive integer");
}

ModelParams nondimensionalize(const DimensionalParams& p, int dim_N) {
  p.validate();
  ModelParams m;
  m.a = p.r_f / p.r_c;
  m.b = p.r_h / p.r_c;
  m.s = p.e_conv * p.L / p.r_c;
  m.g = p.e_conv * p.K / p.r_h;
  m.d = p.D_h / p.D;
  m.dim_N = dim_N;
  m.validate();
  return m;
}

DerivedSpeeds spreading_speeds(const ModelParams& m) {
  m.validate();
  const double ca = 2.0 * std::sqrt(m.a);
  const double cs = 2.0 * std::sqrt(1.0 + m.s);
  DerivedSpeeds v;
  v.c_star = std::max(ca, cs);
  v.c_star_star = std::min(ca, cs);
  v.lambda_star = v.c_star / 2.0;
  return v;
}

std::optional<CoexistenceState> coexistence_state(const ModelParams& m) {
  m.validate();
  if (m.g >= 1.0) return std::nullopt;
  const double denom = 1.0 + m.s * m.g;
  return CoexistenceState{(1.0 + m.s) / denom, (1.0 - m.g) / denom};
}

Eigen::Vector3d SteadyStateFamily::state(double theta) const {
  switch (kind) {
    case Kind::Origin: return {0.0, 0.0, 0.0};
    case Kind::HunterGatherers: return {0.0, 0.0, 1.0};
    case Kind::FarmerLine: return {theta, 1.0 - theta, 0.0};
    case Kind::Coexistence: break;
  }
  return representative;
}

namespace {
SteadyStateFamily make_family(SteadyStateFamily::Kind k, std::string stab,
                              Eigen::Vector3d rep = Eigen::Vector3d::Zero()) {
  SteadyStateFamily f;
  f.kind = k;
  f.stability = std::move(stab);
  f.representative = rep;
  return f;
}
}  // namespace

std::vector<SteadyStateFamily> steady_states(const ModelParams& m) {
  m.validate();
  std::vector<SteadyStateFamily> out;
  out.push_back(make_family(SteadyStateFamily::Kind::Origin, "unstable"));
  out.push_back(make_family(SteadyStateFamily::Kind::HunterGatherers, "unstable"));
  out.push_back(make_family(SteadyStateFamily::Kind::FarmerLine,
                            "line of neutral equilibria, stable when g >= 1",
                            {1.0, 0.0, 0.0}));
  if (auto cx = coexistence_state(m)) {
    out.push_back(make_family(SteadyStateFamily::Kind::Coexistence,
                              "stable exactly when g < 1",
                              {0.0, cx->C_star, cx->H_star}));
  }
  return out;
}

Regime classify_regime(const ModelParams& m) {
  m.validate();
  Regime r;
  r.conversion = (m.g >= 1.0) ? Conversion::High : Conversion::Low;
  if (m.a > 1.0 + m.s)
    r.front_order = FrontOrder::FarmerFast;
  else if (m.a < 1.0 + m.s)
    r.front_order = FrontOrder::FarmerSlow;
  else
    r.front_order = FrontOrder::Degenerate;
  const bool fast = r.front_order == FrontOrder::FarmerFast;
  r.waveform_figure = (r.conversion == Conversion::High) ? (fast ? 1 : 2) : (fast ? 3 : 4);
  return r;
}

DriftCoefficients log_drift_coefficients(const ModelParams& m) {
  const auto v = spreading_speeds(m);
  const double np2 = m.dim_N + 2.0;
  DriftCoefficients k;
  k.front_order = classify_regime(m).front_order;
  switch (k.front_order) {
    case FrontOrder::FarmerFast:
      k.k_total_lower = np2 * v.c_star / std::min(1.0, m.a);
      k.k_upper = np2 / (2.0 * v.lambda_star);
      break;
    case FrontOrder::FarmerSlow:
      k.k_converted = np2 / v.c_star;
      break;
    case FrontOrder::Degenerate:
      k.k_total_lower = np2 / v.c_star;
      k.k_hunter_lower = m.dim_N / v.c_star;
      break;
  }
  return k;
}

SufficientCondition coexistence_sufficient_condition(const ModelParams& m) {
  m.validate();
  if (m.g >= 1.0)
    throw DomainError("coexistence_sufficient_condition requires g < 1");
  const double mina = std::min(1.0, m.a);
  const double c_star = spreading_speeds(m).c_star;
  SufficientCondition r;
  r.small_conversion_branch = m.g < mina / (mina + m.s);
  r.fast_hunter_branch = m.b * m.d >= c_star / (1.0 - m.g);
  r.satisfied = r.small_conversion_branch || r.fast_hunter_branch;
  return r;
}

Eigen::Vector3d reaction_rhs(const Eigen::Vector3d& fch, const ModelParams& m) {
  const double F = fch[0], C = fch[1], H = fch[2];
  const double fc = F + C;
  return {m.a * F * (1.0 - fc),
          C * (1.0 - fc) + m.s * H * fc,
          m.b * H * (1.0 - H - m.g * fc)};
}

}  // namespace frontwave
