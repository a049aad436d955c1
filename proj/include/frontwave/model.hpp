#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "frontwave/types.hpp"

namespace frontwave {

/// Dimensional parameters of the three-species system before rescaling.
/// All strictly positive; hunter-gatherers diffuse at least as fast as farmers.
struct DimensionalParams {
  double D = 1.0;       // farmer diffusion [L^2/T]
  double D_h = 1.0;     // hunter-gatherer diffusion [L^2/T], D_h >= D
  double r_f = 1.0;     // intrinsic growth, initial farmers [1/T]
  double r_c = 1.0;     // intrinsic growth, converted farmers [1/T]
  double r_h = 1.0;     // intrinsic growth, hunter-gatherers [1/T]
  double K = 1.0;       // farmer carrying capacity [density]
  double L = 1.0;       // hunter-gatherer carrying capacity [density]
  double e_conv = 1.0;  // conversion rate [1/(density*T)]

  void validate() const;
};

/// Nondimensional coefficients (a, b, s, g, d) plus the spatial dimension N.
struct ModelParams {
  double a = 1.0;  // r_f / r_c
  double b = 1.0;  // r_h / r_c
  double s = 1.0;  // e*L / r_c
  double g = 1.0;  // e*K / r_h
  double d = 1.0;  // D_h / D, >= 1
  int dim_N = 1;

  void validate() const;
};

/// Linear spreading speeds of the farmer complex.
struct DerivedSpeeds {
  double c_star;       // max(2*sqrt(a), 2*sqrt(1+s))
  double c_star_star;  // min(2*sqrt(a), 2*sqrt(1+s))
  double lambda_star;  // c_star / 2, leading-edge decay rate
};

/// Mixed equilibrium (0, C*, H*); exists and is stable exactly when g < 1.
struct CoexistenceState {
  double C_star;  // (1+s)/(1+s*g)
  double H_star;  // (1-g)/(1+s*g)
};

enum class Conversion { High, Low };                      // g >= 1 / g < 1
enum class FrontOrder { FarmerFast, FarmerSlow, Degenerate };  // a vs 1+s

/// Qualitative spreading regime; waveform_figure in 1..4 indexes the
/// canonical transient waveform panel for the parameter quadrant.
struct Regime {
  Conversion conversion;
  FrontOrder front_order;
  int waveform_figure;
};

/// One family of spatially homogeneous steady states.
struct SteadyStateFamily {
  enum class Kind { Origin, HunterGatherers, FarmerLine, Coexistence };
  Kind kind;
  std::string stability;
  Eigen::Vector3d representative = Eigen::Vector3d::Zero();

  /// Representative (F, C, H) point. For FarmerLine, theta in [0,1]
  /// parameterizes (theta, 1-theta, 0); other kinds ignore theta.
  Eigen::Vector3d state(double theta = 0.0) const;
};

/// Logarithmic front-drift coefficients k in the frame c*t - k*ln(t).
/// Which members are set depends on the ordering of a and 1+s.
struct DriftCoefficients {
  FrontOrder front_order;
  std::optional<double> k_total_lower;   // F+C lower-bound frame
  std::optional<double> k_upper;         // upper frame, (N+2)/c*
  std::optional<double> k_converted;     // C, when a < 1+s
  std::optional<double> k_hunter_lower;  // H lower frame, when a = 1+s
};

/// Result of the low-conversion persistence test (requires g < 1):
/// satisfied when g < min(1,a)/(min(1,a)+s) or b*d >= c*/(1-g).
struct SufficientCondition {
  bool satisfied;
  bool small_conversion_branch;  // g < min(1,a)/(min(1,a)+s)
  bool fast_hunter_branch;       // b*d >= c*/(1-g)
};

ModelParams nondimensionalize(const DimensionalParams& p, int dim_N);
DerivedSpeeds spreading_speeds(const ModelParams& m);
std::optional<CoexistenceState> coexistence_state(const ModelParams& m);
std::vector<SteadyStateFamily> steady_states(const ModelParams& m);
Regime classify_regime(const ModelParams& m);
DriftCoefficients log_drift_coefficients(const ModelParams& m);
SufficientCondition coexistence_sufficient_condition(const ModelParams& m);

/// Reaction terms of the full system at a homogeneous state (F, C, H):
///   ( aF(1-F-C), C(1-F-C) + sH(F+C), bH(1-H-g(F+C)) ).
Eigen::Vector3d reaction_rhs(const Eigen::Vector3d& fch, const ModelParams& m);

}  // namespace frontwave
