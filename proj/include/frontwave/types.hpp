#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace frontwave {

using Eigen::ArrayXd;
using Eigen::Index;

/// Raised for invalid configuration or parameter-domain violations (CLI exit code 2).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a quantity is evaluated outside its mathematical domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised when an integrator produces NaN/Inf or leaves its guard region.
struct NumericsError : std::runtime_error {
  double t = 0.0;      // simulation time of the failure
  Index node = -1;     // offending grid node, -1 if not grid-local
  NumericsError(const std::string& what, double t_, Index node_ = -1)
      : std::runtime_error(what), t(t_), node(node_) {}
};

/// Raised when a front approaches the truncated domain boundary.
struct FrontAtBoundaryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a fit is requested with fewer samples than its contract allows.
struct InsufficientSamplesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// C-infinity cutoff: exp(1 - 1/(1-x^2)) on |x|<1, identically 0 outside.
/// Unit value at x=0, all derivatives vanish at |x|=1.
inline double smooth_bump(double x) {
  const double x2 = x * x;
  if (x2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x2));
}

/// Field identifiers used by front tracking and reports.
enum class FieldId { F, C, H, FC };

inline const char* field_name(FieldId f) {
  switch (f) {
    case FieldId::F: return "F";
    case FieldId::C: return "C";
    case FieldId::H: return "H";
    case FieldId::FC: return "F+C";
  }
  return "?";
}

}  // namespace frontwave
