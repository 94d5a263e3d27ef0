#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "harmext/exponent.hpp"

namespace harmext {

enum class NormKind { CircleMean, Hardy, Bergman, CircleLp };

std::string to_string(NormKind kind);

struct GridInfo {
  std::size_t radial_nodes = 0;
  std::size_t angular_nodes = 0;
  std::size_t levels = 0;
};

/// Result of any norm computation. `value` is a finite number unless
/// `infinite` is set, in which case `value` holds the last finite grid value.
struct NormReport {
  NormKind kind = NormKind::CircleLp;
  Exponent p{1.0};
  double value = 0.0;
  double error_estimate = 0.0;
  bool infinite = false;
  /// Radius for circle means.
  std::optional<double> radius;
  /// Richardson value for sups over the geometric radial grid.
  std::optional<double> extrapolated;
  /// Set when the scalar is |analytic| so circle means are nondecreasing in r.
  bool monotone_certified = false;
  /// Per-refinement-level values (grid maxima, partial integrals, ...).
  std::vector<double> trend;
  /// Bergman only: integrals of s^p dsigma over |z| < 1/2 and 1/2 <= |z| < 1.
  std::optional<double> inner_integral;
  std::optional<double> outer_integral;
  /// Any evaluation used a truncation whose tail bound missed tolerance.
  bool degraded = false;
  GridInfo grid;
  std::string note;
};

} // namespace harmext
