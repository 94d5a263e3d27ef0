#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "harmext/extension.hpp"

namespace harmext {

enum class Sense { Preserving, Reversing, Mixed };

std::string to_string(Sense s);

/// Polar sampling grid: level l covers radii 1 - 2^{-k}, k <= l, each with
/// base_angular * 2^l equally spaced angles. Levels are nested.
struct EllipticityGrid {
  int levels = 12;
  std::size_t base_angular = 16;
};

struct EllipticityReport {
  double K = 1.0;
  /// max(||D_f||^2 - K J_f) over the finest grid, clamped at 0.
  double kprime_estimate = 0.0;
  std::vector<double> kprime_trend;
  /// Richardson value 2 v_L - v_{L-1} of the per-level estimates.
  double kprime_extrapolated = 0.0;

  /// sup |omega| over points where omega is defined.
  double qr_constant = 0.0;
  std::vector<double> qr_trend;
  std::size_t undefined_points = 0;
  /// The gap 1 - sup|omega| shrinks geometrically over the last levels.
  bool qr_trends_to_one = false;

  Sense sense = Sense::Preserving;
  std::size_t points = 0;
  EllipticityGrid grid;
  bool degraded = false;

  /// Filled by classify().
  std::string classification;
  /// (1 + q) / (1 - q); implementation-derived convenience, not a sharp
  /// quasiregularity constant.
  std::optional<double> qr_K;
  std::vector<std::pair<double, double>> kprime_scan;
};

/// Grid estimate of the least K' with ||D_f||^2 <= K J_f + K'. Throws
/// SenseViolation at the first grid point with J_f <= 0.
EllipticityReport min_kprime(const DiskField &field, double K,
                             const EllipticityGrid &grid = {});

/// Grid supremum of the second complex dilatation.
EllipticityReport qr_constant(const DiskField &field,
                              const EllipticityGrid &grid = {});

/// Runs qr_constant and min_kprime for every K in the scan and labels the
/// field "quasiregular" (sup|omega| bounded away from 1) or
/// "elliptic candidate".
EllipticityReport classify(const DiskField &field,
                           std::span<const double> K_scan,
                           const EllipticityGrid &grid = {});

} // namespace harmext
