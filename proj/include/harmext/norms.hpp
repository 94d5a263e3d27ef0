#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harmext/extension.hpp"
#include "harmext/norm_report.hpp"

namespace harmext {

/// Samples of a nonnegative scalar on one circle, with the truncation error
/// bound that applies to every sample.
struct ScalarCircle {
  std::vector<double> values;
  double tail_bound = 0.0;
  bool degraded = false;
};

/// A nonnegative scalar field on the disk derived from a DiskField, such as
/// |f_z|, ||D_f|| or |f_t|/r.
class DiskScalar {
public:
  using CircleMap = std::function<double(const CircleValues &, std::size_t j)>;
  using PointMap = std::function<double(const DiskField &, cplx)>;
  /// Which truncation tail bounds the scalar: 0 for values, 1 for derivatives.
  DiskScalar(DiskField field, std::string label, CircleMap circle_map,
             PointMap point_map, int tail_order, bool monotone_certified);

  static DiskScalar constant(double c);

  ScalarCircle on_circle(double r, std::size_t m) const;
  double at(cplx z) const;

  const std::string &label() const noexcept { return label_; }
  /// |analytic|: circle means are nondecreasing in r.
  bool monotone_certified() const noexcept { return certified_; }

  /// lambda * s for lambda >= 0.
  DiskScalar scaled(double lambda) const;

private:
  std::optional<DiskField> field_;
  std::string label_;
  CircleMap circle_map_;
  PointMap point_map_;
  int tail_order_ = 0;
  bool certified_ = false;
  double scale_ = 1.0;
  double constant_ = 0.0;
};

DiskScalar abs_value(const DiskField &field);
DiskScalar abs_fz(const DiskField &field);
DiskScalar abs_fzbar(const DiskField &field);
DiskScalar abs_ft(const DiskField &field);
/// |f_t| / r; only evaluated at r > 0.
DiskScalar abs_ft_over_r(const DiskField &field);
DiskScalar abs_fr(const DiskField &field);
/// ||D_f|| = |f_z| + |f_zbar|
DiskScalar op_norm(const DiskField &field);
/// Looks a scalar up by name: f, fz, fzbar, ft, ft_over_r, fr, opnorm.
DiskScalar scalar_by_name(const DiskField &field, const std::string &name);

/// Smallest power-of-two angular count that resolves features of width
/// 1 - r, floored at 64.
std::size_t starting_angular_nodes(double r);

struct CircleMeanOptions {
  std::size_t max_angular_nodes = std::size_t{1} << 18;
  double rel_tol = 1e-12;
};

/// M_p(r, s) by the trapezoid rule on uniform grids doubled until the mean
/// of s^p agrees with the half grid; p = inf gives the circle maximum.
NormReport circle_mean(const DiskScalar &s, double r, Exponent p,
                       const CircleMeanOptions &opts = {});

/// Radii 1 - 2^{-k}, k = 1..levels.
std::vector<double> geometric_radii(int levels);

/// Flags unbounded growth along a refinement sequence: the last four
/// level-to-level increases are all >= 5% and either the last value exceeds
/// 1e3 or (with `allow_slow`) the increments are not decaying geometrically.
bool detect_divergence(std::span<const double> sequence, bool allow_slow);

/// sup_r M_p(r, s) over the geometric radial grid, with Richardson
/// extrapolation in `extrapolated` and the +inf marker on divergence.
NormReport hardy_norm(const DiskScalar &s, Exponent p, int levels = 12,
                      const CircleMeanOptions &opts = {});

/// (int_D s^p dsigma)^{1/p} with dsigma = dx dy / pi. The radial integral is
/// split at 1/2 and then on [1 - 2^{-k}, 1 - 2^{-k-1}]; each panel uses a
/// 15-point Gauss-Kronrod rule. The part beyond 1 - 2^{-levels} is estimated
/// from the last circle mean and counted fully in the error estimate.
/// p = inf is the supremum over the same circles.
NormReport bergman_norm(const DiskScalar &s, Exponent p, int levels = 12,
                        const CircleMeanOptions &opts = {});

} // namespace harmext
