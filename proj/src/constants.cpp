#include "harmext/constants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "harmext/boundary.hpp"
#include "harmext/errors.hpp"
#include "harmext/quadrature.hpp"

namespace harmext {

namespace {

constexpr double kCutoff = 1e-12;

void require_finite_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw UnsupportedExponent("C(p) needs p >= 1");
  }
  if (std::isinf(p)) {
    throw UnsupportedExponent("C(p) is not defined for p = inf");
  }
}

} // namespace

ConstantReport c_of_p(double p, double abs_tol) {
  require_finite_exponent(p);
  const double scale = 4.0 / kPi;

  quad::AdaptiveOptions opts;
  opts.abs_tol = 0.25 * abs_tol;
  opts.rel_tol = 1e-15;
  opts.max_panels = 4000;

  auto near_zero = [&](double r) {
    return std::pow(scale * std::atanh(r) / r, p) * r;
  };
  const std::array<double, 2> inner_breaks{0.0, 0.5};
  auto inner = quad::integrate_adaptive<double>(near_zero, inner_breaks, opts);

  // r = 1 - e^{-u}; artanh r = (ln(2 - e^{-u}) + u) / 2 avoids cancellation.
  auto substituted = [&](double u) {
    const double s = std::exp(-u);
    const double r = 1.0 - s;
    const double atanh_r = 0.5 * (std::log(2.0 - s) + u);
    return std::pow(scale * atanh_r / r, p) * r * s;
  };
  const double u_end = -std::log(kCutoff);
  const std::array<double, 7> outer_breaks{std::log(2.0), 2.0, 4.0, 8.0,
                                           14.0, 20.0, u_end};
  auto outer =
      quad::integrate_adaptive<double>(substituted, outer_breaks, opts);

  // Sliver s = 1 - r in (0, eps]: integrand (2/pi)^p ln((2-s)/s)^p r^{1-p}.
  const double eps = kCutoff;
  const double lead = std::pow(2.0 / kPi, p);
  const double upper = lead * std::pow(1.0 - eps, 1.0 - p) * 2.0 *
                       boost::math::tgamma(p + 1.0, std::log(2.0 / eps));
  const double c_low = 2.0 - eps;
  const double lower =
      lead * c_low * boost::math::tgamma(p + 1.0, std::log(c_low / eps));

  ConstantReport rep;
  rep.p = p;
  rep.c_value = inner.value + outer.value + 0.5 * (upper + lower);
  rep.quadrature_error = inner.error + outer.error + 0.5 * (upper - lower);
  rep.upper_bound = c_upper_bound(p);
  if (!inner.converged || !outer.converged) {
    throw ConvergenceFailure("C(p) quadrature did not converge",
                             rep.c_value, rep.quadrature_error);
  }
  return rep;
}

double c_upper_bound(double p) {
  require_finite_exponent(p);
  const double value = std::pow(4.0, p - 1.0) / std::pow(kPi, p) *
                       (std::pow(2.0, p) +
                        (2.0 - std::pow(2.0, -p)) * std::tgamma(1.0 + p));
  if (!std::isfinite(value)) {
    throw OverflowError("C(p) bound overflows for p = " + std::to_string(p));
  }
  return value;
}

} // namespace harmext
