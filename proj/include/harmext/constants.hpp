#pragma once

namespace harmext {

struct ConstantReport {
  double p = 1.0;
  double c_value = 0.0;
  double upper_bound = 0.0;
  double quadrature_error = 0.0;
  double margin() const noexcept { return upper_bound - c_value; }
};

/// C(p) = int_0^1 (4 artanh(r) / (pi r))^p r dr for finite p >= 1.
///
/// [0, 1/2] is integrated directly. On [1/2, 1 - 1e-12] the substitution
/// r = 1 - e^{-u} turns the logarithmic endpoint growth into a smooth
/// integrand decaying like u^p e^{-u}. The remaining sliver is bracketed
/// between two upper incomplete gamma values; its midpoint is added and its
/// half-width counted in `quadrature_error`.
ConstantReport c_of_p(double p, double abs_tol = 1e-10);

/// (4^{p-1} / pi^p) (2^p + (2 - 2^{-p}) Gamma(1 + p)). Throws OverflowError
/// when the value is not representable.
double c_upper_bound(double p);

} // namespace harmext
