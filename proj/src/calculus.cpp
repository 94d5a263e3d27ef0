#include "harmext/calculus.hpp"

#include <cmath>

#include "harmext/errors.hpp"

namespace harmext {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx unit_direction(cplx z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : cplx{1.0, 0.0};
}

} // namespace

cplx DerivativePack::fz_from_polar() const {
  const double r = std::abs(z);
  if (r == 0.0) {
    throw SingularPoint("f_t / r is undefined at the origin");
  }
  return std::conj(unit_direction(z)) * 0.5 * (fr - kI * ft / r);
}

cplx DerivativePack::conj_fzbar_from_polar() const {
  const double r = std::abs(z);
  if (r == 0.0) {
    throw SingularPoint("f_t / r is undefined at the origin");
  }
  return std::conj(unit_direction(z)) * 0.5 *
         (std::conj(fr) - kI * std::conj(ft) / r);
}

cplx DerivativePack::ft_over_r() const {
  const double r = std::abs(z);
  if (r == 0.0) {
    throw SingularPoint("f_t / r is undefined at the origin");
  }
  return ft / r;
}

std::pair<cplx, cplx> wirtinger(const DiskField &field, cplx z) {
  auto w = field.wirtinger(z);
  return {w.fz, w.fzbar};
}

DerivativePack polar(const DiskField &field, cplx z) {
  auto w = field.wirtinger(z);
  const cplx e = unit_direction(z);
  DerivativePack pack;
  pack.z = z;
  pack.fz = w.fz;
  pack.fzbar = w.fzbar;
  pack.ft = kI * (z * w.fz - std::conj(z) * w.fzbar);
  pack.fr = w.fz * e + w.fzbar * std::conj(e);
  pack.tail_bound = w.tail_bound;
  pack.degraded = w.degraded;
  return pack;
}

LocalGeometry local_geometry(cplx fz, cplx fzbar) {
  LocalGeometry geo;
  const double a = std::abs(fz);
  const double b = std::abs(fzbar);
  geo.op_norm = a + b;
  geo.min_stretch = std::abs(a - b);
  geo.jacobian = (a - b) * (a + b);
  // h' = f_z and g' = conj(f_zbar).
  const cplx h_prime = fz;
  const cplx g_prime = std::conj(fzbar);
  if (std::abs(h_prime) > 1e-14 * (1.0 + std::abs(g_prime))) {
    geo.dilatation = g_prime / h_prime;
  }
  return geo;
}

LocalGeometry local_geometry(const DiskField &field, cplx z) {
  auto w = field.wirtinger(z);
  return local_geometry(w.fz, w.fzbar);
}

cplx directional_derivative(cplx fz, cplx fzbar, double alpha) {
  const cplx e = std::polar(1.0, alpha);
  return fz * e + fzbar * std::conj(e);
}

} // namespace harmext
