#include "doctest.h"

#include <cmath>

#include "harmext/calculus.hpp"
#include "harmext/errors.hpp"

using namespace harmext;

namespace {

const cplx kI{0.0, 1.0};

const std::vector<cplx> kPoints{cplx(0.3, 0.2), cplx(-0.5, 0.4), cplx(0.1, -0.85),
                                cplx(0.7, 0.0), cplx(-0.2, -0.3)};

} // namespace

TEST_CASE("Wirtinger derivatives against central differences") {
  const double h = 1e-5;
  for (const std::string &name : preset_names()) {
    const DiskField f = extend(BoundarySpec::preset(name));
    for (cplx z : kPoints) {
      const cplx fx = (f.value(z + h).value - f.value(z - h).value) / (2.0 * h);
      const cplx fy =
          (f.value(z + kI * h).value - f.value(z - kI * h).value) / (2.0 * h);
      const auto [fz, fzbar] = wirtinger(f, z);
      INFO(name);
      CHECK(std::abs(fz - 0.5 * (fx - kI * fy)) < 1e-6);
      CHECK(std::abs(fzbar - 0.5 * (fx + kI * fy)) < 1e-6);
    }
  }
}

TEST_CASE("polar derivatives") {
  const DiskField f = extend(BoundarySpec::preset("random-trig"));
  const double h = 1e-5;
  for (cplx z : kPoints) {
    const double r = std::abs(z);
    const double t = std::arg(z);
    const DerivativePack d = polar(f, z);
    const cplx ft = (f.value(std::polar(r, t + h)).value -
                     f.value(std::polar(r, t - h)).value) / (2.0 * h);
    const cplx fr = (f.value(std::polar(r + h, t)).value -
                     f.value(std::polar(r - h, t)).value) / (2.0 * h);
    CHECK(std::abs(d.ft - ft) < 1e-6);
    CHECK(std::abs(d.fr - fr) < 1e-6);
    CHECK(std::abs(d.fz_from_polar() - d.fz) < 1e-13);
    CHECK(std::abs(d.conj_fzbar_from_polar() - std::conj(d.fzbar)) < 1e-13);
    CHECK(std::abs(d.ft_over_r() - d.ft / r) < 1e-13);
  }
  const DerivativePack origin = polar(f, 0.0);
  CHECK_THROWS_AS(origin.fz_from_polar(), SingularPoint);
  CHECK_THROWS_AS(origin.ft_over_r(), SingularPoint);
}

TEST_CASE("exact derivatives of simple fields") {
  const DiskField id = extend(BoundarySpec::preset("identity"));
  const DiskField conj = extend(BoundarySpec::preset("conjugate"));
  const DiskField trace = extend(BoundarySpec::preset("elliptic-trace"));
  for (cplx z : kPoints) {
    auto [a, b] = wirtinger(id, z);
    CHECK(std::abs(a - 1.0) < 1e-15);
    CHECK(std::abs(b) < 1e-15);
    std::tie(a, b) = wirtinger(conj, z);
    CHECK(std::abs(a) < 1e-15);
    CHECK(std::abs(b - 1.0) < 1e-15);
    // f = z + conj(z)^2 / 2
    std::tie(a, b) = wirtinger(trace, z);
    CHECK(std::abs(a - 1.0) < 1e-14);
    CHECK(std::abs(b - std::conj(z)) < 1e-14);
    const DerivativePack d = polar(id, z);
    CHECK(std::abs(d.ft - kI * z) < 1e-15);
    CHECK(std::abs(std::abs(d.fr) - 1.0) < 1e-15);
  }
}

TEST_CASE("local geometry") {
  const DiskField trace = extend(BoundarySpec::preset("elliptic-trace"));
  for (cplx z : kPoints) {
    const LocalGeometry g = local_geometry(trace, z);
    const double r = std::abs(z);
    CHECK(g.op_norm == doctest::Approx(1.0 + r).epsilon(1e-14));
    CHECK(g.min_stretch == doctest::Approx(1.0 - r).epsilon(1e-14));
    CHECK(g.jacobian == doctest::Approx(1.0 - r * r).epsilon(1e-14));
    REQUIRE(g.dilatation.has_value());
    // omega = g'/h' = conj(f_zbar)/f_z
    const auto [fz, fzbar] = wirtinger(trace, z);
    CHECK(std::abs(*g.dilatation - std::conj(fzbar) / fz) < 1e-14);
    CHECK(std::abs(*g.dilatation - z) < 1e-14);
  }
  const LocalGeometry c = local_geometry(cplx{}, cplx(0.5, 0.0));
  CHECK_FALSE(c.dilatation.has_value());
  CHECK(c.jacobian == doctest::Approx(-0.25));
}

TEST_CASE("directional derivative extremes") {
  const DiskField f = extend(BoundarySpec::preset("abs-sin"));
  for (cplx z : kPoints) {
    const auto [fz, fzbar] = wirtinger(f, z);
    const LocalGeometry g = local_geometry(fz, fzbar);
    double hi = 0.0;
    double lo = 1e300;
    for (int k = 0; k < 4096; ++k) {
      const double m = std::abs(directional_derivative(fz, fzbar, kTwoPi * k / 4096.0));
      hi = std::max(hi, m);
      lo = std::min(lo, m);
    }
    CHECK(hi <= g.op_norm + 1e-14);
    CHECK(hi == doctest::Approx(g.op_norm).epsilon(1e-5));
    CHECK(lo >= g.min_stretch - 1e-14);
    CHECK(lo - g.min_stretch < 1e-3 * g.op_norm);
  }
}

TEST_CASE("abs-sin on the real axis") {
  // f is real and even in t: f_t = 0 and |f_z| = |f_zbar| = |f_r| / 2 there.
  const DiskField f = extend(BoundarySpec::preset("abs-sin"));
  for (double r : {0.25, 0.5, 0.75, 0.9}) {
    const DerivativePack d = polar(f, cplx(r, 0.0));
    CHECK(std::abs(d.ft) < 1e-9);
    CHECK(std::abs(std::abs(d.fz) - std::abs(d.fzbar)) < 1e-12);
    const double fr = 2.0 / kPi * (1.0 / r - (1.0 + r * r) / (r * r) * std::atanh(r));
    CHECK(d.fr.real() == doctest::Approx(fr).epsilon(1e-8));
  }
}
