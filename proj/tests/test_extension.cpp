#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "harmext/errors.hpp"
#include "harmext/extension.hpp"
#include "harmext/quadrature.hpp"

using namespace harmext;

namespace {

std::vector<cplx> seeded_points(std::size_t n, double rmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  std::vector<cplx> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rmax * std::sqrt(unit());
    pts.push_back(std::polar(r, kTwoPi * unit()));
  }
  return pts;
}

// P[|sin|] on the positive real axis.
double abs_sin_on_axis(double r) {
  return 2.0 / kPi * (1.0 - r * r) / r * std::atanh(r);
}

} // namespace

TEST_CASE("series agrees with the Poisson integral") {
  const auto pts = seeded_points(100, 0.9, 42);
  for (const std::string &name : preset_names()) {
    const BoundarySpec s = BoundarySpec::preset(name);
    const DiskField f = extend(s);
    double worst = 0.0;
    for (cplx z : pts) {
      const OracleValue o = extend_oracle(s, z);
      worst = std::max(worst, std::abs(o.value - f.value(z).value));
    }
    INFO(name);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("mean value property") {
  for (const std::string &name : preset_names()) {
    const BoundarySpec s = BoundarySpec::preset(name);
    CHECK(std::abs(extend(s).value(0.0).value - s.coefficient(0)) < 1e-12);
  }
  CHECK(std::abs(extend(BoundarySpec::preset("abs-sin")).value(0.0).value -
                 2.0 / kPi) < 1e-12);
}

TEST_CASE("abs-sin closed form on the axis") {
  const DiskField f = extend(BoundarySpec::preset("abs-sin"));
  for (double r : {0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
    CHECK(std::abs(f.value(cplx(r, 0.0)).value - abs_sin_on_axis(r)) < 1e-8);
  }
  // frozen: P[|sin|](1/2) = (3/pi) artanh(1/2)
  CHECK(f.value(0.5).value.real() ==
        doctest::Approx(0.524548728849089667).epsilon(1e-9));
}

TEST_CASE("Poisson kernel") {
  for (cplx z : {cplx(0.0, 0.0), cplx(0.3, -0.4), cplx(0.95, 0.1)}) {
    std::vector<double> breaks{0.0, std::arg(z) < 0 ? std::arg(z) + kTwoPi
                                                    : std::arg(z),
                               kTwoPi};
    std::sort(breaks.begin(), breaks.end());
    const auto res = quad::integrate_adaptive<double, 21>(
        [&](double t) { return poisson_kernel(z, t); },
        std::span<const double>(breaks), quad::AdaptiveOptions{});
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-11));
  }
  CHECK(poisson_kernel(0.0, 1.0) == doctest::Approx(1.0 / kTwoPi));
  CHECK_THROWS_AS(poisson_kernel(cplx(1.0, 0.0), 0.0), DomainError);
  CHECK_THROWS_AS(extend(BoundarySpec::preset("mode:1")).value(cplx(0.0, 1.2)),
                  DomainError);
}

TEST_CASE("holomorphic pair") {
  const std::pair<int, cplx> terms[] = {
      {0, 2.0}, {1, cplx(1.0, 1.0)}, {-2, cplx(0.0, 3.0)}};
  const HolomorphicPair hp =
      holomorphic_pair(fourier_coefficients(BoundarySpec::fourier(terms), 4));
  CHECK(hp.h[0] == cplx(2.0));
  CHECK(hp.h[1] == cplx(1.0, 1.0));
  CHECK(hp.g[0] == cplx(0.0));
  CHECK(hp.g[2] == cplx(0.0, -3.0)); // b_n = conj(c_{-n})
}

TEST_CASE("harmonic and linear") {
  const BoundarySpec a = BoundarySpec::preset("random-trig");
  const BoundarySpec b = BoundarySpec::preset("elliptic-trace");
  const DiskField fa = extend(a);
  const DiskField fb = extend(b);
  std::vector<std::pair<int, cplx>> sum;
  for (int n = -6; n <= 6; ++n) {
    sum.push_back({n, 2.0 * a.coefficient(n) - cplx(0.0, 1.0) * b.coefficient(n)});
  }
  const DiskField fs = extend(BoundarySpec::fourier(sum));
  const double h = 1e-3;
  for (cplx z : seeded_points(20, 0.8, 3)) {
    const cplx lin = 2.0 * fa.value(z).value - cplx(0.0, 1.0) * fb.value(z).value;
    CHECK(std::abs(lin - fs.value(z).value) < 1e-13);
    const cplx lap = fa.value(z + h).value + fa.value(z - h).value +
                     fa.value(z + cplx(0, h)).value +
                     fa.value(z - cplx(0, h)).value - 4.0 * fa.value(z).value;
    CHECK(std::abs(lap) / (h * h) < 1e-5);
  }
}

TEST_CASE("circle evaluation matches pointwise") {
  const DiskField f = extend(BoundarySpec::preset("abs-sin"));
  for (double r : {0.3, 0.95}) {
    const CircleValues c = f.circle(r, 64);
    for (std::size_t j = 0; j < 64; j += 7) {
      const cplx z = std::polar(r, kTwoPi * static_cast<double>(j) / 64.0);
      CHECK(std::abs(c.f[j] - f.value(z).value) < 1e-9);
      const WirtingerValue w = f.wirtinger(z);
      CHECK(std::abs(c.fz[j] - w.fz) < 1e-8);
      CHECK(std::abs(c.fzbar[j] - w.fzbar) < 1e-8);
    }
  }
  CHECK_THROWS(f.circle(0.5, 48));
}

TEST_CASE("adaptive truncation") {
  const DiskField f = extend(BoundarySpec::preset("abs-sin"));
  const auto [n_mid, tail_mid] = f.truncation_for(0.5, 1);
  const auto [n_edge, tail_edge] = f.truncation_for(0.999, 1);
  CHECK(n_edge > n_mid);
  CHECK(tail_mid <= 1e-8);
  CHECK(tail_edge <= 1e-8);
  CHECK_FALSE(f.wirtinger(cplx(0.999, 0.0)).degraded);

  ExtensionOptions pinned;
  pinned.truncation = 8;
  pinned.adaptive = false;
  const DiskField g = extend(BoundarySpec::preset("abs-sin"), pinned);
  const PointValue v = g.value(cplx(0.9, 0.0));
  CHECK(v.truncation == 8);
  CHECK(v.degraded);
  CHECK(v.tail_bound > 1e-8);

  // finite data needs no growth
  const DiskField m = extend(BoundarySpec::preset("mode:1"));
  CHECK_FALSE(m.value(cplx(0.9999, 0.0)).degraded);
  CHECK(m.value(cplx(0.9999, 0.0)).tail_bound == 0.0);
}

TEST_CASE("sampled boundary uses the discrete Poisson sum") {
  std::vector<cplx> samples(256);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double t = kTwoPi * static_cast<double>(j) / 256.0;
    samples[j] = std::cos(t) + cplx(0.0, 0.5) * std::sin(3.0 * t);
  }
  const BoundarySpec s = BoundarySpec::sampled(samples, true);
  const DiskField f = extend(s);
  for (cplx z : seeded_points(10, 0.8, 9)) {
    const cplx exact = z.real() + cplx(0.0, 0.5) * std::imag(z * z * z);
    CHECK(std::abs(f.value(z).value - exact) < 1e-12);
    CHECK(std::abs(extend_oracle(s, z).value - exact) < 1e-10);
  }
}

TEST_CASE("oracle budget") {
  OracleOptions tight;
  tight.abs_tol = 1e-300;
  tight.max_panels = 8;
  CHECK_THROWS_AS(extend_oracle(BoundarySpec::preset("abs-sin"), cplx(0.99, 0.0), tight),
                  ConvergenceFailure);
}
