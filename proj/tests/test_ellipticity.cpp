#include "doctest.h"

#include <cmath>

#include "harmext/ellipticity.hpp"
#include "harmext/errors.hpp"

using namespace harmext;

namespace {

DiskField half_conjugate() {
  const std::pair<int, cplx> terms[] = {{1, 1.0}, {-1, 0.5}};
  return extend(BoundarySpec::fourier(terms));
}

} // namespace

TEST_CASE("K' for z + conj(z)^2/2") {
  const DiskField f = extend(BoundarySpec::preset("elliptic-trace"));
  const EllipticityReport e = min_kprime(f, 1.0);
  // ||D||^2 - J = 2r + 2r^2 at radius r
  const double r = 1.0 - std::ldexp(1.0, -12);
  CHECK(e.kprime_estimate == doctest::Approx(2.0 * r + 2.0 * r * r).epsilon(1e-12));
  CHECK(e.kprime_estimate >= 4.0 - 8.0 * std::ldexp(1.0, -12));
  CHECK(e.kprime_estimate <= 4.0);
  REQUIRE(e.kprime_trend.size() == 12);
  for (std::size_t i = 1; i < e.kprime_trend.size(); ++i) {
    CHECK(e.kprime_trend[i] >= e.kprime_trend[i - 1]);
  }
  CHECK(e.kprime_extrapolated == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(e.sense == Sense::Preserving);
}

TEST_CASE("K' is monotone in K") {
  const DiskField f = extend(BoundarySpec::preset("elliptic-trace"));
  EllipticityGrid grid;
  grid.levels = 8;
  double prev = 1e300;
  for (double K : {1.0, 1.5, 2.0, 4.0}) {
    const double kp = min_kprime(f, K, grid).kprime_estimate;
    CHECK(kp <= prev);
    prev = kp;
  }
}

TEST_CASE("analytic fields need no K'") {
  CHECK(min_kprime(extend(BoundarySpec::preset("identity")), 1.0).kprime_estimate <
        1e-10);
  const std::pair<int, cplx> two[] = {{1, 2.0}};
  CHECK(min_kprime(extend(BoundarySpec::fourier(two)), 1.0).kprime_estimate < 1e-10);
}

TEST_CASE("dilatation sup") {
  const EllipticityReport trace =
      qr_constant(extend(BoundarySpec::preset("elliptic-trace")));
  CHECK(trace.qr_constant == doctest::Approx(1.0 - std::ldexp(1.0, -12)).epsilon(1e-12));
  CHECK(trace.qr_trends_to_one);

  const EllipticityReport half = qr_constant(half_conjugate());
  CHECK(std::abs(half.qr_constant - 0.5) < 1e-10);
  CHECK_FALSE(half.qr_trends_to_one);

  CHECK(qr_constant(extend(BoundarySpec::preset("identity"))).qr_constant == 0.0);
}

TEST_CASE("classification") {
  const double scan[] = {1.0, 3.0};
  const EllipticityReport half = classify(half_conjugate(), scan);
  CHECK(half.classification == "quasiregular");
  REQUIRE(half.qr_K.has_value());
  CHECK(*half.qr_K == doctest::Approx(3.0).epsilon(1e-9));
  REQUIRE(half.kprime_scan.size() == 2);
  CHECK(half.kprime_scan[1].second < 1e-10);

  const double one[] = {1.0};
  const EllipticityReport trace =
      classify(extend(BoundarySpec::preset("elliptic-trace")), one);
  CHECK(trace.classification == "elliptic candidate");
  CHECK(trace.kprime_scan[0].second == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("sense violation") {
  const DiskField conj = extend(BoundarySpec::preset("conjugate"));
  CHECK_THROWS_AS(min_kprime(conj, 1.0), SenseViolation);
  try {
    qr_constant(conj);
  } catch (const SenseViolation &e) {
    CHECK(e.jacobian() == doctest::Approx(-1.0));
    CHECK(std::abs(e.point()) < 1.0);
  }
  EllipticityGrid bad;
  bad.levels = 0;
  CHECK_THROWS_AS(min_kprime(extend(BoundarySpec::preset("identity")), 1.0, bad),
                  InvalidInput);
}
