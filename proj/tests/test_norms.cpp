#include "doctest.h"

#include <cmath>

#include "harmext/errors.hpp"
#include "harmext/norms.hpp"

using namespace harmext;

TEST_CASE("Parseval on circles") {
  for (const std::string &name : {"random-trig", "abs-sin", "elliptic-trace"}) {
    const BoundarySpec s = BoundarySpec::preset(name);
    const DiskField f = extend(s);
    for (double r : {0.3, 0.7, 0.9}) {
      double energy = 0.0;
      for (int n = -4000; n <= 4000; ++n) {
        energy += std::norm(s.coefficient(n)) * std::pow(r, 2 * std::abs(n));
      }
      const NormReport m = circle_mean(abs_value(f), r, Exponent(2.0));
      INFO(name << " r=" << r);
      CHECK(std::abs(m.value * m.value - energy) < 1e-10);
    }
  }
}

TEST_CASE("circle means of |z|") {
  const DiskField id = extend(BoundarySpec::preset("identity"));
  for (double p : {1.0, 1.5, 3.0}) {
    CHECK(circle_mean(abs_value(id), 0.6, Exponent(p)).value ==
          doctest::Approx(0.6).epsilon(1e-13));
  }
  CHECK(circle_mean(abs_value(id), 0.6, Exponent::infinity()).value ==
        doctest::Approx(0.6).epsilon(1e-13));
  CHECK(circle_mean(DiskScalar::constant(2.0), 0.5, Exponent(3.0)).value ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(circle_mean(abs_value(id), 1.0, Exponent(2.0)), DomainError);
  CHECK_THROWS_AS(circle_mean(abs_value(id), 0.0, Exponent(2.0)), DomainError);
}

TEST_CASE("circle maximum of the trace") {
  // ||D_f|| = 1 + |z| for f = z + conj(z)^2/2; |f_t| = r |1 - r e^{-3it}|.
  const DiskField f = extend(BoundarySpec::preset("elliptic-trace"));
  CHECK(circle_mean(op_norm(f), 0.75, Exponent::infinity()).value ==
        doctest::Approx(1.75).epsilon(1e-13));
  CHECK(circle_mean(abs_ft(f), 0.75, Exponent::infinity()).value ==
        doctest::Approx(0.75 * 1.75).epsilon(1e-9));
}

TEST_CASE("Hardy sup of an analytic field") {
  const DiskField id = extend(BoundarySpec::preset("identity"));
  const NormReport h = hardy_norm(abs_value(id), Exponent(2.0), 12);
  CHECK(h.monotone_certified);
  CHECK_FALSE(h.infinite);
  CHECK(h.value == doctest::Approx(1.0 - std::ldexp(1.0, -12)).epsilon(1e-13));
  REQUIRE(h.extrapolated.has_value());
  CHECK(*h.extrapolated == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(h.trend.size() == 12);

  const NormReport g = hardy_norm(op_norm(id), Exponent(2.0), 12);
  CHECK_FALSE(g.monotone_certified);
  CHECK(g.note == "grid lower bound of the true sup");
}

TEST_CASE("area norms with closed forms") {
  const DiskField id = extend(BoundarySpec::preset("identity"));
  // int |z|^p dsigma = 2 / (p + 2)
  for (double p : {1.0, 2.0, 3.0}) {
    const NormReport b = bergman_norm(abs_value(id), Exponent(p), 12);
    const double exact = std::pow(2.0 / (p + 2.0), 1.0 / p);
    CHECK(std::abs(b.value - exact) <= b.error_estimate);
    CHECK(std::abs(b.value - exact) < 1e-6);
  }
  const NormReport two = bergman_norm(abs_value(id), Exponent(2.0), 12);
  REQUIRE(two.inner_integral.has_value());
  CHECK(*two.inner_integral == doctest::Approx(1.0 / 32.0).epsilon(1e-13));

  const NormReport one = bergman_norm(abs_fz(id), Exponent(1.0), 12);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_FALSE(one.infinite);
}

TEST_CASE("area norm of h' for |sin|") {
  // ||h'||^2 = sum_{n>=1} n |a_n|^2 with a_n = -(2/pi)/(n^2-1), n even.
  const BoundarySpec s = BoundarySpec::preset("abs-sin");
  double exact = 0.0;
  for (double n = 1e6; n >= 2.0; n -= 2.0) {
    const double a = 2.0 / kPi / (n * n - 1.0);
    exact += n * a * a;
  }
  const NormReport b = bergman_norm(abs_fz(extend(s)), Exponent(2.0), 12);
  CHECK_FALSE(b.infinite);
  CHECK(std::abs(b.value - std::sqrt(exact)) <= b.error_estimate);
  CHECK(b.value == doctest::Approx(std::sqrt(exact)).epsilon(1e-3));
}

TEST_CASE("divergence detection") {
  std::vector<double> geometric;
  std::vector<double> logarithmic;
  std::vector<double> exploding;
  for (int k = 1; k <= 12; ++k) {
    geometric.push_back(1.0 - std::ldexp(1.0, -k));
    logarithmic.push_back(0.22 * k);
    exploding.push_back(std::pow(10.0, k / 2.0));
  }
  CHECK_FALSE(detect_divergence(geometric, true));
  CHECK(detect_divergence(logarithmic, true));
  CHECK_FALSE(detect_divergence(logarithmic, false));
  CHECK(detect_divergence(exploding, false));
  CHECK_FALSE(detect_divergence(std::vector<double>{1, 2, 3}, true));
}

TEST_CASE("|sin| derivatives are unbounded") {
  const DiskField f = extend(BoundarySpec::preset("abs-sin"));
  const NormReport h = hardy_norm(abs_fz(f), Exponent::infinity(), 12);
  CHECK(h.infinite);
  const NormReport b = bergman_norm(abs_fzbar(f), Exponent::infinity(), 12);
  CHECK(b.infinite);
  CHECK(b.kind == NormKind::Bergman);
}

TEST_CASE("scalars by name") {
  const DiskField f = extend(BoundarySpec::preset("random-trig"));
  const cplx z(0.3, -0.4);
  CHECK(scalar_by_name(f, "opnorm").at(z) ==
        doctest::Approx(scalar_by_name(f, "fz").at(z) + scalar_by_name(f, "fzbar").at(z)));
  CHECK(scalar_by_name(f, "ft_over_r").at(z) ==
        doctest::Approx(scalar_by_name(f, "ft").at(z) / 0.5));
  CHECK(abs_value(f).scaled(3.0).at(z) == doctest::Approx(3.0 * abs_value(f).at(z)));
  CHECK_THROWS_AS(scalar_by_name(f, "laplacian"), InvalidInput);
  CHECK(starting_angular_nodes(0.5) == 64);
  CHECK(starting_angular_nodes(1.0 - std::ldexp(1.0, -12)) == 65536);
}
