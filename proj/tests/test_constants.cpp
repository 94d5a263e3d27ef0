#include "doctest.h"

#include <cmath>
#include <limits>

#include "harmext/constants.hpp"
#include "harmext/errors.hpp"

using namespace harmext;

namespace {

// 30-digit reference quadrature of int_0^1 (4 artanh(r)/(pi r))^p r dr and
// the closed-form bound, computed once and frozen.
struct Row {
  double p;
  double c;
  double bound;
};

constexpr Row kTable[] = {
    {1.0, 0.88254240061060637359, 1.1140846016432673504},
    {1.5, 1.210677367424616844, 1.8020185242197702276},
    {2.0, 1.7051135952700231637, 3.0396355092701331433},
    {3.0, 3.7217452418800126983, 9.9334726054254426688},
    {5.0, 28.785946902484480494, 224.40386489576208718},
    {10.0, 80060.765222950800331, 20308760.388642637704},
};

} // namespace

TEST_CASE("C(1) closed form") {
  const ConstantReport c = c_of_p(1.0);
  CHECK(std::abs(c.c_value - 4.0 * std::log(2.0) / M_PI) < 1e-8);
  CHECK(std::abs(c.c_value - 4.0 * std::log(2.0) / M_PI) < 1e-14);
}

TEST_CASE("C(p) against the reference table") {
  for (const Row &row : kTable) {
    const ConstantReport c = c_of_p(row.p);
    INFO("p=" << row.p);
    CHECK(c.c_value == doctest::Approx(row.c).epsilon(1e-12));
    CHECK(c.upper_bound == doctest::Approx(row.bound).epsilon(1e-12));
    CHECK(c.margin() > 0.0);
    CHECK(c.quadrature_error < 1e-12 * row.c + 1e-10);
  }
  CHECK(c_upper_bound(2.0) == doctest::Approx(30.0 / (M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("C(p) grows with p") {
  double prev = 0.0;
  for (double p = 1.0; p <= 6.0; p += 0.25) {
    const double c = c_of_p(p).c_value;
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("C(p) domain") {
  CHECK_THROWS_AS(c_of_p(0.5), UnsupportedExponent);
  CHECK_THROWS_AS(c_of_p(std::numeric_limits<double>::infinity()),
                  UnsupportedExponent);
  CHECK_THROWS_AS(c_upper_bound(400.0), OverflowError);
}
