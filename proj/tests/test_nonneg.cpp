#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elastica/fixtures.hpp"
#include "elastica/nonneg.hpp"

using namespace elastica;

namespace {

HomoPoly norm_squared() {
  HomoPoly p(3, 2);
  p.add_term({2, 0, 0}, Rational(1));
  p.add_term({0, 2, 0}, Rational(1));
  p.add_term({0, 0, 2}, Rational(1));
  return p;
}

}  // namespace

TEST_CASE("strictly positive polynomial") {
  // (y1^2+y2^2+y3^2)^3 == 1 on the whole sphere.
  const auto r = nonneg_check(poly_pow(norm_squared(), 3));
  CHECK(r.nonnegative);
  CHECK(r.min_value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("nonnegative polynomial with zeros on the sphere") {
  const auto r = nonneg_check(fixtures::cyclic_sextic());
  CHECK(r.nonnegative);
  CHECK(std::abs(r.min_value) <= 1e-9);
  // The zero set of the cyclic sextic on the sphere is the coordinate axes
  // plus the eight diagonal directions; the argmin must land on one of them.
  const double d = 1.0 / std::sqrt(3.0);
  std::vector<Vec3> family = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) family.push_back({s1 * d, s2 * d, s3 * d});
  double nearest = 2.0;
  for (const auto& y : family) {
    const double dot = std::abs(y[0] * r.argmin[0] + y[1] * r.argmin[1] +
                                y[2] * r.argmin[2]);
    nearest = std::min(nearest, 1.0 - dot);
  }
  CHECK(nearest <= 1e-6);
}

TEST_CASE("negative witness is found and consistent") {
  // y1^6 - 3 y1^4 y2^2 is negative near y1 == y2.
  HomoPoly p(3, 6);
  p.add_term({6, 0, 0}, Rational(1));
  p.add_term({4, 2, 0}, Rational(-3));
  const auto r = nonneg_check(p);
  CHECK_FALSE(r.nonnegative);
  CHECK(r.min_value < 0);
  const double n = std::sqrt(r.argmin[0] * r.argmin[0] +
                             r.argmin[1] * r.argmin[1] +
                             r.argmin[2] * r.argmin[2]);
  CHECK(n == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(eval(p, r.argmin) == doctest::Approx(r.min_value).epsilon(1e-12));
}

TEST_CASE("verdict is invariant under positive scaling") {
  const auto p = fixtures::cyclic_sextic();
  const auto up = nonneg_check(scale(p, Rational(1000000)));
  const auto down = nonneg_check(scale(p, Rational(1, 1000000)));
  CHECK(up.nonnegative);
  CHECK(down.nonnegative);

  HomoPoly q(3, 6);
  q.add_term({6, 0, 0}, Rational(1));
  q.add_term({4, 2, 0}, Rational(-3));
  CHECK_FALSE(nonneg_check(scale(q, Rational(1000000))).nonnegative);
  CHECK_FALSE(nonneg_check(scale(q, Rational(1, 1000000))).nonnegative);
}

TEST_CASE("same configuration reproduces the same report") {
  NonnegConfig cfg;
  cfg.seed = 42;
  const auto a = nonneg_check(fixtures::cyclic_sextic(), cfg);
  const auto b = nonneg_check(fixtures::cyclic_sextic(), cfg);
  CHECK(a.min_value == b.min_value);
  CHECK(a.argmin[0] == b.argmin[0]);
  CHECK(a.argmin[1] == b.argmin[1]);
  CHECK(a.argmin[2] == b.argmin[2]);
}

TEST_CASE("input contracts") {
  CHECK_THROWS_AS(nonneg_check(HomoPoly(2, 4)), std::invalid_argument);
  CHECK_THROWS_AS(nonneg_check(HomoPoly(3, 3)), std::invalid_argument);
}
