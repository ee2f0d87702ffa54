#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "elastica/fixtures.hpp"
#include "elastica/perfect_square.hpp"
#include "elastica/sampling.hpp"

using namespace elastica;

namespace {

HomoPoly random_cubic(Rng& rng) {
  HomoPoly q(3, 3);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j + i <= 3; ++j) {
      Rational c(rng.uniform_int(-6, 6), rng.uniform_int(1, 3));
      c.canonicalize();
      q.add_term({i, j, 3 - i - j}, c);
    }
  }
  return q;
}

}  // namespace

TEST_CASE("squares of random cubics are certified exactly") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    auto q = random_cubic(rng);
    if (q.is_zero()) q.add_term({3, 0, 0}, Rational(1));
    const auto p = mul(q, q);
    const auto r = perfect_square_check(p);
    REQUIRE(r.square);
    CHECK(r.exact);
    REQUIRE(r.root.has_value());
    // Reconstruction is exact: p == root_scale * root^2.
    CHECK(scale(mul(*r.root, *r.root), r.root_scale) == p);
  }
}

TEST_CASE("scaled squares factor into root_scale") {
  HomoPoly q(3, 2);
  q.add_term({2, 0, 0}, Rational(1));
  q.add_term({0, 1, 1}, Rational(-2));
  const auto p = scale(mul(q, q), Rational(3, 2));
  const auto r = perfect_square_check(p);
  REQUIRE(r.square);
  CHECK(r.exact);
  CHECK(scale(mul(*r.root, *r.root), r.root_scale) == p);
}

TEST_CASE("monomial squares") {
  const auto r = perfect_square_check(fixtures::triple_square());
  REQUIRE(r.square);
  HomoPoly root(3, 3);
  root.add_term({1, 1, 1}, Rational(1));
  CHECK(scale(mul(*r.root, *r.root), r.root_scale) == fixtures::triple_square());
  CHECK(*r.root == root);
}

TEST_CASE("non-squares are rejected") {
  CHECK_FALSE(perfect_square_check(fixtures::cyclic_sextic()).square);
  CHECK_FALSE(perfect_square_check(fixtures::cyclic_sextic_swapped()).square);

  // y2^2 (y1^4 + y2^2 y3^2) is nonnegative but not a square.
  HomoPoly p(3, 6);
  p.add_term({4, 2, 0}, Rational(1));
  p.add_term({0, 4, 2}, Rational(1));
  const auto r = perfect_square_check(p);
  CHECK_FALSE(r.square);
  CHECK(r.residual > 1e-8);
}

TEST_CASE("sign-indefinite and near-square inputs") {
  // -q^2 is not a square of a real polynomial.
  HomoPoly q(3, 2);
  q.add_term({1, 1, 0}, Rational(1));
  CHECK_FALSE(perfect_square_check(scale(mul(q, q), Rational(-1))).square);

  // A tiny exact perturbation of a square must be refused by the exact path.
  auto p = mul(q, q);
  p.add_term({4, 0, 0}, Rational(1, 1000000000));
  const auto r = perfect_square_check(p);
  CHECK_FALSE(r.square);
  CHECK(r.residual >= 0.0);
}

TEST_CASE("same configuration reproduces the same report") {
  const auto a = perfect_square_check(fixtures::cyclic_sextic());
  const auto b = perfect_square_check(fixtures::cyclic_sextic());
  CHECK(a.square == b.square);
  CHECK(a.residual == b.residual);
}

TEST_CASE("split sextic is not a square") {
  // (y1^2+y2^2)(y1^2+y2^2+y3^2)^2 has a square-free factor of even multiplicity
  // pattern but is itself not a perfect square.
  const auto r = perfect_square_check(fixtures::split_sextic());
  CHECK_FALSE(r.square);
}
