#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "elastica/homopoly.hpp"
#include "elastica/sampling.hpp"

using namespace elastica;

namespace {

HomoPoly random_poly(Rng& rng, int nvars, int degree, int terms) {
  HomoPoly p(nvars, degree);
  for (int t = 0; t < terms; ++t) {
    Exponents e(nvars, 0);
    int left = degree;
    for (int i = 0; i + 1 < nvars; ++i) {
      e[i] = rng.uniform_int(0, left);
      left -= e[i];
    }
    e[nvars - 1] = left;
    Rational c(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

}  // namespace

TEST_CASE("canonical form drops cancelled terms") {
  HomoPoly p(3, 2);
  p.add_term({2, 0, 0}, Rational(3));
  p.add_term({2, 0, 0}, Rational(-3));
  CHECK(p.is_zero());
  CHECK(p.degree() == 2);
  CHECK(p.terms().empty());

  p.add_term({0, 1, 1}, Rational(1, 2));
  CHECK(p.coeff({0, 1, 1}) == Rational(1, 2));
  CHECK(p.coeff({2, 0, 0}) == Rational(0));
}

TEST_CASE("degree and shape contracts are enforced") {
  HomoPoly p(3, 2);
  CHECK_THROWS_AS(p.add_term({1, 0, 0}, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(add(HomoPoly(3, 2), HomoPoly(3, 4)), std::invalid_argument);
  CHECK_THROWS_AS(add(HomoPoly(3, 2), HomoPoly(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(mul(HomoPoly(3, 2), HomoPoly(2, 2)), std::invalid_argument);
}

TEST_CASE("ring identities hold exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = random_poly(rng, 3, 2, 4);
    const auto q = random_poly(rng, 3, 2, 4);
    const auto r = random_poly(rng, 3, 3, 5);
    CHECK(mul(add(p, q), r) == add(mul(p, r), mul(q, r)));
    CHECK(mul(p, q) == mul(q, p));
    CHECK(sub(p, p).is_zero());
    CHECK(scale(p, Rational(0)).is_zero());
  }
}

TEST_CASE("poly_pow matches repeated multiplication") {
  Rng rng(11);
  const auto p = random_poly(rng, 3, 2, 5);
  CHECK(poly_pow(p, 0) == HomoPoly::monomial(3, {0, 0, 0}, Rational(1)));
  CHECK(poly_pow(p, 1) == p);
  CHECK(poly_pow(p, 3) == mul(p, mul(p, p)));
}

TEST_CASE("eval agrees with eval_exact") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_poly(rng, 3, 4, 6);
    std::vector<Rational> yq;
    std::array<double, 3> yd{};
    for (int i = 0; i < 3; ++i) {
      Rational v(rng.uniform_int(-8, 8), rng.uniform_int(1, 4));
      v.canonicalize();
      yq.push_back(v);
      yd[i] = rat_to_double(v);
    }
    const double exact = rat_to_double(eval_exact(p, yq));
    CHECK(eval(p, yd) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("compiled evaluation and gradient are consistent") {
  Rng rng(5);
  const auto p = random_poly(rng, 3, 6, 8);
  const auto cp = compile(p);
  const std::array<HomoPoly, 3> grads = {derivative(p, 0), derivative(p, 1),
                                         derivative(p, 2)};
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 y = rng.unit_vec3();
    CHECK(cp(y) == doctest::Approx(eval(p, y)).epsilon(1e-12));
    const auto g = cp.gradient(y);
    for (int i = 0; i < 3; ++i) {
      CHECK(g[i] == doctest::Approx(eval(grads[i], y)).epsilon(1e-11));
    }
  }
}

TEST_CASE("derivative satisfies the product rule") {
  Rng rng(13);
  const auto p = random_poly(rng, 3, 3, 5);
  const auto q = random_poly(rng, 3, 2, 4);
  for (int v = 0; v < 3; ++v) {
    const auto lhs = derivative(mul(p, q), v);
    const auto rhs = add(mul(derivative(p, v), q), mul(p, derivative(q, v)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("substitution composes") {
  Rng rng(17);
  const auto p = random_poly(rng, 3, 4, 6);

  const auto id = LinearSubstitution::identity(3);
  CHECK(substitute(p, id) == p);

  RatMatrix ma(3, std::vector<Rational>(3)), mb(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ma[i][j] = Rational(rng.uniform_int(-2, 2));
      mb[i][j] = Rational(rng.uniform_int(-2, 2));
    }
    ma[i][i] += 7;  // diagonal dominance keeps both factors nonsingular
    mb[i][i] += 7;
  }
  const auto a = LinearSubstitution::from_matrix(ma);
  const auto b = LinearSubstitution::from_matrix(mb);
  CHECK(substitute(substitute(p, a), b) == substitute(p, a.compose(b)));

  const auto ainv = a.inverse();
  REQUIRE(ainv.has_value());
  CHECK(substitute(substitute(p, a), *ainv) == p);
}

TEST_CASE("permutation substitution relabels variables") {
  HomoPoly p(3, 3);
  p.add_term({2, 1, 0}, Rational(5));
  // x1 -> y2, x2 -> y3, x3 -> y1: the term x1^2 x2 becomes y2^2 y3.
  const auto s = LinearSubstitution::permutation({1, 2, 0});
  HomoPoly expect(3, 3);
  expect.add_term({0, 2, 1}, Rational(5));
  CHECK(substitute(p, s) == expect);
  CHECK_THROWS_AS(LinearSubstitution::permutation({0, 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("even symmetrization projects onto even exponents") {
  Rng rng(19);
  const auto p = random_poly(rng, 3, 4, 8);
  const auto even = even_symmetrize(p);
  CHECK(is_even_in_each_variable(even));
  CHECK(even_symmetrize(even) == even);
  for (const auto& [e, c] : even.terms()) {
    CHECK(p.coeff(e) == c);  // even terms pass through unchanged
  }
  HomoPoly odd(3, 3);
  odd.add_term({1, 1, 1}, Rational(4));
  odd.add_term({3, 0, 0}, Rational(-2));
  CHECK(even_symmetrize(odd).is_zero());
  CHECK_FALSE(is_even_in_each_variable(odd));
}

TEST_CASE("text form round-trips and is canonical") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_poly(rng, 3, 6, 7);
    CHECK(poly_from_text(to_text(p)) == p);
  }
  const auto p = poly_from_text("y1^4*y2^2 - 3*y1^2*y2^2*y3^2 + 1/2*y3^6");
  CHECK(p.degree() == 6);
  CHECK(p.coeff({4, 2, 0}) == Rational(1));
  CHECK(p.coeff({2, 2, 2}) == Rational(-3));
  CHECK(p.coeff({0, 0, 6}) == Rational(1, 2));
  CHECK(to_text(HomoPoly(3, 4)) == "0");
  CHECK(poly_from_text("0", 3).is_zero());
  CHECK_THROWS_AS(poly_from_text("y1^2 + y2"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_text("y4^2"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_text("y1^2 + + y2^2"), std::invalid_argument);
}

TEST_CASE("json form round-trips") {
  Rng rng(29);
  const auto p = random_poly(rng, 3, 6, 9);
  CHECK(poly_from_json(poly_to_json(p)) == p);
  const auto z = HomoPoly(3, 2);
  CHECK(poly_from_json(poly_to_json(z)) == z);
}
