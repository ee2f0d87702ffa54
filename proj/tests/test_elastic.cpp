#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elastica/elastic.hpp"
#include "elastica/fixtures.hpp"
#include "elastica/sampling.hpp"

using namespace elastica;

namespace {

StiffnessTensor random_orthotropic(Rng& rng) {
  std::array<Rational, 9> c;
  for (auto& v : c) {
    v = Rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 3));
    v.canonicalize();
  }
  return StiffnessTensor::orthotropic(c);
}

std::vector<Rational> random_rat_vec3(Rng& rng) {
  std::vector<Rational> v(3);
  for (auto& x : v) {
    x = Rational(rng.uniform_int(-5, 5), rng.uniform_int(1, 3));
    x.canonicalize();
  }
  return v;
}

RatMatrix random_rat_mat3(Rng& rng) {
  RatMatrix b(3, std::vector<Rational>(3));
  for (auto& row : b) {
    for (auto& v : row) {
      v = Rational(rng.uniform_int(-3, 3), rng.uniform_int(1, 2));
      v.canonicalize();
    }
  }
  return b;
}

// x^T T(y) x evaluated exactly from the polynomial acoustic matrix.
Rational contract(const AcousticMatrix& t, const std::vector<Rational>& x,
                  const std::vector<Rational>& y) {
  Rational s(0);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      s += x[i] * x[k] * eval_exact(t.at(i, k), y);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("acoustic matrix represents the biquadratic exactly") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_orthotropic(rng);
    const auto f = QuadraticForm::from_stiffness(c);
    const auto t = acoustic_matrix(c);
    const auto x = random_rat_vec3(rng);
    const auto y = random_rat_vec3(rng);

    CHECK(contract(t, x, y) == biquadratic_exact(f, x, y));

    // Double path agrees with the exact one.
    Vec3 xd{}, yd{};
    for (int i = 0; i < 3; ++i) {
      xd[i] = rat_to_double(x[i]);
      yd[i] = rat_to_double(y[i]);
    }
    const double exact = rat_to_double(biquadratic_exact(f, x, y));
    CHECK(std::abs(biquadratic(c, xd, yd) - exact) <=
          1e-10 * (1.0 + std::abs(exact)));
    CHECK(std::abs(biquadratic(f, xd, yd) - exact) <=
          1e-10 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("acoustic matrix entries are symmetric quadratics") {
  Rng rng(37);
  const auto c = random_orthotropic(rng);
  const auto t = acoustic_matrix(c);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(t.at(i, k).degree() == 2);
      CHECK(t.at(i, k) == t.at(k, i));
    }
  }
  CHECK(acoustic_det(c).degree() == 6);
}

TEST_CASE("acoustic matrix is linear in the form") {
  Rng rng(41);
  const auto f = QuadraticForm::from_stiffness(random_orthotropic(rng));
  const auto g = QuadraticForm::from_stiffness(random_orthotropic(rng));
  const auto tf = acoustic_matrix(f);
  const auto tg = acoustic_matrix(g);
  const auto tsum = acoustic_matrix(add(f, g));
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(tsum.at(i, k) == add(tf.at(i, k), tg.at(i, k)));
    }
  }
}

TEST_CASE("cofactor identity T adj(T) == det(T) I") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_orthotropic(rng);
    const auto t = acoustic_matrix(c);
    const auto cof = cofactor(t);
    const auto d = det(t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        HomoPoly sum(3, 6);
        for (int k = 0; k < 3; ++k) {
          sum = add(sum, mul(t.at(i, k), cof.at(j, k)));
        }
        if (i == j) {
          CHECK(sum == d);
        } else {
          CHECK(sum.is_zero());
        }
      }
    }
  }
}

TEST_CASE("stiffness forms vanish on antisymmetric matrices") {
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = QuadraticForm::from_stiffness(random_orthotropic(rng));
    CHECK(f.vanishes_on_antisymmetric());

    RatMatrix xi(3, std::vector<Rational>(3, Rational(0)));
    const auto v = random_rat_vec3(rng);
    xi[0][1] = v[0];
    xi[1][0] = -v[0];
    xi[0][2] = v[1];
    xi[2][0] = -v[1];
    xi[1][2] = v[2];
    xi[2][1] = -v[2];
    CHECK(f.eval_exact(xi) == Rational(0));
  }
  // A generic 9x9 form does not.
  CHECK_FALSE(fixtures::cyclic_form().vanishes_on_antisymmetric());
}

TEST_CASE("worked determinant examples") {
  CHECK(acoustic_det(fixtures::normal_squares_stiffness()) ==
        fixtures::triple_square());
  CHECK(acoustic_det(fixtures::two_diag_squares_stiffness()).is_zero());
  CHECK(acoustic_det(fixtures::diagonal_stiffness({1, 1, 0, 0, 0, 0})).is_zero());
  CHECK(acoustic_det(fixtures::cyclic_form()) == fixtures::cyclic_sextic_swapped());

  // The swapped sextic really is the cyclic one under y2 <-> y3.
  const auto swap23 = LinearSubstitution::permutation({0, 2, 1});
  CHECK(substitute(fixtures::cyclic_sextic(), swap23) ==
        fixtures::cyclic_sextic_swapped());
}

TEST_CASE("rank-one forms have identically zero determinant") {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const auto b = random_rat_mat3(rng);
    CHECK(acoustic_det(QuadraticForm::rank_one(b)).is_zero());
  }
}

TEST_CASE("subtracted determinant identity") {
  Rng rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = random_orthotropic(rng);
    RankOneForm b{random_rat_mat3(rng)};
    Rational t(rng.uniform_int(-2, 4), rng.uniform_int(1, 3));
    t.canonicalize();
    CHECK(subtracted_det_identity_check(c, b, t));
    CHECK(subtracted_det_identity_check(QuadraticForm::from_stiffness(c), b, t));
  }
  CHECK(subtracted_det_identity_check(fixtures::cyclic_form(),
                                      RankOneForm::outer(0, 0), Rational(1)));
}

TEST_CASE("brunn minkowski determinant superadditivity") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    Mat3 a{}, b{};
    for (int rep = 0; rep < 3; ++rep) {
      const auto u = rng.gauss_vec(3), v = rng.gauss_vec(3);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          a[i][j] += u[i] * u[j];
          b[i][j] += v[i] * v[j];
        }
      }
    }
    const auto r = brunn_minkowski_check(a, b);
    CHECK(r.holds);
    CHECK(r.lhs >= r.rhs - 1e-10);
  }
  // Cube-root additivity is tight for proportional matrices.
  const Mat3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  Mat3 two{};
  for (int i = 0; i < 3; ++i) two[i][i] = 2.0;
  const auto r = brunn_minkowski_check(id, two);
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));

  Mat3 indef{};
  indef[0][0] = -1.0;
  CHECK_THROWS_AS(brunn_minkowski_check(indef, id), std::invalid_argument);
}

TEST_CASE("special form fixtures match their closed-form determinants") {
  const auto fixtures_list = special_form_fixtures();
  CHECK(fixtures_list.size() >= 6);
  for (const auto& f : fixtures_list) {
    INFO(f.name);
    CHECK(acoustic_det(f.form) == f.expected_det);
  }

  // Degenerate corners of the families.
  CHECK(acoustic_det(axial_rotation_form(0, 0, 0).form).is_zero());
  const auto full = axial_rotation_form(1, 1, 1);
  HomoPoly norm2(3, 2);
  norm2.add_term({2, 0, 0}, Rational(1));
  norm2.add_term({0, 2, 0}, Rational(1));
  norm2.add_term({0, 0, 2}, Rational(1));
  CHECK(full.expected_det == poly_pow(norm2, 3));
  CHECK(acoustic_det(full.form) == poly_pow(norm2, 3));

  const auto degenerate_shear =
      shear_coupling_form({1, 1, 1}, {-1, -1, -1});
  CHECK(acoustic_det(degenerate_shear.form) == degenerate_shear.expected_det);
}

TEST_CASE("voigt construction contracts") {
  CHECK_THROWS_AS(StiffnessTensor::from_voigt(RatMatrix(5)), std::invalid_argument);
  RatMatrix m(6, std::vector<Rational>(6, Rational(0)));
  m[0][1] = 1;  // asymmetric
  CHECK_THROWS_AS(StiffnessTensor::from_voigt(m), std::invalid_argument);

  RatMatrix g(9, std::vector<Rational>(9, Rational(0)));
  g[0][1] = 1;
  CHECK_THROWS_AS(QuadraticForm::from_gram(g), std::invalid_argument);
}
