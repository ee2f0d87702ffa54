#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "elastica/fixtures.hpp"
#include "elastica/translation.hpp"

using namespace elastica;

namespace {

StiffnessTensor random_orthotropic_psd_ish(Rng& rng) {
  // Diagonally loaded orthotropic tensor; positivity is not required for the
  // Mandel agreement tests.
  std::array<Rational, 9> c;
  for (auto& v : c) {
    v = Rational(rng.uniform_int(-2, 2), rng.uniform_int(1, 2));
    v.canonicalize();
  }
  c[0] += 4;
  c[1] += 4;
  c[2] += 4;
  return StiffnessTensor::orthotropic(c);
}

double mat6_diff(const Mat6& a, const Mat6& b) {
  double m = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

StiffnessTensor scaled_identity_voigt(const Rational& s) {
  RatMatrix m = rat_identity(6);
  for (int i = 0; i < 6; ++i) m[i][i] = s;
  return StiffnessTensor::from_voigt(m);
}

struct TempPath {
  std::string path;
  explicit TempPath(std::string p) : path(std::move(p)) {}
  ~TempPath() {
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
  }
};

}  // namespace

TEST_CASE("mandel restriction agrees with the direct stiffness map") {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_orthotropic_psd_ish(rng);
    const auto direct = mandel(c);
    const auto restricted = mandel_restrict(QuadraticForm::from_stiffness(c));
    CHECK(mat6_diff(direct, restricted) <= 1e-12);
  }
  const auto iso = fixtures::isotropic_stiffness();
  CHECK(mat6_diff(mandel(iso), mandel_restrict(QuadraticForm::from_stiffness(iso))) <=
        1e-12);
}

TEST_CASE("isotropic mandel spectrum") {
  // lambda = mu = 1: bulk mode 3*lambda + 2*mu = 5, shear modes 2*mu = 2.
  const auto eg = eig6_sym(mandel(fixtures::isotropic_stiffness()));
  CHECK(eg.w[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eg.w[4] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eg.w[5] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("zero translation leaves the phases as the gap") {
  TwoPhaseSetup s;
  s.phase1 = fixtures::isotropic_stiffness();
  s.phase2 = scaled_identity_voigt(2);
  s.translation = QuadraticForm();  // zero form
  s.t = 1.0;
  const auto r = translation_gap(s);
  CHECK(r.admissible);
  CHECK(r.phase1.psd);
  CHECK(r.phase2.psd);
  CHECK(r.phase1.min_eigenvalue == doctest::Approx(2.0).epsilon(1e-12));
  // Voigt identity scaled by 2 has Mandel shear entries 4 and normal entries 2.
  CHECK(r.phase2.min_eigenvalue == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.degenerate_directions.empty());
}

TEST_CASE("subtracting a phase from itself is degenerate in all directions") {
  TwoPhaseSetup s;
  s.phase1 = fixtures::isotropic_stiffness();
  s.phase2 = fixtures::isotropic_stiffness();
  s.translation =
      QuadraticForm::from_stiffness(fixtures::isotropic_stiffness());
  s.t = 1.0;
  const auto r = translation_gap(s);
  CHECK(r.admissible);
  CHECK(std::abs(r.phase1.min_eigenvalue) <= 1e-12);
  // Six directions per phase; both phases have the identical zero gap here.
  CHECK(r.degenerate_directions.size() == 12);

  // Degenerate directions are unit vectors annihilated by the gap.
  const auto gap = mandel(s.phase1);  // gap = C - C == 0, use 0 directly
  for (const auto& d : r.degenerate_directions) {
    double n2 = 0;
    for (int i = 0; i < 6; ++i) n2 += d[i] * d[i];
    CHECK(std::sqrt(n2) == doctest::Approx(1.0).epsilon(1e-10));
    const auto m = mandel_to_sym(d);
    double fro2 = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) fro2 += m[i][j] * m[i][j];
    CHECK(std::sqrt(fro2) == doctest::Approx(1.0).epsilon(1e-10));
  }
  (void)gap;
}

TEST_CASE("definite gap example") {
  TwoPhaseSetup s;
  s.phase1 = scaled_identity_voigt(2);
  s.phase2 = scaled_identity_voigt(2);
  s.translation = QuadraticForm::from_stiffness(scaled_identity_voigt(1));
  s.t = 1.0;
  const auto r = translation_gap(s);
  CHECK(r.admissible);
  CHECK(r.phase1.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.degenerate_directions.empty());
}

TEST_CASE("inadmissible when t is too large") {
  TwoPhaseSetup s;
  s.phase1 = fixtures::isotropic_stiffness();
  s.phase2 = fixtures::isotropic_stiffness();
  s.translation =
      QuadraticForm::from_stiffness(fixtures::isotropic_stiffness());
  s.t = 1.5;
  const auto r = translation_gap(s);
  CHECK_FALSE(r.admissible);
  CHECK(r.phase1.min_eigenvalue < 0);
}

TEST_CASE("degenerate directions satisfy the residual bound") {
  TwoPhaseSetup s;
  s.phase1 = fixtures::isotropic_stiffness();
  s.phase2 = scaled_identity_voigt(3);
  s.translation =
      QuadraticForm::from_stiffness(fixtures::isotropic_stiffness());
  s.t = 1.0;  // phase1 gap is exactly zero; phase2 gap stays definite
  const auto r = translation_gap(s);
  REQUIRE(r.degenerate_directions.size() == 6);

  const auto c1 = mandel(s.phase1);
  const auto tq = mandel_restrict(s.translation);
  double scale = 0;
  Mat6 gap{};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      gap[i][j] = c1[i][j] - s.t * tq[i][j];
      scale = std::max(scale, std::abs(gap[i][j]));
    }
  }
  scale = std::max(1.0, scale);
  for (const auto& d : r.degenerate_directions) {
    for (int i = 0; i < 6; ++i) {
      double dot = 0;
      for (int j = 0; j < 6; ++j) dot += gap[i][j] * d[j];
      CHECK(std::abs(dot) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("field io round-trips exactly") {
  const auto u = random_field(6, 99);
  const TempPath tmp("test_field_roundtrip.bin");
  write_field(u, tmp.path, tmp.path + ".json");
  const auto v = read_field(tmp.path, tmp.path + ".json");
  REQUIRE(v.n == u.n);
  REQUIRE(v.data.size() == u.data.size());
  for (size_t i = 0; i < u.data.size(); ++i) CHECK(u.data[i] == v.data[i]);
}

TEST_CASE("field io rejects malformed inputs") {
  const auto u = random_field(4, 7);
  const TempPath tmp("test_field_malformed.bin");
  write_field(u, tmp.path, tmp.path + ".json");

  // Truncate the data file.
  {
    std::FILE* f = std::fopen(tmp.path.c_str(), "rb+");
    REQUIRE(f != nullptr);
    std::fclose(f);
    // rewrite with fewer bytes
    const auto bytes = u.data.size() * sizeof(double) - 16;
    std::FILE* g = std::fopen("test_field_trunc.bin", "wb");
    REQUIRE(g != nullptr);
    std::fwrite(u.data.data(), 1, bytes, g);
    std::fclose(g);
  }
  const TempPath trunc("test_field_trunc.bin");
  CHECK_THROWS_AS(read_field(trunc.path, tmp.path + ".json"), std::runtime_error);
  CHECK_THROWS_AS(read_field("does_not_exist.bin", tmp.path + ".json"),
                  std::runtime_error);
}

TEST_CASE("zero_outside masks scalars") {
  auto u = random_field(4, 13);
  std::vector<uint8_t> mask(4 * 4 * 4, 1);
  const auto same = zero_outside(u, mask);
  for (size_t i = 0; i < u.data.size(); ++i) CHECK(same.data[i] == u.data[i]);

  mask.assign(mask.size(), 0);
  mask[0] = 1;
  const auto masked = zero_outside(u, mask);
  for (int comp = 0; comp < 3; ++comp) {
    CHECK(masked.data[comp] == u.data[comp]);
  }
  double rest = 0;
  for (size_t i = 3; i < masked.data.size(); ++i) rest += std::abs(masked.data[i]);
  CHECK(rest == 0.0);
}

TEST_CASE("plancherel identity holds on random fields") {
  const auto f = QuadraticForm::from_stiffness(fixtures::isotropic_stiffness());
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto u = random_field(16, seed);
    const auto r = fourier_quasiconvexity_check(f, u);
    CHECK(r.plancherel_rel_err <= 1e-8);
    CHECK(r.nonnegative);
    CHECK(r.total >= -1e-8 * r.field_norm2);
    // An energetic random field is far from special, and the modes carrying
    // the energy are listed.
    CHECK_FALSE(r.special);
    CHECK_FALSE(r.violating_modes.empty());
  }
}

TEST_CASE("rank-one convex forms stay nonnegative on random fields") {
  const auto q = fixtures::cyclic_form();
  for (uint64_t seed : {5ull, 6ull}) {
    const auto u = random_field(12, seed);
    const auto r = fourier_quasiconvexity_check(q, u);
    CHECK(r.nonnegative);
    CHECK(r.plancherel_rel_err <= 1e-8);
  }
}

TEST_CASE("single-mode null fields of the cyclic form are special") {
  // u = e2 cos(2 pi x1 / n): the only modes are +-e1 and Q(e2 (x) e1) == 0.
  const auto u = single_mode_field(16, {1, 0, 0}, {0.0, 1.0, 0.0});
  const auto r = fourier_quasiconvexity_check(fixtures::cyclic_form(), u);
  CHECK(r.special);
  CHECK(r.nonnegative);
  CHECK(r.violating_modes.empty());
  CHECK(std::abs(r.total) <= 1e-10 * std::max(1.0, r.field_norm2));

  // The diagonal zero of T_Q: x = y = (1,1,1) gives x^T (3I - J) x == 0.
  const auto w = single_mode_field(16, {1, 1, 1}, {1.0, 1.0, 1.0});
  const auto rw = fourier_quasiconvexity_check(fixtures::cyclic_form(), w);
  CHECK(rw.special);
  CHECK(std::abs(rw.total) <= 1e-10 * std::max(1.0, rw.field_norm2));

  // Aligned polarization activates T11(e1) == 1: not special.
  const auto v = single_mode_field(16, {1, 0, 0}, {1.0, 0.0, 0.0});
  const auto rv = fourier_quasiconvexity_check(fixtures::cyclic_form(), v);
  CHECK_FALSE(rv.special);
  CHECK(rv.total > 0);
}

TEST_CASE("stiffness overload matches the form overload") {
  const auto c = fixtures::isotropic_stiffness();
  const auto u = random_field(8, 21);
  const auto a = fourier_quasiconvexity_check(c, u);
  const auto b = fourier_quasiconvexity_check(QuadraticForm::from_stiffness(c), u);
  CHECK(a.total == doctest::Approx(b.total).epsilon(1e-12));
  CHECK(a.nonnegative == b.nonnegative);
}

TEST_CASE("rejects forms that are not rank-one convex") {
  const auto f = scale(fixtures::cyclic_form(), Rational(-1));
  const auto u = random_field(8, 2);
  CHECK_THROWS_AS(fourier_quasiconvexity_check(f, u), std::invalid_argument);
}

TEST_CASE("field accessor layout") {
  auto u = single_mode_field(4, {0, 0, 1}, {1.0, 0.0, 0.0});
  // u1(x) = cos(2 pi z / 4): check a couple of grid samples via at().
  CHECK(u.at(0, 0, 0, 0) == doctest::Approx(1.0));
  CHECK(u.at(0, 0, 1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(u.at(0, 0, 2, 0) == doctest::Approx(-1.0));
  CHECK(u.at(1, 2, 3, 1) == doctest::Approx(0.0));
}
