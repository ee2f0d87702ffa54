#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastica/eig3.hpp"
#include "elastica/homopoly.hpp"
#include "elastica/nonneg.hpp"
#include "elastica/rational.hpp"
#include "elastica/sampling.hpp"

namespace elastica {

// 6x6 Voigt stiffness with engineering shear strains, components ordered
// (11, 22, 33, 23, 31, 12). Entries are exact rationals.
class StiffnessTensor {
 public:
  enum class Symmetry { kOrthotropic, kGeneral };

  StiffnessTensor() : voigt_(rat_identity(6)), symmetry_(Symmetry::kGeneral) {}

  // Zero pattern of the orthotropic class: the 3x3 normal block plus a
  // diagonal shear block C44 (23,23), C55 (31,31), C66 (12,12).
  static StiffnessTensor orthotropic(const std::array<Rational, 9>& c);
  static StiffnessTensor orthotropic(Rational c11, Rational c22, Rational c33,
                                     Rational c12, Rational c13, Rational c23,
                                     Rational c44, Rational c55, Rational c66);
  static StiffnessTensor isotropic(const Rational& lambda, const Rational& mu);
  static StiffnessTensor from_voigt(RatMatrix m);  // throws unless 6x6 symmetric

  Symmetry symmetry() const { return symmetry_; }
  bool is_orthotropic() const { return symmetry_ == Symmetry::kOrthotropic; }
  const RatMatrix& voigt() const { return voigt_; }
  Rational c(int i, int j) const { return voigt_[i][j]; }

  // Theorem-hypothesis accessor: product of the three normal stiffnesses.
  Rational c11c22c33() const { return voigt_[0][0] * voigt_[1][1] * voigt_[2][2]; }

  nlohmann::json to_json() const;
  static StiffnessTensor from_json(const nlohmann::json& j);

 private:
  RatMatrix voigt_;
  Symmetry symmetry_;
};

// Quadratic form on 3x3 matrices: f(xi) = vec(xi)^T gram vec(xi), with xi
// flattened row-major (xi11, xi12, xi13, xi21, ...). Exact rational gram.
class QuadraticForm {
 public:
  QuadraticForm();

  static QuadraticForm from_gram(RatMatrix g);  // throws unless 9x9 symmetric
  static QuadraticForm from_stiffness(const StiffnessTensor& c);
  // (sum_ij B_ij xi_ij)^2; on xi = x (x) y this is (x^T B y)^2.
  static QuadraticForm rank_one(const RatMatrix& b);

  const RatMatrix& gram() const { return gram_; }

  Rational eval_exact(const RatMatrix& xi) const;     // xi is 3x3
  double eval(const std::array<double, 9>& xi) const;

  bool vanishes_on_antisymmetric() const;  // exact

  nlohmann::json to_json() const;
  static QuadraticForm from_json(const nlohmann::json& j);

  bool operator==(const QuadraticForm& o) const { return gram_ == o.gram_; }

 private:
  explicit QuadraticForm(RatMatrix g) : gram_(std::move(g)) {}
  RatMatrix gram_;
};

QuadraticForm add(const QuadraticForm& f, const QuadraticForm& g);
QuadraticForm sub(const QuadraticForm& f, const QuadraticForm& g);
QuadraticForm scale(const QuadraticForm& f, const Rational& c);

// Rank-one quadratic form xi -> (B : xi)^2.
struct RankOneForm {
  RatMatrix B;  // 3x3

  static RankOneForm outer(int i, int j);  // e_i (x) e_j
  QuadraticForm form() const { return QuadraticForm::rank_one(B); }
  // l_i(y) = sum_j B_ij y_j as degree-1 polynomials.
  std::array<HomoPoly, 3> l() const;
};

// 3x3 symmetric matrix of homogeneous polynomials in y (all same degree).
struct PolyMat3 {
  std::array<HomoPoly, 9> m;

  const HomoPoly& at(int i, int k) const { return m[3 * i + k]; }
  HomoPoly& at(int i, int k) { return m[3 * i + k]; }
  int degree() const { return m[0].degree(); }
};

using AcousticMatrix = PolyMat3;  // entries of degree 2

// T_ik(y) with x^T T(y) x = f(x (x) y), exact.
AcousticMatrix acoustic_matrix(const QuadraticForm& f);
AcousticMatrix acoustic_matrix(const StiffnessTensor& c);

HomoPoly det(const PolyMat3& t);
PolyMat3 cofactor(const PolyMat3& t);

HomoPoly acoustic_det(const QuadraticForm& f);
HomoPoly acoustic_det(const StiffnessTensor& c);
PolyMat3 acoustic_cofactor(const QuadraticForm& f);
PolyMat3 acoustic_cofactor(const StiffnessTensor& c);

double biquadratic(const QuadraticForm& f, const Vec3& x, const Vec3& y);
double biquadratic(const StiffnessTensor& c, const Vec3& x, const Vec3& y);
Rational biquadratic_exact(const QuadraticForm& f, const std::vector<Rational>& x,
                           const std::vector<Rational>& y);

// Fast double path: T(y) = sum_{a<=b} y_a y_b M_ab with constant matrices.
class CompiledAcoustic {
 public:
  explicit CompiledAcoustic(const AcousticMatrix& t);
  Mat3 operator()(const Vec3& y) const;

 private:
  std::array<Mat3, 6> mono_;  // monomial order: 11, 22, 33, 12, 13, 23
};

struct RankOneConvexityConfig {
  int samples = 20000;
  int refine = 50;
  double tol = 1e-9;   // relative to the observed |T| scale
  uint64_t seed = 1;
};

struct RankOneConvexityReport {
  bool convex = true;      // min_value >= -tol*scale
  double min_value = 0.0;
  Vec3 y{0, 0, 0};         // minimizing direction
  Vec3 x{0, 0, 0};         // eigenvector of T(y) at the minimum
  double scale = 1.0;
  RankOneConvexityConfig cfg;
};

// Minimizes lambda_min(T(y)) over the unit sphere (scan + derivative-free
// local refinement, safe at eigenvalue crossings).
RankOneConvexityReport rank_one_convexity(const QuadraticForm& f,
                                          const RankOneConvexityConfig& cfg = {});
RankOneConvexityReport rank_one_convexity(const StiffnessTensor& c,
                                          const RankOneConvexityConfig& cfg = {});

nlohmann::json to_json(const RankOneConvexityReport& r);

// Checks det(T_t(y)) == det(T(y)) - t sum_ij l_i l_j cof_ij(T(y)) exactly,
// where T_t is the acoustic matrix of f - t(B:xi)^2. Always true; exposed so
// the identity is a named, testable artifact.
bool subtracted_det_identity_check(const QuadraticForm& f, const RankOneForm& b,
                                   const Rational& t);
bool subtracted_det_identity_check(const StiffnessTensor& c, const RankOneForm& b,
                                   const Rational& t);

// det(A+B)^(1/3) >= det(A)^(1/3) + det(B)^(1/3) for symmetric psd A, B.
// Inputs verified psd with eigenvalue tolerance -1e-12; throws otherwise.
// Inequality checked with 1e-10 slack on the cube roots.
struct BrunnMinkowskiResult {
  bool holds;
  double lhs;  // det(A+B)^(1/3)
  double rhs;  // det(A)^(1/3) + det(B)^(1/3)
};
BrunnMinkowskiResult brunn_minkowski_check(const Mat3& a, const Mat3& b);

// Parametrized special-form families with their closed-form determinants.
// acoustic_det(form) equals the fixture polynomial exactly.
struct SpecialFormFixture {
  std::string name;
  QuadraticForm form;
  HomoPoly expected_det;
};

// (a xi11 + b xi22 + c xi33)^2 + (xi12-xi21)^2 + (xi13-xi31)^2 + (xi23-xi32)^2,
// det = (y1^2+y2^2+y3^2)(a y1^2 + b y2^2 + c y3^2)^2.
SpecialFormFixture axial_rotation_form(const Rational& a, const Rational& b,
                                       const Rational& c);
// (a xi11 + b xi22 + c xi33)^2 + (xi12+xi21)^2 + (xi13+xi31)^2,
// det = y1^2 (a y1^2 - b y2^2 - c y3^2)^2.
SpecialFormFixture axial_shear_form(const Rational& a, const Rational& b,
                                    const Rational& c);
// (a xi11 + b xi22 + c xi33)^2 + xi12^2 + xi21^2 + 2 d xi12 xi21,
// det = c^2 (1-d^2) y1^2 y2^2 y3^2.
SpecialFormFixture axial_pair_form(const Rational& a, const Rational& b,
                                   const Rational& c, const Rational& d);
// a1(xi12^2+xi21^2) + a2(xi13^2+xi31^2) + a3(xi23^2+xi32^2)
//   + 2 b1 xi11 xi22 + 2 b2 xi11 xi33 + 2 b3 xi22 xi33, seven-term det.
SpecialFormFixture shear_coupling_form(const std::array<Rational, 3>& a,
                                       const std::array<Rational, 3>& b);
// sum_ij a_ij xi_ii xi_jj, det = det(a) y1^2 y2^2 y3^2.
SpecialFormFixture diagonal_coupling_form(const RatMatrix& a);

// Default instances of the families above (generic + degenerate parameters).
std::vector<SpecialFormFixture> special_form_fixtures();

}  // namespace elastica
