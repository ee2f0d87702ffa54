#include "elastica/elastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace elastica {

namespace {

constexpr int kVoigtKeysCount = 9;
const char* const kVoigtKeys[kVoigtKeysCount] = {"C11", "C22", "C33", "C12", "C13",
                                                 "C23", "C44", "C55", "C66"};

// Position of each orthotropic constant in the 6x6 Voigt matrix.
constexpr int kVoigtSlots[kVoigtKeysCount][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2},
                                                 {1, 2}, {3, 3}, {4, 4}, {5, 5}};

bool matches_orthotropic_pattern(const RatMatrix& v) {
  RatMatrix mask(6, std::vector<Rational>(6, Rational(0)));
  for (const auto& slot : kVoigtSlots) {
    mask[slot[0]][slot[1]] = 1;
    mask[slot[1]][slot[0]] = 1;
  }
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (mask[i][j] == 0 && v[i][j] != 0) return false;
  return true;
}

// Strain map e(xi): engineering-shear Voigt components of the symmetric part
// of xi, as a 6x9 exact matrix acting on vec(xi) (row-major).
RatMatrix strain_map() {
  RatMatrix e(6, std::vector<Rational>(9, Rational(0)));
  e[0][0] = 1;              // xi11
  e[1][4] = 1;              // xi22
  e[2][8] = 1;              // xi33
  e[3][5] = e[3][7] = 1;    // xi23 + xi32
  e[4][2] = e[4][6] = 1;    // xi13 + xi31
  e[5][1] = e[5][3] = 1;    // xi12 + xi21
  return e;
}

RatMatrix transpose(const RatMatrix& m) {
  RatMatrix t(m[0].size(), std::vector<Rational>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

HomoPoly quadratic_monomial(int j, int l, const Rational& c) {
  Exponents e(3, 0);
  e[j] += 1;
  e[l] += 1;
  return HomoPoly::monomial(3, e, c);
}

void require_symmetric(const RatMatrix& m, size_t n, const char* what) {
  if (m.size() != n) throw std::invalid_argument(std::string(what) + ": wrong size");
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n)
      throw std::invalid_argument(std::string(what) + ": wrong size");
    for (size_t j = 0; j < i; ++j)
      if (m[i][j] != m[j][i])
        throw std::invalid_argument(std::string(what) + ": not symmetric");
  }
}

}  // namespace

StiffnessTensor StiffnessTensor::orthotropic(const std::array<Rational, 9>& c) {
  StiffnessTensor t;
  t.voigt_ = RatMatrix(6, std::vector<Rational>(6, Rational(0)));
  for (int k = 0; k < kVoigtKeysCount; ++k) {
    t.voigt_[kVoigtSlots[k][0]][kVoigtSlots[k][1]] = c[k];
    t.voigt_[kVoigtSlots[k][1]][kVoigtSlots[k][0]] = c[k];
  }
  t.symmetry_ = Symmetry::kOrthotropic;
  return t;
}

StiffnessTensor StiffnessTensor::orthotropic(Rational c11, Rational c22, Rational c33,
                                             Rational c12, Rational c13, Rational c23,
                                             Rational c44, Rational c55,
                                             Rational c66) {
  return orthotropic(std::array<Rational, 9>{std::move(c11), std::move(c22),
                                             std::move(c33), std::move(c12),
                                             std::move(c13), std::move(c23),
                                             std::move(c44), std::move(c55),
                                             std::move(c66)});
}

StiffnessTensor StiffnessTensor::isotropic(const Rational& lambda, const Rational& mu) {
  const Rational diag = lambda + 2 * mu;
  return orthotropic(diag, diag, diag, lambda, lambda, lambda, mu, mu, mu);
}

StiffnessTensor StiffnessTensor::from_voigt(RatMatrix m) {
  require_symmetric(m, 6, "stiffness");
  StiffnessTensor t;
  t.voigt_ = std::move(m);
  t.symmetry_ = matches_orthotropic_pattern(t.voigt_) ? Symmetry::kOrthotropic
                                                      : Symmetry::kGeneral;
  return t;
}

nlohmann::json StiffnessTensor::to_json() const {
  if (symmetry_ == Symmetry::kOrthotropic) {
    nlohmann::json j{{"symmetry", "orthotropic"}};
    for (int k = 0; k < kVoigtKeysCount; ++k)
      j[kVoigtKeys[k]] = rat_to_string(voigt_[kVoigtSlots[k][0]][kVoigtSlots[k][1]]);
    return j;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 6; ++j) row.push_back(rat_to_string(voigt_[i][j]));
    rows.push_back(row);
  }
  return {{"symmetry", "general"}, {"voigt", rows}};
}

StiffnessTensor StiffnessTensor::from_json(const nlohmann::json& j) {
  const std::string sym = j.at("symmetry").get<std::string>();
  if (sym == "orthotropic") {
    std::array<Rational, 9> c;
    for (int k = 0; k < kVoigtKeysCount; ++k) {
      if (!j.contains(kVoigtKeys[k]))
        throw std::invalid_argument(std::string("missing stiffness constant ") +
                                    kVoigtKeys[k]);
      c[k] = rat_from_string(j.at(kVoigtKeys[k]).get<std::string>());
    }
    return orthotropic(c);
  }
  if (sym == "general") {
    const auto& rows = j.at("voigt");
    RatMatrix m(6, std::vector<Rational>(6));
    if (rows.size() != 6) throw std::invalid_argument("voigt matrix must be 6x6");
    for (int i = 0; i < 6; ++i) {
      if (rows[i].size() != 6) throw std::invalid_argument("voigt matrix must be 6x6");
      for (int jj = 0; jj < 6; ++jj)
        m[i][jj] = rat_from_string(rows[i][jj].get<std::string>());
    }
    return from_voigt(std::move(m));
  }
  throw std::invalid_argument("unknown symmetry '" + sym + "'");
}

QuadraticForm::QuadraticForm()
    : gram_(RatMatrix(9, std::vector<Rational>(9, Rational(0)))) {}

QuadraticForm QuadraticForm::from_gram(RatMatrix g) {
  require_symmetric(g, 9, "gram");
  return QuadraticForm(std::move(g));
}

QuadraticForm QuadraticForm::from_stiffness(const StiffnessTensor& c) {
  const RatMatrix e = strain_map();
  return QuadraticForm(rat_mul(rat_mul(transpose(e), c.voigt()), e));
}

QuadraticForm QuadraticForm::rank_one(const RatMatrix& b) {
  if (b.size() != 3 || b[0].size() != 3 || b[1].size() != 3 || b[2].size() != 3)
    throw std::invalid_argument("rank-one direction must be 3x3");
  std::array<Rational, 9> v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[3 * i + j] = b[i][j];
  RatMatrix g(9, std::vector<Rational>(9));
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) g[i][j] = v[i] * v[j];
  return QuadraticForm(std::move(g));
}

Rational QuadraticForm::eval_exact(const RatMatrix& xi) const {
  if (xi.size() != 3) throw std::invalid_argument("argument must be 3x3");
  std::array<Rational, 9> v;
  for (int i = 0; i < 3; ++i) {
    if (xi[i].size() != 3) throw std::invalid_argument("argument must be 3x3");
    for (int j = 0; j < 3; ++j) v[3 * i + j] = xi[i][j];
  }
  Rational s(0);
  for (int i = 0; i < 9; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < 9; ++j) s += gram_[i][j] * v[i] * v[j];
  }
  return s;
}

double QuadraticForm::eval(const std::array<double, 9>& xi) const {
  double s = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) s += rat_to_double(gram_[i][j]) * xi[i] * xi[j];
  return s;
}

bool QuadraticForm::vanishes_on_antisymmetric() const {
  // Antisymmetric basis vectors in vec coordinates.
  const int pairs[3][2] = {{1, 3}, {2, 6}, {5, 7}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Rational s(0);
      s += gram_[pairs[a][0]][pairs[b][0]];
      s -= gram_[pairs[a][0]][pairs[b][1]];
      s -= gram_[pairs[a][1]][pairs[b][0]];
      s += gram_[pairs[a][1]][pairs[b][1]];
      if (s != 0) return false;
    }
  return true;
}

nlohmann::json QuadraticForm::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 9; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 9; ++j) row.push_back(rat_to_string(gram_[i][j]));
    rows.push_back(row);
  }
  return {{"gram", rows}};
}

QuadraticForm QuadraticForm::from_json(const nlohmann::json& j) {
  const auto& rows = j.at("gram");
  if (rows.size() != 9) throw std::invalid_argument("gram must be 9x9");
  RatMatrix g(9, std::vector<Rational>(9));
  for (int i = 0; i < 9; ++i) {
    if (rows[i].size() != 9) throw std::invalid_argument("gram must be 9x9");
    for (int jj = 0; jj < 9; ++jj)
      g[i][jj] = rat_from_string(rows[i][jj].get<std::string>());
  }
  return from_gram(std::move(g));
}

QuadraticForm add(const QuadraticForm& f, const QuadraticForm& g) {
  RatMatrix s = f.gram();
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) s[i][j] += g.gram()[i][j];
  return QuadraticForm::from_gram(std::move(s));
}

QuadraticForm sub(const QuadraticForm& f, const QuadraticForm& g) {
  RatMatrix s = f.gram();
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) s[i][j] -= g.gram()[i][j];
  return QuadraticForm::from_gram(std::move(s));
}

QuadraticForm scale(const QuadraticForm& f, const Rational& c) {
  RatMatrix s = f.gram();
  for (auto& row : s)
    for (auto& v : row) v *= c;
  return QuadraticForm::from_gram(std::move(s));
}

RankOneForm RankOneForm::outer(int i, int j) {
  RatMatrix b(3, std::vector<Rational>(3, Rational(0)));
  b[i][j] = 1;
  return {std::move(b)};
}

std::array<HomoPoly, 3> RankOneForm::l() const {
  std::array<HomoPoly, 3> out{HomoPoly(3, 1), HomoPoly(3, 1), HomoPoly(3, 1)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Exponents e(3, 0);
      e[j] = 1;
      out[i].add_term(e, B[i][j]);
    }
  return out;
}

AcousticMatrix acoustic_matrix(const QuadraticForm& f) {
  AcousticMatrix t;
  for (auto& entry : t.m) entry = HomoPoly(3, 2);
  const RatMatrix& g = f.gram();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          const Rational& c = g[3 * i + j][3 * k + l];
          if (c != 0) t.at(i, k) = add(t.at(i, k), quadratic_monomial(j, l, c));
        }
  return t;
}

AcousticMatrix acoustic_matrix(const StiffnessTensor& c) {
  return acoustic_matrix(QuadraticForm::from_stiffness(c));
}

HomoPoly det(const PolyMat3& t) {
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return sub(mul(t.at(r0, c0), t.at(r1, c1)), mul(t.at(r0, c1), t.at(r1, c0)));
  };
  HomoPoly d = mul(t.at(0, 0), minor2(1, 2, 1, 2));
  d = sub(d, mul(t.at(0, 1), minor2(1, 2, 0, 2)));
  d = add(d, mul(t.at(0, 2), minor2(1, 2, 0, 1)));
  return d;
}

PolyMat3 cofactor(const PolyMat3& t) {
  PolyMat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // Rows/columns taken cyclically, which builds the sign in directly.
      c.at(i, j) = sub(mul(t.at(r0, c0), t.at(r1, c1)), mul(t.at(r0, c1), t.at(r1, c0)));
    }
  return c;
}

HomoPoly acoustic_det(const QuadraticForm& f) { return det(acoustic_matrix(f)); }
HomoPoly acoustic_det(const StiffnessTensor& c) { return det(acoustic_matrix(c)); }
PolyMat3 acoustic_cofactor(const QuadraticForm& f) {
  return cofactor(acoustic_matrix(f));
}
PolyMat3 acoustic_cofactor(const StiffnessTensor& c) {
  return cofactor(acoustic_matrix(c));
}

double biquadratic(const QuadraticForm& f, const Vec3& x, const Vec3& y) {
  std::array<double, 9> xi;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) xi[3 * i + j] = x[i] * y[j];
  return f.eval(xi);
}

double biquadratic(const StiffnessTensor& c, const Vec3& x, const Vec3& y) {
  return biquadratic(QuadraticForm::from_stiffness(c), x, y);
}

Rational biquadratic_exact(const QuadraticForm& f, const std::vector<Rational>& x,
                           const std::vector<Rational>& y) {
  if (x.size() != 3 || y.size() != 3)
    throw std::invalid_argument("biquadratic arguments must have length 3");
  RatMatrix xi(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) xi[i][j] = x[i] * y[j];
  return f.eval_exact(xi);
}

CompiledAcoustic::CompiledAcoustic(const AcousticMatrix& t) {
  const Exponents monos[6] = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2},
                              {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  for (int m = 0; m < 6; ++m)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        mono_[m][i][k] = rat_to_double(t.at(i, k).coeff(monos[m]));
}

Mat3 CompiledAcoustic::operator()(const Vec3& y) const {
  const double vals[6] = {y[0] * y[0], y[1] * y[1], y[2] * y[2],
                          y[0] * y[1], y[0] * y[2], y[1] * y[2]};
  Mat3 t{};
  for (int m = 0; m < 6; ++m) {
    if (vals[m] == 0.0) continue;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) t[i][k] += mono_[m][i][k] * vals[m];
  }
  return t;
}

namespace {

RankOneConvexityReport rank_one_convexity_impl(const AcousticMatrix& tm,
                                               const RankOneConvexityConfig& cfg) {
  const CompiledAcoustic acoustic(tm);
  RankOneConvexityReport rep;
  rep.cfg = cfg;

  std::vector<Vec3> seeds = fibonacci_sphere(std::max(cfg.samples, 16));
  const auto& anchors = structured_directions();
  seeds.insert(seeds.end(), anchors.begin(), anchors.end());
  Rng rng(cfg.seed);
  for (int i = 0; i < 32; ++i) seeds.push_back(rng.unit_vec3());

  const int n = static_cast<int>(seeds.size());
  std::vector<double> vals(n), scales(n);
  parallel_for(n, [&](int i) {
    const Mat3 t = acoustic(seeds[i]);
    double s = 0.0;
    for (const auto& row : t)
      for (double v : row) s = std::max(s, std::fabs(v));
    scales[i] = s;
    vals[i] = eig3_min(t);
  });

  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, scales[i]);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (vals[i] != vals[j]) return vals[i] < vals[j];
    return seeds[i] < seeds[j];
  });

  auto objective = [&](const Vec3& y) { return eig3_min(acoustic(y)); };
  double best_val = vals[order[0]];
  Vec3 best_y = seeds[order[0]];
  const int k = std::min(cfg.refine, n);
  std::vector<SphereMin> refined(k);
  parallel_for(k, [&](int i) {
    refined[i] = minimize_on_sphere(objective, seeds[order[i]]);
  });
  for (const auto& r : refined) {
    if (r.value < best_val || (r.value == best_val && r.y < best_y)) {
      best_val = r.value;
      best_y = r.y;
    }
  }

  rep.min_value = best_val;
  rep.y = best_y;
  const Eig3 eig = eig3_sym(acoustic(best_y));
  rep.x = {eig.v[0][0], eig.v[0][1], eig.v[0][2]};
  rep.scale = scale;
  rep.convex = best_val >= -cfg.tol * scale;
  return rep;
}

}  // namespace

RankOneConvexityReport rank_one_convexity(const QuadraticForm& f,
                                          const RankOneConvexityConfig& cfg) {
  return rank_one_convexity_impl(acoustic_matrix(f), cfg);
}

RankOneConvexityReport rank_one_convexity(const StiffnessTensor& c,
                                          const RankOneConvexityConfig& cfg) {
  return rank_one_convexity_impl(acoustic_matrix(c), cfg);
}

nlohmann::json to_json(const RankOneConvexityReport& r) {
  return {{"convex", r.convex},
          {"min_value", r.min_value},
          {"y", {r.y[0], r.y[1], r.y[2]}},
          {"x", {r.x[0], r.x[1], r.x[2]}},
          {"scale", r.scale},
          {"config",
           {{"samples", r.cfg.samples},
            {"refine", r.cfg.refine},
            {"tol", r.cfg.tol},
            {"seed", r.cfg.seed}}}};
}

bool subtracted_det_identity_check(const QuadraticForm& f, const RankOneForm& b,
                                   const Rational& t) {
  const QuadraticForm ft = sub(f, scale(b.form(), t));
  const HomoPoly lhs = acoustic_det(ft);

  const PolyMat3 cof = acoustic_cofactor(f);
  const auto l = b.l();
  HomoPoly correction(3, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      correction = add(correction, mul(mul(l[i], l[j]), cof.at(i, j)));
  const HomoPoly rhs = sub(acoustic_det(f), scale(correction, t));
  return lhs == rhs;
}

bool subtracted_det_identity_check(const StiffnessTensor& c, const RankOneForm& b,
                                   const Rational& t) {
  return subtracted_det_identity_check(QuadraticForm::from_stiffness(c), b, t);
}

BrunnMinkowskiResult brunn_minkowski_check(const Mat3& a, const Mat3& b) {
  auto det3 = [](const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  auto scale_of = [](const Mat3& m) {
    double s = 0.0;
    for (const auto& row : m)
      for (double v : row) s = std::max(s, std::fabs(v));
    return s;
  };
  if (eig3_min(a) < -1e-12 * std::max(1.0, scale_of(a)) ||
      eig3_min(b) < -1e-12 * std::max(1.0, scale_of(b)))
    throw std::invalid_argument("matrices must be positive semidefinite");
  Mat3 s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = a[i][j] + b[i][j];
  BrunnMinkowskiResult r;
  r.lhs = std::cbrt(std::max(det3(s), 0.0));
  r.rhs = std::cbrt(std::max(det3(a), 0.0)) + std::cbrt(std::max(det3(b), 0.0));
  r.holds = r.lhs >= r.rhs - 1e-10 * (1.0 + std::fabs(r.rhs));
  return r;
}

namespace {

// Adds the square of the linear functional sum_k c_k xi_{idx_k} to the gram.
void add_square(RatMatrix& gram, const std::vector<std::pair<int, Rational>>& lin) {
  for (const auto& [i, ci] : lin)
    for (const auto& [j, cj] : lin) gram[i][j] += ci * cj;
}

std::vector<std::pair<int, Rational>> axial_combo(const Rational& a, const Rational& b,
                                                  const Rational& c) {
  return {{0, a}, {4, b}, {8, c}};
}

HomoPoly mono6(int e1, int e2, int e3, const Rational& c) {
  return HomoPoly::monomial(3, {e1, e2, e3}, c);
}

}  // namespace

SpecialFormFixture axial_rotation_form(const Rational& a, const Rational& b,
                                       const Rational& c) {
  RatMatrix g(9, std::vector<Rational>(9, Rational(0)));
  add_square(g, axial_combo(a, b, c));
  add_square(g, {{1, 1}, {3, -1}});  // xi12 - xi21
  add_square(g, {{2, 1}, {6, -1}});  // xi13 - xi31
  add_square(g, {{5, 1}, {7, -1}});  // xi23 - xi32
  HomoPoly quad(3, 2);
  quad.add_term({2, 0, 0}, a);
  quad.add_term({0, 2, 0}, b);
  quad.add_term({0, 0, 2}, c);
  HomoPoly sumsq(3, 2);
  sumsq.add_term({2, 0, 0}, 1);
  sumsq.add_term({0, 2, 0}, 1);
  sumsq.add_term({0, 0, 2}, 1);
  return {"axial_rotation", QuadraticForm::from_gram(std::move(g)),
          mul(sumsq, poly_pow(quad, 2))};
}

SpecialFormFixture axial_shear_form(const Rational& a, const Rational& b,
                                    const Rational& c) {
  RatMatrix g(9, std::vector<Rational>(9, Rational(0)));
  add_square(g, axial_combo(a, b, c));
  add_square(g, {{1, 1}, {3, 1}});  // xi12 + xi21
  add_square(g, {{2, 1}, {6, 1}});  // xi13 + xi31
  HomoPoly quad(3, 2);
  quad.add_term({2, 0, 0}, a);
  quad.add_term({0, 2, 0}, Rational(-b));
  quad.add_term({0, 0, 2}, Rational(-c));
  return {"axial_shear", QuadraticForm::from_gram(std::move(g)),
          mul(mono6(2, 0, 0, 1), poly_pow(quad, 2))};
}

SpecialFormFixture axial_pair_form(const Rational& a, const Rational& b,
                                   const Rational& c, const Rational& d) {
  RatMatrix g(9, std::vector<Rational>(9, Rational(0)));
  add_square(g, axial_combo(a, b, c));
  g[1][1] += 1;
  g[3][3] += 1;
  g[1][3] += d;
  g[3][1] += d;
  return {"axial_pair", QuadraticForm::from_gram(std::move(g)),
          mono6(2, 2, 2, c * c * (1 - d * d))};
}

SpecialFormFixture shear_coupling_form(const std::array<Rational, 3>& a,
                                       const std::array<Rational, 3>& b) {
  RatMatrix g(9, std::vector<Rational>(9, Rational(0)));
  g[1][1] = a[0];
  g[3][3] = a[0];
  g[2][2] = a[1];
  g[6][6] = a[1];
  g[5][5] = a[2];
  g[7][7] = a[2];
  g[0][4] = g[4][0] = b[0];
  g[0][8] = g[8][0] = b[1];
  g[4][8] = g[8][4] = b[2];
  HomoPoly d(3, 6);
  d = add(d, mono6(4, 2, 0, (a[0] * a[0] - b[0] * b[0]) * a[1]));
  d = add(d, mono6(2, 4, 0, (a[0] * a[0] - b[0] * b[0]) * a[2]));
  d = add(d, mono6(4, 0, 2, (a[1] * a[1] - b[1] * b[1]) * a[0]));
  d = add(d, mono6(2, 0, 4, (a[1] * a[1] - b[1] * b[1]) * a[2]));
  d = add(d, mono6(0, 4, 2, (a[2] * a[2] - b[2] * b[2]) * a[0]));
  d = add(d, mono6(0, 2, 4, (a[2] * a[2] - b[2] * b[2]) * a[1]));
  d = add(d, mono6(2, 2, 2, 2 * (a[0] * a[1] * a[2] + b[0] * b[1] * b[2])));
  return {"shear_coupling", QuadraticForm::from_gram(std::move(g)), d};
}

SpecialFormFixture diagonal_coupling_form(const RatMatrix& a) {
  require_symmetric(a, 3, "diagonal coupling matrix");
  RatMatrix g(9, std::vector<Rational>(9, Rational(0)));
  const int diag[3] = {0, 4, 8};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[diag[i]][diag[j]] = a[i][j];
  return {"diagonal_coupling", QuadraticForm::from_gram(std::move(g)),
          mono6(2, 2, 2, rat_det(a))};
}

std::vector<SpecialFormFixture> special_form_fixtures() {
  std::vector<SpecialFormFixture> out;
  out.push_back(axial_rotation_form(1, 2, 3));
  out.push_back(axial_shear_form(1, 2, 3));
  out.push_back(axial_pair_form(1, 2, 3, Rational(1, 2)));
  out.push_back(shear_coupling_form({1, 2, 3}, {Rational(1, 2), Rational(1, 3),
                                                Rational(1, 4)}));
  auto degenerate = shear_coupling_form({1, 1, 1}, {-1, 1, 1});
  degenerate.name = "shear_coupling_degenerate";
  out.push_back(std::move(degenerate));
  RatMatrix a{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}};
  out.push_back(diagonal_coupling_form(a));
  return out;
}

}  // namespace elastica
