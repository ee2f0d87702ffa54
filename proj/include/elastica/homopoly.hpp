#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastica/rational.hpp"

namespace elastica {

using Exponents = std::vector<int>;

// Graded lexicographic order, descending: higher total degree first, ties by
// lexicographic comparison of the exponent vectors. Map iteration therefore
// starts at the leading term, which both the canonical serialization and the
// exact square-root extraction rely on.
struct GrlexDesc {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse homogeneous polynomial with exact rational coefficients.
// Canonical form: no zero coefficients are stored; every exponent vector sums
// to exactly degree(). The zero polynomial keeps its degree attribute so the
// degree contract of add() stays checkable.
class HomoPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexDesc>;

  HomoPoly() : nvars_(3), degree_(0) {}
  HomoPoly(int nvars, int degree);

  static HomoPoly monomial(int nvars, const Exponents& e, const Rational& c);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Rational coeff(const Exponents& e) const;
  // Adds c to the coefficient at e; erases the entry when it cancels to zero.
  void add_term(const Exponents& e, const Rational& c);

  bool operator==(const HomoPoly& o) const;
  bool operator!=(const HomoPoly& o) const { return !(*this == o); }

 private:
  int nvars_;
  int degree_;
  TermMap terms_;
};

HomoPoly add(const HomoPoly& p, const HomoPoly& q);   // throws on shape mismatch
HomoPoly sub(const HomoPoly& p, const HomoPoly& q);
HomoPoly mul(const HomoPoly& p, const HomoPoly& q);   // throws on nvars mismatch
HomoPoly scale(const HomoPoly& p, const Rational& c);
HomoPoly poly_pow(const HomoPoly& p, int k);

double eval(const HomoPoly& p, const std::vector<double>& y);
double eval(const HomoPoly& p, const std::array<double, 3>& y);
Rational eval_exact(const HomoPoly& p, const std::vector<Rational>& y);

HomoPoly derivative(const HomoPoly& p, int var);

// x = A y substitution target: returns y -> p(A y).
struct LinearSubstitution {
  RatMatrix A;

  static LinearSubstitution identity(int n);
  // perm[i] = j means variable x_i is replaced by y_j.
  static LinearSubstitution permutation(const std::vector<int>& perm);
  static LinearSubstitution diagonal(const std::vector<Rational>& d);
  static LinearSubstitution from_matrix(RatMatrix a);

  int nvars() const { return static_cast<int>(A.size()); }
  bool nonsingular() const;
  std::optional<LinearSubstitution> inverse() const;
  LinearSubstitution compose(const LinearSubstitution& inner) const;  // this * inner
};

HomoPoly substitute(const HomoPoly& p, const LinearSubstitution& s);

bool is_even_in_each_variable(const HomoPoly& p);
// Average of p over all sign flips of the variables; keeps exactly the terms
// whose exponents are even in each variable.
HomoPoly even_symmetrize(const HomoPoly& p);

// Text form, canonical: terms in descending grlex order, "3*y1^2*y2^4" style,
// rational coefficients printed as p/q. parse(to_text(p)) == p exactly.
std::string to_text(const HomoPoly& p);
HomoPoly poly_from_text(const std::string& text, int nvars = 3);

nlohmann::json poly_to_json(const HomoPoly& p);
HomoPoly poly_from_json(const nlohmann::json& j);

// Flattened double-precision view for inner numeric loops.
struct CompiledPoly {
  struct Term {
    double c;
    std::array<int, 3> e;
  };
  std::vector<Term> terms;
  int degree = 0;

  double operator()(const std::array<double, 3>& y) const;
  std::array<double, 3> gradient(const std::array<double, 3>& y) const;
};

CompiledPoly compile(const HomoPoly& p);  // requires nvars == 3

}  // namespace elastica
