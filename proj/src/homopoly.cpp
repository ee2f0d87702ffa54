#include "elastica/homopoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace elastica {

namespace {

int exp_sum(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void check_exponents(const Exponents& e, int nvars, int degree) {
  if (static_cast<int>(e.size()) != nvars)
    throw std::invalid_argument("exponent vector length does not match nvars");
  for (int v : e)
    if (v < 0) throw std::invalid_argument("negative exponent");
  if (exp_sum(e) != degree)
    throw std::invalid_argument("term degree does not match polynomial degree");
}

double ipow(double x, int k) {
  double r = 1.0;
  while (k-- > 0) r *= x;
  return r;
}

}  // namespace

bool GrlexDesc::operator()(const Exponents& a, const Exponents& b) const {
  const int da = exp_sum(a);
  const int db = exp_sum(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

HomoPoly::HomoPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1) throw std::invalid_argument("nvars must be >= 1");
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
}

HomoPoly HomoPoly::monomial(int nvars, const Exponents& e, const Rational& c) {
  HomoPoly p(nvars, exp_sum(e));
  p.add_term(e, c);
  return p;
}

Rational HomoPoly::coeff(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomoPoly::add_term(const Exponents& e, const Rational& c) {
  check_exponents(e, nvars_, degree_);
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool HomoPoly::operator==(const HomoPoly& o) const {
  return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
}

HomoPoly add(const HomoPoly& p, const HomoPoly& q) {
  if (p.nvars() != q.nvars() || p.degree() != q.degree())
    throw std::invalid_argument("cannot add polynomials of different shape");
  HomoPoly r = p;
  for (const auto& [e, c] : q.terms()) r.add_term(e, c);
  return r;
}

HomoPoly sub(const HomoPoly& p, const HomoPoly& q) {
  if (p.nvars() != q.nvars() || p.degree() != q.degree())
    throw std::invalid_argument("cannot subtract polynomials of different shape");
  HomoPoly r = p;
  for (const auto& [e, c] : q.terms()) r.add_term(e, Rational(-c));
  return r;
}

HomoPoly mul(const HomoPoly& p, const HomoPoly& q) {
  if (p.nvars() != q.nvars())
    throw std::invalid_argument("cannot multiply polynomials with different nvars");
  HomoPoly r(p.nvars(), p.degree() + q.degree());
  for (const auto& [ea, ca] : p.terms())
    for (const auto& [eb, cb] : q.terms()) {
      Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

HomoPoly scale(const HomoPoly& p, const Rational& c) {
  HomoPoly r(p.nvars(), p.degree());
  if (c == 0) return r;
  for (const auto& [e, a] : p.terms()) r.add_term(e, a * c);
  return r;
}

HomoPoly poly_pow(const HomoPoly& p, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  HomoPoly r = HomoPoly::monomial(p.nvars(), Exponents(p.nvars(), 0), 1);
  for (int i = 0; i < k; ++i) r = mul(r, p);
  return r;
}

double eval(const HomoPoly& p, const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != p.nvars())
    throw std::invalid_argument("evaluation point has wrong dimension");
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double t = rat_to_double(c);
    for (size_t i = 0; i < e.size(); ++i) t *= ipow(y[i], e[i]);
    s += t;
  }
  return s;
}

double eval(const HomoPoly& p, const std::array<double, 3>& y) {
  return eval(p, std::vector<double>(y.begin(), y.end()));
}

Rational eval_exact(const HomoPoly& p, const std::vector<Rational>& y) {
  if (static_cast<int>(y.size()) != p.nvars())
    throw std::invalid_argument("evaluation point has wrong dimension");
  Rational s(0);
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= y[i];
    s += t;
  }
  return s;
}

HomoPoly derivative(const HomoPoly& p, int var) {
  if (var < 0 || var >= p.nvars()) throw std::invalid_argument("variable out of range");
  HomoPoly r(p.nvars(), p.degree() > 0 ? p.degree() - 1 : 0);
  if (p.degree() == 0) return r;
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

LinearSubstitution LinearSubstitution::identity(int n) { return {rat_identity(n)}; }

LinearSubstitution LinearSubstitution::permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  RatMatrix a(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n || seen[perm[i]])
      throw std::invalid_argument("not a permutation");
    seen[perm[i]] = true;
    a[i][perm[i]] = 1;
  }
  return {std::move(a)};
}

LinearSubstitution LinearSubstitution::diagonal(const std::vector<Rational>& d) {
  const int n = static_cast<int>(d.size());
  RatMatrix a(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) a[i][i] = d[i];
  return {std::move(a)};
}

LinearSubstitution LinearSubstitution::from_matrix(RatMatrix a) {
  const size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("substitution matrix not square");
  return {std::move(a)};
}

bool LinearSubstitution::nonsingular() const { return rat_det(A) != 0; }

std::optional<LinearSubstitution> LinearSubstitution::inverse() const {
  auto inv = rat_inverse(A);
  if (!inv) return std::nullopt;
  return LinearSubstitution{std::move(*inv)};
}

LinearSubstitution LinearSubstitution::compose(const LinearSubstitution& inner) const {
  if (nvars() != inner.nvars())
    throw std::invalid_argument("substitution dimension mismatch");
  return {rat_mul(A, inner.A)};
}

HomoPoly substitute(const HomoPoly& p, const LinearSubstitution& s) {
  const int n = p.nvars();
  if (s.nvars() != n) throw std::invalid_argument("substitution dimension mismatch");
  // Memoize powers of each substituted variable up to the max exponent used.
  std::vector<int> max_exp(n, 0);
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < n; ++i) max_exp[i] = std::max(max_exp[i], e[i]);
  std::vector<std::vector<HomoPoly>> powers(n);
  for (int i = 0; i < n; ++i) {
    HomoPoly lin(n, 1);
    for (int j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      lin.add_term(e, s.A[i][j]);
    }
    powers[i].push_back(HomoPoly::monomial(n, Exponents(n, 0), 1));
    for (int k = 1; k <= max_exp[i]; ++k)
      powers[i].push_back(mul(powers[i].back(), lin));
  }
  HomoPoly out(n, p.degree());
  for (const auto& [e, c] : p.terms()) {
    HomoPoly term = HomoPoly::monomial(n, Exponents(n, 0), c);
    for (int i = 0; i < n; ++i)
      if (e[i] > 0) term = mul(term, powers[i][e[i]]);
    out = add(out, term);
  }
  return out;
}

bool is_even_in_each_variable(const HomoPoly& p) {
  for (const auto& [e, c] : p.terms())
    for (int v : e)
      if (v % 2 != 0) return false;
  return true;
}

HomoPoly even_symmetrize(const HomoPoly& p) {
  HomoPoly r(p.nvars(), p.degree());
  for (const auto& [e, c] : p.terms()) {
    bool even = true;
    for (int v : e)
      if (v % 2 != 0) {
        even = false;
        break;
      }
    if (even) r.add_term(e, c);
  }
  return r;
}

std::string to_text(const HomoPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    const bool constant = exp_sum(e) == 0;
    std::string vars;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += "y" + std::to_string(i + 1);
      if (e[i] > 1) vars += "^" + std::to_string(e[i]);
    }
    if (constant || mag != 1) {
      os << rat_to_string(mag);
      if (!constant) os << "*";
    }
    os << vars;
  }
  return os.str();
}

namespace {

// Recursive-descent parser over a generic (possibly inhomogeneous) sparse
// polynomial; homogeneity is enforced once at the end so that error messages
// can point at the offending input rather than at intermediate sums.
class PolyParser {
 public:
  using Sparse = std::map<Exponents, Rational>;

  PolyParser(const std::string& text, int nvars) : text_(text), nvars_(nvars) {}

  Sparse parse() {
    Sparse result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static Sparse s_add(const Sparse& a, const Sparse& b, int sign) {
    Sparse r = a;
    for (const auto& [e, c] : b) {
      r[e] += sign * c;
      if (r[e] == 0) r.erase(e);
    }
    return r;
  }

  Sparse s_mul(const Sparse& a, const Sparse& b) const {
    Sparse r;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        Exponents e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
        r[e] += ca * cb;
        if (r[e] == 0) r.erase(e);
      }
    return r;
  }

  Sparse constant(const Rational& c) const {
    Sparse r;
    if (c != 0) r[Exponents(nvars_, 0)] = c;
    return r;
  }

  Sparse expr() {
    int sign = 1;
    if (eat('+')) {
    } else if (eat('-')) {
      sign = -1;
    }
    Sparse acc = s_add(Sparse{}, term(), sign);
    for (;;) {
      if (eat('+'))
        acc = s_add(acc, term(), 1);
      else if (eat('-'))
        acc = s_add(acc, term(), -1);
      else
        return acc;
    }
  }

  Sparse term() {
    Sparse acc = factor();
    while (eat('*')) acc = s_mul(acc, factor());
    return acc;
  }

  Sparse factor() {
    Sparse base = primary();
    if (eat('^')) {
      const int k = integer();
      Sparse acc = constant(Rational(1));
      for (int i = 0; i < k; ++i) acc = s_mul(acc, base);
      return acc;
    }
    return base;
  }

  Sparse primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Sparse inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'y' || c == 'x') {
      ++pos_;
      const int idx = integer();
      if (idx < 1 || idx > nvars_)
        fail("variable index out of range 1.." + std::to_string(nvars_));
      Exponents e(nvars_, 0);
      e[idx - 1] = 1;
      Sparse r;
      r[e] = 1;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    fail("expected a number, a variable, or '('");
  }

  int integer() {
    skip_ws();
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  Sparse number() {
    skip_ws();
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ == start) fail("expected a number");
    std::string lit = text_.substr(start, pos_ - start);
    // "p/q" only when the next token is a digit (so y1/2 stays an error).
    if (peek() == '/') {
      const size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const size_t dstart = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
        lit += "/" + text_.substr(dstart, pos_ - dstart);
      } else {
        pos_ = save;
      }
    }
    try {
      return constant(rat_from_string(lit));
    } catch (const std::invalid_argument&) {
      pos_ = start;
      fail("malformed numeric literal '" + lit + "'");
    }
  }

  const std::string& text_;
  int nvars_;
  size_t pos_ = 0;
};

}  // namespace

HomoPoly poly_from_text(const std::string& text, int nvars) {
  PolyParser parser(text, nvars);
  const auto sparse = parser.parse();
  if (sparse.empty()) return HomoPoly(nvars, 0);
  int degree = -1;
  for (const auto& [e, c] : sparse) {
    const int d = exp_sum(e);
    if (degree < 0)
      degree = d;
    else if (d != degree)
      throw std::invalid_argument(
          "polynomial is not homogeneous: found terms of degree " +
          std::to_string(degree) + " and " + std::to_string(d));
  }
  HomoPoly p(nvars, degree);
  for (const auto& [e, c] : sparse) p.add_term(e, c);
  return p;
}

nlohmann::json poly_to_json(const HomoPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", e}, {"coef", rat_to_string(c)}});
  return {{"nvars", p.nvars()}, {"degree", p.degree()}, {"terms", terms}};
}

HomoPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("degree") ||
      !j.contains("terms"))
    throw std::invalid_argument("polynomial JSON needs nvars, degree, terms");
  const int nvars = j.at("nvars").get<int>();
  const int degree = j.at("degree").get<int>();
  HomoPoly p(nvars, degree);
  for (const auto& t : j.at("terms")) {
    const auto e = t.at("exp").get<Exponents>();
    p.add_term(e, rat_from_string(t.at("coef").get<std::string>()));
  }
  return p;
}

double CompiledPoly::operator()(const std::array<double, 3>& y) const {
  double s = 0.0;
  for (const auto& t : terms)
    s += t.c * ipow(y[0], t.e[0]) * ipow(y[1], t.e[1]) * ipow(y[2], t.e[2]);
  return s;
}

std::array<double, 3> CompiledPoly::gradient(const std::array<double, 3>& y) const {
  std::array<double, 3> g{0.0, 0.0, 0.0};
  for (const auto& t : terms)
    for (int v = 0; v < 3; ++v) {
      if (t.e[v] == 0) continue;
      double m = t.c * t.e[v];
      for (int i = 0; i < 3; ++i) m *= ipow(y[i], i == v ? t.e[i] - 1 : t.e[i]);
      g[v] += m;
    }
  return g;
}

CompiledPoly compile(const HomoPoly& p) {
  if (p.nvars() != 3)
    throw std::invalid_argument("compiled evaluation supports nvars == 3 only");
  CompiledPoly cp;
  cp.degree = p.degree();
  for (const auto& [e, c] : p.terms())
    cp.terms.push_back({rat_to_double(c), {e[0], e[1], e[2]}});
  return cp;
}

}  // namespace elastica
