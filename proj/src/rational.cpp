#include "elastica/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace elastica {

std::string rat_to_string(const Rational& r) { return r.get_str(); }

Rational rat_from_string(const std::string& s) {
  // Accept "a", "a/b", and plain decimal literals like "-1.25".
  auto bad = [&]() {
    throw std::invalid_argument("not a rational: '" + s + "'");
  };
  if (s.empty()) bad();
  const auto dot = s.find('.');
  try {
    if (dot == std::string::npos) {
      Rational r;
      if (r.set_str(s, 10) != 0) bad();
      if (r.get_den() == 0) bad();  // "1/0" parses but cannot canonicalize
      r.canonicalize();
      return r;
    }
    const std::string head = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
      bad();
    const bool neg = !head.empty() && head[0] == '-';
    std::string digits = neg ? head.substr(1) : head;
    if (!digits.empty() && digits[0] == '+') digits = digits.substr(1);
    if (digits.empty()) digits = "0";
    Integer num(digits + frac);
    Integer den(1);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    bad();
  }
  return Rational(0);  // unreachable
}

double rat_to_double(const Rational& r) { return r.get_d(); }

std::optional<Rational> rat_exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer num = r.get_num();
  Integer den = r.get_den();
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

Rational rat_round(double x, unsigned long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot round non-finite value");
  // Continued-fraction convergents with denominator cap.
  const bool neg = x < 0;
  double v = neg ? -x : x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    const double fa = std::floor(frac);
    if (fa > 9e17) break;
    const long long a = static_cast<long long>(fa);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 < 0 || static_cast<unsigned long long>(q2) > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - fa;
    if (rem < 1e-15 * (1.0 + std::fabs(v))) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) throw std::invalid_argument("rounding failed");
  Rational r(static_cast<long>(p1), static_cast<long>(q1));
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

RatMatrix rat_identity(int n) {
  RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Rational rat_det(RatMatrix m) {
  const int n = static_cast<int>(m.size());
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv = Rational(1) / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] * inv;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::optional<RatMatrix> rat_inverse(RatMatrix m) {
  const int n = static_cast<int>(m.size());
  RatMatrix inv = rat_identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational d = Rational(1) / m[col][col];
    for (int c = 0; c < n; ++c) {
      m[col][c] *= d;
      inv[col][c] *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int c = 0; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int mcols = k > 0 ? static_cast<int>(b[0].size()) : 0;
  RatMatrix out(n, std::vector<Rational>(mcols, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (int c = 0; c < mcols; ++c) out[i][c] += a[i][j] * b[j][c];
    }
  return out;
}

}  // namespace elastica
