#include "elastica/perfect_square.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "elastica/sampling.hpp"

namespace elastica {

namespace {

// Monic square root over Q: returns u with p == lc(p) * u^2, u monic, or
// nullopt when no such u exists. Complete: if p = q^2 for any real q, the
// coefficients of u = q / lt-coefficient are forced by a rational recursion.
std::optional<HomoPoly> monic_sqrt(const HomoPoly& p) {
  const auto& lead = *p.terms().begin();
  const Exponents& le = lead.first;
  for (int v : le)
    if (v % 2 != 0) return std::nullopt;
  const HomoPoly pm = scale(p, Rational(1) / lead.second);
  Exponents ue(le.size());
  for (size_t i = 0; i < le.size(); ++i) ue[i] = le[i] / 2;
  HomoPoly u = HomoPoly::monomial(p.nvars(), ue, 1);
  HomoPoly r = sub(pm, mul(u, u));
  Exponents last = ue;
  const GrlexDesc above;
  int guard = 0;
  while (!r.is_zero()) {
    if (++guard > 2000) return std::nullopt;
    const auto& rl = *r.terms().begin();
    Exponents te(le.size());
    for (size_t i = 0; i < le.size(); ++i) {
      te[i] = rl.first[i] - ue[i];
      if (te[i] < 0) return std::nullopt;
    }
    if (!above(last, te)) return std::nullopt;  // must shrink strictly
    u.add_term(te, rl.second / 2);
    r = sub(pm, mul(u, u));
    last = te;
  }
  return u;
}

// --- numeric corroboration (3 variables) ---------------------------------

std::vector<Exponents> monomials_of_degree(int deg) {
  std::vector<Exponents> out;
  for (int a = deg; a >= 0; --a)
    for (int b = deg - a; b >= 0; --b) out.push_back({a, b, deg - a - b});
  std::sort(out.begin(), out.end(), GrlexDesc{});
  return out;
}

bool gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

struct SquareProblem {
  std::vector<Exponents> half;  // monomials of degree d/2
  std::vector<Exponents> full;  // monomials of degree d
  std::map<Exponents, int> full_index;
  std::vector<double> pvec;     // coefficients of p over `full`
  double pnorm = 1.0;

  // coefficients of q^2 over `full`
  std::vector<double> square(const std::vector<double>& q) const {
    std::vector<double> s(full.size(), 0.0);
    for (size_t i = 0; i < half.size(); ++i)
      for (size_t j = 0; j < half.size(); ++j) {
        Exponents e(3);
        for (int v = 0; v < 3; ++v) e[v] = half[i][v] + half[j][v];
        s[full_index.at(e)] += q[i] * q[j];
      }
    return s;
  }

  double residual_norm(const std::vector<double>& q) const {
    const auto s = square(q);
    double r2 = 0.0;
    for (size_t k = 0; k < s.size(); ++k) {
      const double d = s[k] - pvec[k];
      r2 += d * d;
    }
    return std::sqrt(r2);
  }
};

// One Levenberg-Marquardt descent on ||q^2 - p||^2 in coefficient space.
double lm_descend(const SquareProblem& prob, std::vector<double> q) {
  const int kq = static_cast<int>(prob.half.size());
  const int kf = static_cast<int>(prob.full.size());
  double lambda = 1e-3;
  double fnorm = prob.residual_norm(q);
  for (int it = 0; it < 200 && fnorm > 1e-14 * prob.pnorm; ++it) {
    // Jacobian of F(q) = coeffs(q^2) - pvec: dF_k/dq_j = 2 sum_i q_i [e_i+e_j=k]
    std::vector<std::vector<double>> jac(kf, std::vector<double>(kq, 0.0));
    for (int j = 0; j < kq; ++j)
      for (int i = 0; i < kq; ++i) {
        Exponents e(3);
        for (int v = 0; v < 3; ++v) e[v] = prob.half[i][v] + prob.half[j][v];
        jac[prob.full_index.at(e)][j] += 2.0 * q[i];
      }
    const auto sq = prob.square(q);
    std::vector<double> f(kf);
    for (int k = 0; k < kf; ++k) f[k] = sq[k] - prob.pvec[k];
    // Normal equations with damping.
    std::vector<std::vector<double>> a(kq, std::vector<double>(kq, 0.0));
    std::vector<double> g(kq, 0.0);
    for (int k = 0; k < kf; ++k)
      for (int r = 0; r < kq; ++r) {
        g[r] += jac[k][r] * f[k];
        for (int c = r; c < kq; ++c) a[r][c] += jac[k][r] * jac[k][c];
      }
    for (int r = 0; r < kq; ++r)
      for (int c = 0; c < r; ++c) a[r][c] = a[c][r];
    bool accepted = false;
    for (int tries = 0; tries < 12; ++tries) {
      auto ad = a;
      for (int r = 0; r < kq; ++r) ad[r][r] += lambda * (1.0 + a[r][r]);
      std::vector<double> ng(kq);
      for (int r = 0; r < kq; ++r) ng[r] = -g[r];
      std::vector<double> step;
      if (gauss_solve(ad, ng, step)) {
        std::vector<double> qn(kq);
        for (int r = 0; r < kq; ++r) qn[r] = q[r] + step[r];
        const double fn = prob.residual_norm(qn);
        if (fn < fnorm) {
          q = qn;
          fnorm = fn;
          lambda = std::max(lambda * 0.3, 1e-12);
          accepted = true;
          break;
        }
      }
      lambda *= 8.0;
    }
    if (!accepted) break;
  }
  return fnorm;
}

// Least-squares fit of q to sign-traced sqrt(p) values along the spiral path.
std::vector<double> sign_trace_seed(const SquareProblem& prob,
                                    const CompiledPoly& p) {
  const auto pts = fibonacci_sphere(600);
  std::vector<double> g(pts.size());
  double gmax = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    g[i] = std::sqrt(std::max(p(pts[i]), 0.0));
    gmax = std::max(gmax, g[i]);
  }
  const double thresh = 0.04 * std::max(gmax, 1e-300);
  // The spiral is a continuous path; a square root changes sign only through
  // zeros of p, so flip the running sign each time the path leaves a
  // near-zero stretch.
  std::vector<double> target(pts.size());
  double s = 1.0;
  bool in_zero = false;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (g[i] < thresh) {
      in_zero = true;
    } else {
      if (in_zero) s = -s;
      in_zero = false;
    }
    target[i] = s * g[i];
  }
  const int kq = static_cast<int>(prob.half.size());
  std::vector<std::vector<double>> ata(kq, std::vector<double>(kq, 0.0));
  std::vector<double> atb(kq, 0.0);
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> row(kq);
    for (int j = 0; j < kq; ++j) {
      double m = 1.0;
      for (int v = 0; v < 3; ++v)
        for (int e = 0; e < prob.half[j][v]; ++e) m *= pts[i][v];
      row[j] = m;
    }
    for (int r = 0; r < kq; ++r) {
      atb[r] += row[r] * target[i];
      for (int c = r; c < kq; ++c) ata[r][c] += row[r] * row[c];
    }
  }
  for (int r = 0; r < kq; ++r)
    for (int c = 0; c < r; ++c) ata[r][c] = ata[c][r];
  for (int r = 0; r < kq; ++r) ata[r][r] += 1e-9;
  std::vector<double> q;
  if (!gauss_solve(ata, atb, q)) q.assign(kq, 0.0);
  return q;
}

double numeric_residual(const HomoPoly& p, const PerfectSquareConfig& cfg) {
  SquareProblem prob;
  prob.half = monomials_of_degree(p.degree() / 2);
  prob.full = monomials_of_degree(p.degree());
  for (size_t k = 0; k < prob.full.size(); ++k) prob.full_index[prob.full[k]] = k;
  prob.pvec.assign(prob.full.size(), 0.0);
  for (const auto& [e, c] : p.terms())
    prob.pvec[prob.full_index.at(e)] = rat_to_double(c);
  double n2 = 0.0;
  for (double x : prob.pvec) n2 += x * x;
  prob.pnorm = std::max(std::sqrt(n2), 1e-300);

  const CompiledPoly cp = compile(p);
  double best = prob.residual_norm(std::vector<double>(prob.half.size(), 0.0));
  best = std::min(best, lm_descend(prob, sign_trace_seed(prob, cp)));
  Rng rng(cfg.seed);
  const double amp = std::sqrt(prob.pnorm);
  for (int s = 0; s < cfg.starts && best > 1e-12 * prob.pnorm; ++s) {
    auto q0 = rng.gauss_vec(static_cast<int>(prob.half.size()));
    for (double& x : q0) x *= amp;
    best = std::min(best, lm_descend(prob, q0));
  }
  return best / prob.pnorm;
}

}  // namespace

PerfectSquareReport perfect_square_check(const HomoPoly& p,
                                         const PerfectSquareConfig& cfg) {
  PerfectSquareReport rep;
  rep.cfg = cfg;
  if (p.is_zero()) {
    rep.square = true;
    rep.exact = true;
    rep.root = HomoPoly(p.nvars(), p.degree() / 2);
    rep.residual = 0.0;
    return rep;
  }
  if (p.degree() % 2 != 0) {
    rep.square = false;
    rep.exact = true;
    rep.residual = 1.0;
    return rep;
  }

  const Rational lc = p.terms().begin()->second;
  const auto u = lc > 0 ? monic_sqrt(p) : std::nullopt;
  if (u) {
    rep.square = true;
    rep.exact = true;
    if (const auto s = rat_exact_sqrt(lc)) {
      rep.root = scale(*u, *s);
      rep.root_scale = 1;
    } else {
      rep.root = *u;
      rep.root_scale = lc;
    }
  } else {
    rep.square = false;
    rep.exact = true;
  }
  rep.residual = p.nvars() == 3 ? numeric_residual(p, cfg) : (u ? 0.0 : 1.0);
  return rep;
}

nlohmann::json to_json(const PerfectSquareReport& r) {
  nlohmann::json j{{"square", r.square},
                   {"exact", r.exact},
                   {"residual", r.residual},
                   {"config",
                    {{"tol", r.cfg.tol},
                     {"starts", r.cfg.starts},
                     {"seed", r.cfg.seed},
                     {"max_den", r.cfg.max_den}}}};
  if (r.root) {
    j["root"] = poly_to_json(*r.root);
    j["root_scale"] = rat_to_string(r.root_scale);
  }
  return j;
}

}  // namespace elastica
