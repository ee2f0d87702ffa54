#include "elastica/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "elastica/nonneg.hpp"
#include "elastica/perfect_square.hpp"
#include "elastica/sampling.hpp"

namespace elastica {

namespace {

using Mat3x3d = std::array<std::array<double, 3>, 3>;

// Monomial exponent basis of the given total degree in y1,y2,y3, descending
// lexicographic (equals descending grlex within one degree). Optionally
// restricted to exponents even in every variable.
std::vector<Exponents> monomial_basis(int degree, bool even_only) {
  std::vector<Exponents> basis;
  for (int i = degree; i >= 0; --i) {
    for (int j = degree - i; j >= 0; --j) {
      const int k = degree - i - j;
      if (even_only && (i % 2 || j % 2 || k % 2)) continue;
      basis.push_back({i, j, k});
    }
  }
  return basis;
}

double monomial_value(const Exponents& e, const Vec3& y) {
  double v = 1.0;
  for (int a = 0; a < 3; ++a) {
    for (int r = 0; r < e[a]; ++r) v *= y[a];
  }
  return v;
}

// (gradient of y^e at y) . u.
double monomial_slope(const Exponents& e, const Vec3& y, const Vec3& u) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    if (e[a] >= 1) {
      Exponents r = e;
      r[a] -= 1;
      s += u[a] * e[a] * monomial_value(r, y);
    }
  }
  return s;
}

// u^T (Hessian of y^e at y) u.
double monomial_curvature(const Exponents& e, const Vec3& y, const Vec3& u) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    if (e[a] >= 2) {
      Exponents r = e;
      r[a] -= 2;
      s += u[a] * u[a] * e[a] * (e[a] - 1) * monomial_value(r, y);
    }
    for (int b = a + 1; b < 3; ++b) {
      if (e[a] >= 1 && e[b] >= 1) {
        Exponents r = e;
        r[a] -= 1;
        r[b] -= 1;
        s += 2.0 * u[a] * u[b] * e[a] * e[b] * monomial_value(r, y);
      }
    }
  }
  return s;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// Orthonormal tangent basis at a unit vector y.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& y) {
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(y[a]) < std::abs(y[axis])) axis = a;
  }
  Vec3 e{0, 0, 0};
  e[axis] = 1.0;
  const Vec3 t1 = normalized(cross(y, e));
  const Vec3 t2 = cross(y, t1);
  return {t1, t2};
}

Mat3x3d hessian_at(const CompiledPoly& p, const Vec3& y) {
  Mat3x3d h{};
  for (const CompiledPoly::Term& t : p.terms) {
    const Exponents e{t.e[0], t.e[1], t.e[2]};
    for (int a = 0; a < 3; ++a) {
      if (e[a] >= 2) {
        Exponents r = e;
        r[a] -= 2;
        h[a][a] += t.c * e[a] * (e[a] - 1) * monomial_value(r, y);
      }
      for (int b = a + 1; b < 3; ++b) {
        if (e[a] >= 1 && e[b] >= 1) {
          Exponents r = e;
          r[a] -= 1;
          r[b] -= 1;
          const double v = t.c * e[a] * e[b] * monomial_value(r, y);
          h[a][b] += v;
          h[b][a] += v;
        }
      }
    }
  }
  return h;
}

// Newton refinement of a (near-)minimum of p on the sphere in the tangent
// chart. The derivative-free minimizer locates zeros of p only to about
// sqrt(function tol); the second-order constraint rows built at the zeros
// need the anchor position itself at close-to-machine accuracy.
Vec3 polish_min(const CompiledPoly& p, Vec3 y) {
  for (int it = 0; it < 8; ++it) {
    y = normalized(y);
    const Vec3 g = p.gradient(y);
    const auto [t1, t2] = tangent_basis(y);
    const double yg = dot(y, g);
    const Mat3x3d h = hessian_at(p, y);
    auto quad = [&](const Vec3& a, const Vec3& b) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) s += a[i] * h[i][j] * b[j];
      }
      return s;
    };
    const double g1 = dot(t1, g), g2 = dot(t2, g);
    const double h11 = quad(t1, t1) - yg;
    const double h12 = quad(t1, t2);
    const double h22 = quad(t2, t2) - yg;
    const double det = h11 * h22 - h12 * h12;
    const double hn = std::max({std::abs(h11), std::abs(h12), std::abs(h22)});
    // Flat or indefinite chart (e.g. a zero curve rather than a point):
    // Newton has no target; keep the scanned point.
    if (!(det > 1e-10 * hn * hn)) break;
    const double d1 = -(h22 * g1 - h12 * g2) / det;
    const double d2 = -(-h12 * g1 + h11 * g2) / det;
    const double step = std::sqrt(d1 * d1 + d2 * d2);
    if (!(step < 0.1)) break;
    y = normalized(Vec3{y[0] + d1 * t1[0] + d2 * t2[0],
                        y[1] + d1 * t1[1] + d2 * t2[1],
                        y[2] + d1 * t1[2] + d2 * t2[2]});
    if (step < 1e-14) break;
  }
  return normalized(y);
}

std::vector<double> coeff_vector(const HomoPoly& p,
                                 const std::vector<Exponents>& basis) {
  std::vector<double> c(basis.size(), 0.0);
  for (size_t i = 0; i < basis.size(); ++i) c[i] = rat_to_double(p.coeff(basis[i]));
  return c;
}

HomoPoly poly_from_vector(const std::vector<double>& q,
                          const std::vector<Exponents>& basis, int degree,
                          double drop_below) {
  HomoPoly out(3, degree);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (std::abs(q[i]) <= drop_below) continue;
    out.add_term(basis[i], rat_round(q[i], 1000000000000ULL));
  }
  return out;
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Approximate zero set of p on the sphere: refine the lowest scan values and
// keep the near-zero minima (deduplicated by angle). These are the active
// points of any extremal certificate, so the LP must see them exactly.
std::vector<Vec3> zero_anchors(const CompiledPoly& p,
                               const std::vector<Vec3>& scan,
                               const std::vector<double>& values,
                               double scale) {
  std::vector<int> order(scan.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return scan[a] < scan[b];
  });

  std::vector<Vec3> seeds;
  for (int idx : order) {
    if (seeds.size() >= 48) break;
    bool dup = false;
    for (const Vec3& s : seeds) {
      if (std::abs(dot(s, scan[idx])) > 0.995) {
        dup = true;
        break;
      }
    }
    if (!dup) seeds.push_back(scan[idx]);
  }

  std::vector<Vec3> anchors;
  std::vector<SphereMin> mins(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), [&](int i) {
    mins[i] = minimize_on_sphere([&](const Vec3& y) { return p(y); }, seeds[i]);
    mins[i].y = polish_min(p, mins[i].y);
    mins[i].value = p(mins[i].y);
  });
  for (const SphereMin& m : mins) {
    if (m.value > 1e-9 * scale) continue;
    bool dup = false;
    for (const Vec3& a : anchors) {
      if (std::abs(dot(a, m.y)) > 1.0 - 1e-8) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    anchors.push_back(m.y);
    anchors.push_back({-m.y[0], -m.y[1], -m.y[2]});
  }
  return anchors;
}

struct LpRows {
  std::vector<std::vector<double>> G;
  std::vector<double> h;
};

// Constraints 0 <= Q(y_s) <= max(P(y_s), 0) for every pooled sample plus a
// coefficient box keeping the feasible set bounded in every direction.
//
// At the zero anchors of P the feasible Q must vanish too, which makes every
// anchor a sphere minimum of both Q and P - Q. That forces first-order
// optimality (tangent gradient of Q equal to zero -- two equality rows per
// anchor) and squeezes the tangent Hessians between 0 and the Hessian of P
// (at a zero of a homogeneous f the second derivative along the great circle
// toward u is plain u^T (D^2 f) u). All of these are linear rows in Q's
// coefficients, and they are what actually decides extremality: candidate
// wiggle room lives in the jet of Q around the zero set, which point sampling
// alone pins down too slowly for the exchange loop to converge. When the
// value and gradient rows over the full anchor set reach corank one, the
// feasible cone collapses onto multiples of P and the LP reports zero slack
// in every probed direction.
LpRows build_rows(const std::vector<Vec3>& pool, const std::vector<Vec3>& anchors,
                  const CompiledPoly& p, const std::vector<Exponents>& basis,
                  const std::vector<double>& pvec, double box) {
  constexpr int kAnchorAngles = 8;
  LpRows rows;
  const size_t k = basis.size();
  rows.G.reserve(2 * pool.size() + 2 * k +
                 2 * (kAnchorAngles + 2) * anchors.size());
  rows.h.reserve(rows.G.capacity());
  for (const Vec3& y : pool) {
    std::vector<double> row(k);
    for (size_t e = 0; e < k; ++e) row[e] = monomial_value(basis[e], y);
    const double ub = std::max(p(y), 0.0);
    rows.G.push_back(row);
    rows.h.push_back(ub);
    for (double& v : row) v = -v;
    rows.G.push_back(std::move(row));
    rows.h.push_back(0.0);
  }
  // Slack for the first-order equality rows: the anchors are Newton-polished,
  // so alpha*P itself has tangent gradients ~1e-13 * |P| there; a relative
  // band keeps it feasible while still pinning candidates four orders of
  // magnitude below the verdict tolerance.
  const double grad_slack = 1e-10 * vec_norm(pvec);
  for (const Vec3& y : anchors) {
    const auto [t1, t2] = tangent_basis(y);
    for (const Vec3& t : {t1, t2}) {
      std::vector<double> row(k);
      for (size_t e = 0; e < k; ++e) row[e] = monomial_slope(basis[e], y, t);
      rows.G.push_back(row);
      rows.h.push_back(grad_slack);
      for (double& v : row) v = -v;
      rows.G.push_back(std::move(row));
      rows.h.push_back(grad_slack);
    }
    for (int a = 0; a < kAnchorAngles; ++a) {
      const double phi = M_PI * a / kAnchorAngles;  // u and -u curve alike
      const double c = std::cos(phi), s = std::sin(phi);
      const Vec3 u{c * t1[0] + s * t2[0], c * t1[1] + s * t2[1],
                   c * t1[2] + s * t2[2]};
      std::vector<double> row(k);
      double rhs = 0.0;  // u^T (D^2 P)(y) u through the same rows, so that
      for (size_t e = 0; e < k; ++e) {  // Q = alpha P stays feasible exactly
        row[e] = monomial_curvature(basis[e], y, u);
        rhs += row[e] * pvec[e];
      }
      rows.G.push_back(row);
      rows.h.push_back(std::max(rhs, 0.0));
      for (double& v : row) v = -v;
      rows.G.push_back(std::move(row));
      rows.h.push_back(0.0);
    }
  }
  for (size_t e = 0; e < k; ++e) {
    std::vector<double> row(k, 0.0);
    row[e] = 1.0;
    rows.G.push_back(row);
    rows.h.push_back(box);
    row[e] = -1.0;
    rows.G.push_back(std::move(row));
    rows.h.push_back(box);
  }
  return rows;
}

}  // namespace

PolyExtremalityReport poly_extremality(const HomoPoly& p,
                                       const PolyExtremalityConfig& cfg) {
  if (p.nvars() != 3) {
    throw std::invalid_argument("poly_extremality: polynomial must be in 3 variables");
  }
  if (p.is_zero()) {
    throw std::invalid_argument("poly_extremality: the zero polynomial has no extremality verdict");
  }

  NonnegConfig pre_cfg;
  pre_cfg.samples = std::max(cfg.samples, 20000);
  pre_cfg.refine = 50;
  pre_cfg.seed = cfg.seed;
  const NonnegReport pre = nonneg_check(p, pre_cfg);
  if (!pre.nonnegative) {
    throw std::invalid_argument(
        "poly_extremality: polynomial is not nonnegative (min " +
        std::to_string(pre.min_value) + " on the unit sphere)");
  }

  PolyExtremalityReport report;
  report.tol = cfg.tol;
  report.cfg = cfg;

  const int degree = p.degree();
  const bool even = cfg.even_only && is_even_in_each_variable(p);
  const std::vector<Exponents> basis = monomial_basis(degree, even);
  const size_t k = basis.size();
  const CompiledPoly cp = compile(p);

  const std::vector<double> pvec = coeff_vector(p, basis);
  const double pnorm = vec_norm(pvec);
  double coeff_scale = 1.0;
  for (double c : pvec) coeff_scale = std::max(coeff_scale, std::abs(c));
  const double box = 1000.0 * coeff_scale;

  // Constraint pool: quasi-uniform coverage, symmetric anchors, refined
  // near-zeros of p; exchange rounds append LP-violated minima below. The
  // zero anchors are kept separately as well: they also carry the
  // second-order (tangent Hessian) constraint rows.
  std::vector<Vec3> pool = fibonacci_sphere(cfg.samples);
  for (const Vec3& y : structured_directions()) pool.push_back(y);
  std::vector<Vec3> anchors;
  {
    std::vector<double> values(pool.size());
    double scale = 1.0;
    parallel_for(static_cast<int>(pool.size()),
                 [&](int i) { values[i] = cp(pool[i]); });
    for (double v : values) scale = std::max(scale, std::abs(v));
    anchors = zero_anchors(cp, pool, values, scale);
    pool.insert(pool.end(), anchors.begin(), anchors.end());
  }

  // Objective directions: unit vectors orthogonal to p in coefficient space,
  // drawn once so that every exchange round probes the same directions.
  Rng rng(cfg.seed);
  std::vector<std::vector<double>> directions;
  for (int d = 0; d < cfg.directions; ++d) {
    std::vector<double> c = rng.gauss_vec(static_cast<int>(k));
    if (pnorm > 0.0) {
      double proj = 0.0;
      for (size_t i = 0; i < k; ++i) proj += c[i] * pvec[i];
      proj /= pnorm * pnorm;
      for (size_t i = 0; i < k; ++i) c[i] -= proj * pvec[i];
    }
    const double n = vec_norm(c);
    if (n < 1e-12) continue;  // basis too small to hold an orthogonal direction
    for (double& x : c) x /= n;
    directions.push_back(std::move(c));
  }

  NonnegConfig verify_cfg;
  verify_cfg.samples = cfg.verify_samples;
  verify_cfg.refine = 60;
  verify_cfg.seed = cfg.seed;

  for (int round = 0; round < cfg.rounds; ++round) {
    const LpRows rows = build_rows(pool, anchors, cp, basis, pvec, box);
    report.samples = static_cast<int>(pool.size());

    bool lp_trouble = false;
    double round_max_dev = 0.0;
    std::vector<Vec3> exchange;
    for (const std::vector<double>& dir : directions) {
      for (int sign = 0; sign < 2; ++sign) {
        std::vector<double> c = dir;
        if (sign) {
          for (double& x : c) x = -x;
        }
        const LpResult lp = lp_maximize(c, rows.G, rows.h);
        if (lp.status != LpResult::kOptimal) {
          lp_trouble = true;
          continue;
        }
        const double dev = lp.value / std::max(pnorm, 1e-300);
        round_max_dev = std::max(round_max_dev, dev);
        if (dev <= cfg.tol) continue;

        // Candidate witness. LP vertices can poke outside the true feasible
        // set between samples, so blend toward the interior point alpha*p
        // until the global checks pass; surviving violations become new
        // constraints for the next round.
        double alpha = 0.0;
        for (size_t i = 0; i < k; ++i) alpha += lp.x[i] * pvec[i];
        alpha /= std::max(pnorm * pnorm, 1e-300);
        alpha = std::min(std::max(alpha, 0.0), 1.0);
        for (double beta : {1.0, 0.5, 0.25, 0.125}) {
          if (beta * dev <= cfg.tol) break;
          std::vector<double> qv(k);
          for (size_t i = 0; i < k; ++i) {
            qv[i] = beta * lp.x[i] + (1.0 - beta) * alpha * pvec[i];
          }
          HomoPoly q = poly_from_vector(qv, basis, degree, 1e-13 * coeff_scale);
          if (q.is_zero()) break;
          const NonnegReport low = nonneg_check(q, verify_cfg);
          if (!low.nonnegative) {
            exchange.push_back(low.argmin);
            exchange.push_back({-low.argmin[0], -low.argmin[1], -low.argmin[2]});
            continue;
          }
          const NonnegReport high = nonneg_check(sub(p, q), verify_cfg);
          if (!high.nonnegative) {
            exchange.push_back(high.argmin);
            exchange.push_back({-high.argmin[0], -high.argmin[1], -high.argmin[2]});
            continue;
          }
          report.verdict = PolyExtremalityReport::Verdict::kNotExtremal;
          report.witness = std::move(q);
          report.max_deviation = beta * dev;
          return report;
        }
      }
    }

    report.max_deviation = round_max_dev;
    if (round_max_dev <= cfg.tol && !lp_trouble) {
      report.verdict = PolyExtremalityReport::Verdict::kExtremal;
      return report;
    }
    if (exchange.empty() && round_max_dev > cfg.tol) {
      // Every over-threshold optimum was refuted yet produced no new
      // constraint point; a further round would repeat itself.
      break;
    }
    pool.insert(pool.end(), exchange.begin(), exchange.end());
  }

  report.verdict = PolyExtremalityReport::Verdict::kInconclusive;
  return report;
}

std::string verdict_name(PolyExtremalityReport::Verdict v) {
  switch (v) {
    case PolyExtremalityReport::Verdict::kExtremal:
      return "extremal_up_to_tol";
    case PolyExtremalityReport::Verdict::kNotExtremal:
      return "not_extremal";
    default:
      return "inconclusive";
  }
}

nlohmann::json to_json(const PolyExtremalityReport& r) {
  nlohmann::json j;
  j["verdict"] = verdict_name(r.verdict);
  j["max_deviation"] = r.max_deviation;
  j["samples"] = r.samples;
  j["tol"] = r.tol;
  if (r.witness) j["witness"] = poly_to_json(*r.witness);
  j["config"] = {{"samples", r.cfg.samples},
                 {"rounds", r.cfg.rounds},
                 {"directions", r.cfg.directions},
                 {"tol", r.cfg.tol},
                 {"seed", r.cfg.seed},
                 {"even_only", r.cfg.even_only},
                 {"verify_samples", r.cfg.verify_samples}};
  return j;
}

bool equivalence_check(const HomoPoly& p, const HomoPoly& q,
                       const LinearSubstitution& a) {
  if (p.nvars() != q.nvars() || a.nvars() != p.nvars()) {
    throw std::invalid_argument("equivalence_check: dimensions disagree");
  }
  if (!a.nonsingular()) {
    throw std::invalid_argument("equivalence_check: substitution matrix is singular");
  }
  if (p.degree() != q.degree()) return false;
  return p == substitute(q, a);
}

Theorem51Report theorem51_audit(const StiffnessTensor& c,
                                const Theorem51Config& cfg) {
  if (!c.is_orthotropic()) {
    throw std::invalid_argument("theorem51_audit: stiffness tensor must be orthotropic");
  }

  Theorem51Report report;
  report.normal_product_nonzero = c.c11c22c33() != Rational(0);
  report.det = acoustic_det(c);
  report.det_identically_zero = report.det.is_zero();
  report.convexity = rank_one_convexity(c, cfg.convexity);
  report.rank_one_convex = report.convexity.convex;

  if (!report.rank_one_convex || report.det_identically_zero) {
    // Degenerate short-circuits: without rank-one convexity neither
    // extremality search is defined, and the LP cannot accept the zero
    // polynomial.
    report.hypotheses_satisfied = false;
    report.consistent = true;
    return report;
  }

  PolyExtremalityConfig poly_cfg = cfg.poly;
  poly_cfg.tol = std::min(poly_cfg.tol, cfg.tol);
  report.poly_report = poly_extremality(report.det, poly_cfg);
  report.det_extremal = report.poly_report->verdict ==
                        PolyExtremalityReport::Verdict::kExtremal;

  const PerfectSquareReport square = perfect_square_check(report.det);
  report.det_perfect_square = square.square;
  if (square.square) report.square_root = square.root;

  report.form_report = form_extremality(c, cfg.form);
  report.form_extremal = report.form_report->verdict ==
                         FormExtremalityReport::Verdict::kExtremal;

  report.hypotheses_satisfied = report.rank_one_convex &&
                                report.normal_product_nonzero &&
                                report.det_extremal &&
                                !report.det_perfect_square;
  const bool refuted = report.form_report->verdict ==
                           FormExtremalityReport::Verdict::kNotExtremal &&
                       report.form_report->witness_verified;
  report.consistent = !(report.hypotheses_satisfied && refuted);
  return report;
}

nlohmann::json to_json(const Theorem51Report& r) {
  nlohmann::json j;
  j["hypotheses_satisfied"] = r.hypotheses_satisfied;
  j["rank_one_convex"] = r.rank_one_convex;
  j["form_extremal"] = r.form_extremal;
  j["normal_product_nonzero"] = r.normal_product_nonzero;
  j["det_identically_zero"] = r.det_identically_zero;
  j["det_extremal"] = r.det_extremal;
  j["det_perfect_square"] = r.det_perfect_square;
  j["consistent"] = r.consistent;
  j["convexity"] = to_json(r.convexity);
  j["det"] = poly_to_json(r.det);
  if (r.form_report) j["form_report"] = to_json(*r.form_report);
  if (r.poly_report) j["poly_report"] = to_json(*r.poly_report);
  if (r.square_root) j["square_root"] = poly_to_json(*r.square_root);
  return j;
}

}  // namespace elastica
