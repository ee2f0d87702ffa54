#include "elastica/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "elastica/eig3.hpp"
#include "elastica/sampling.hpp"

namespace elastica {

namespace {

constexpr double kHuge = 1e300;

double fro_norm(const Mat3& b) {
  double s = 0.0;
  for (const auto& row : b) {
    for (double v : row) s += v * v;
  }
  return std::sqrt(s);
}

Vec3 apply(const Mat3& b, const Vec3& y) {
  Vec3 out{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    out[i] = b[i][0] * y[0] + b[i][1] * y[1] + b[i][2] * y[2];
  }
  return out;
}

// Flattened ascent coordinates: 9 free entries, or the 6 independent entries
// (diagonal + upper triangle) when the search is restricted to symmetric B.
Mat3 coords_to_mat(const std::vector<double>& x, bool symmetric) {
  Mat3 b{};
  if (symmetric) {
    b[0][0] = x[0];
    b[1][1] = x[1];
    b[2][2] = x[2];
    b[0][1] = b[1][0] = x[3];
    b[0][2] = b[2][0] = x[4];
    b[1][2] = b[2][1] = x[5];
  } else {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) b[i][j] = x[3 * i + j];
    }
  }
  return b;
}

std::vector<double> mat_to_coords(const Mat3& b, bool symmetric) {
  if (symmetric) {
    return {b[0][0], b[1][1], b[2][2], b[0][1], b[0][2], b[1][2]};
  }
  std::vector<double> x(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) x[3 * i + j] = b[i][j];
  }
  return x;
}

std::array<double, 9> flatten(const Mat3& b) {
  std::array<double, 9> f{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) f[3 * i + j] = b[i][j];
  }
  return f;
}

// Largest admissible t at one direction y: with b = By and T = T(y),
// T - t b b^T >= 0 exactly when t <= 1/(b^T T^+ b) and b stays in range(T).
// The tiny-eigenvalue regularization makes the two cases one formula: a b
// component exiting the range blows the denominator up and the budget decays
// to zero continuously. Directions with |b| below the guard band carry no
// constraint (no admissible x) and report +inf.
//
// The quadratic form b^T T^+ b is evaluated on the diagonally scaled matrix
// R = D^-1 T D^-1 (D = sqrt(diag T)): eigensolvers only resolve eigenvalues
// to an absolute error of eps * |T|, so a raw decomposition turns the tiny
// eigenvalues this quotient depends on into noise that a minimizer over y
// then happily harvests. After scaling the small eigenvalues carry relative
// accuracy (exactly so for diagonal T), and b^T T^+ b = z^T R^+ z with
// z = D^-1 b.
double direction_budget(const CompiledAcoustic& t_of, const Mat3& b,
                        double b_scale, const Vec3& y) {
  const Vec3 by = apply(b, y);
  const double bn = norm(by);
  if (bn <= 1e-6 * b_scale) return kHuge;
  const Mat3 t = t_of(y);
  double dmax = 0.0;
  for (int i = 0; i < 3; ++i) dmax = std::max(dmax, t[i][i]);
  if (dmax <= 1e-300) return 0.0;  // T vanishes while b does not
  // For PSD T a zero diagonal entry zeroes its whole row; the floor keeps the
  // scaling finite there while Cauchy-Schwarz keeps |R_ij| <= 1 everywhere.
  const double d_floor = 1e-8 * std::sqrt(dmax);
  std::array<double, 3> d;
  for (int i = 0; i < 3; ++i) {
    d[i] = std::max(std::sqrt(std::max(t[i][i], 0.0)), d_floor);
  }
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r[i][j] = t[i][j] / (d[i] * d[j]);
  }
  const Eig3 eg = eig3_sym_jacobi(r);
  const double lmax = std::max(eg.w[2], 0.0);
  if (lmax <= 1e-300) return 0.0;
  const double reg = 1e-13 * lmax;
  const Vec3 z{by[0] / d[0], by[1] / d[1], by[2] / d[2]};
  double denom = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double proj = eg.v[i][0] * z[0] + eg.v[i][1] * z[1] + eg.v[i][2] * z[2];
    denom += proj * proj / std::max(eg.w[i], reg);
  }
  if (denom <= 0.0) return kHuge;
  return 1.0 / denom;
}

double lambda_min_shifted(const CompiledAcoustic& t_of, const Mat3& b, double t,
                          const Vec3& y) {
  Mat3 m = t_of(y);
  const Vec3 by = apply(b, y);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] -= t * by[i] * by[j];
  }
  // Jacobi rather than the closed form: the certify loop compares this value
  // against a 1e-11-relative threshold, inside the closed form's noise band.
  return eig3_sym_jacobi(m).w[0];
}

struct InnerContext {
  CompiledAcoustic t_of;
  std::vector<Vec3> full;  // scan pool: quasi-uniform + degeneracy anchors
  std::vector<Vec3> fast;  // thinned pool for the ascent loop
};

// Directions where T(y) loses rank concentrate the inner infimum, so they are
// pinned into both scan pools once per form.
InnerContext make_context(const QuadraticForm& f,
                          const FormExtremalityConfig& cfg) {
  InnerContext ctx{CompiledAcoustic(acoustic_matrix(f)), {}, {}};

  std::vector<Vec3> base = fibonacci_sphere(std::max(cfg.inner_samples, 64));
  for (const Vec3& y : structured_directions()) base.push_back(y);

  std::vector<double> lmin(base.size());
  double scale = 0.0;
  for (size_t i = 0; i < base.size(); ++i) {
    const Mat3 t = ctx.t_of(base[i]);
    lmin[i] = eig3_min(t);
    for (const auto& row : t) {
      for (double v : row) scale = std::max(scale, std::abs(v));
    }
  }
  scale = std::max(scale, 1e-300);

  std::vector<int> order(base.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (lmin[a] != lmin[b]) return lmin[a] < lmin[b];
    return base[a] < base[b];
  });

  std::vector<Vec3> seeds;
  for (int idx : order) {
    if (seeds.size() >= 32) break;
    bool dup = false;
    for (const Vec3& s : seeds) {
      if (std::abs(dot(s, base[idx])) > 0.99) {
        dup = true;
        break;
      }
    }
    if (!dup) seeds.push_back(base[idx]);
  }

  std::vector<Vec3> anchors;
  for (const Vec3& s : seeds) {
    const SphereMin m = minimize_on_sphere(
        [&](const Vec3& y) { return eig3_min(ctx.t_of(y)); }, s);
    if (m.value > 1e-7 * scale) continue;
    bool dup = false;
    for (const Vec3& a : anchors) {
      if (std::abs(dot(a, m.y)) > 1.0 - 1e-6) {
        dup = true;
        break;
      }
    }
    if (!dup) anchors.push_back(m.y);
  }

  ctx.full = base;
  ctx.full.insert(ctx.full.end(), anchors.begin(), anchors.end());
  for (size_t i = 0; i < base.size(); i += 4) ctx.fast.push_back(base[i]);
  ctx.fast.insert(ctx.fast.end(), anchors.begin(), anchors.end());
  return ctx;
}

// Scan + local descent estimate of inf_y direction_budget.
double inner_estimate(const InnerContext& ctx, const Mat3& b,
                      const FormExtremalityConfig& cfg, bool fast_mode) {
  const double b_scale = std::max(fro_norm(b), 1e-300);
  const std::vector<Vec3>& pool = fast_mode ? ctx.fast : ctx.full;

  std::vector<std::pair<double, int>> best;
  double min_value = kHuge;
  for (size_t i = 0; i < pool.size(); ++i) {
    const double v = direction_budget(ctx.t_of, b, b_scale, pool[i]);
    min_value = std::min(min_value, v);
    best.push_back({v, static_cast<int>(i)});
  }
  const int keep = fast_mode ? 1 : 4;
  std::partial_sort(best.begin(), best.begin() + std::min<size_t>(keep, best.size()),
                    best.end(), [&](const auto& a, const auto& c) {
                      if (a.first != c.first) return a.first < c.first;
                      return pool[a.second] < pool[c.second];
                    });
  const int iters = fast_mode ? 2 * cfg.inner_refine : 5 * cfg.inner_refine;
  for (int r = 0; r < keep && r < static_cast<int>(best.size()); ++r) {
    if (best[r].first >= kHuge) break;
    const SphereMin m = minimize_on_sphere(
        [&](const Vec3& y) { return direction_budget(ctx.t_of, b, b_scale, y); },
        pool[best[r].second], iters);
    min_value = std::min(min_value, m.value);
  }
  if (min_value >= kHuge) return 0.0;  // no admissible direction seen
  return std::max(min_value, 0.0);
}

// Cutting refinement: while T - t b b^T dips negative somewhere, the exact
// budget at the violating direction is a strictly smaller admissible t. This
// debiases the scan estimate, which otherwise only ever overshoots.
double inner_certified(const InnerContext& ctx, const Mat3& b,
                       const FormExtremalityConfig& cfg, double t0) {
  const double b_scale = std::max(fro_norm(b), 1e-300);
  double t = t0;
  for (int iter = 0; iter < 8 && t > 0.0; ++iter) {
    double worst = kHuge;
    Vec3 worst_y{1, 0, 0};
    double scale = 1.0;
    for (const Vec3& y : ctx.full) {
      const double v = lambda_min_shifted(ctx.t_of, b, t, y);
      if (v < worst) {
        worst = v;
        worst_y = y;
      }
      scale = std::max(scale, std::abs(v));
    }
    const SphereMin m = minimize_on_sphere(
        [&](const Vec3& y) { return lambda_min_shifted(ctx.t_of, b, t, y); },
        worst_y, 5 * cfg.inner_refine);
    if (m.value < worst) {
      worst = m.value;
      worst_y = m.y;
    }
    if (worst >= -1e-11 * scale) break;
    const double cut = direction_budget(ctx.t_of, b, b_scale, worst_y);
    t = (cut < t) ? cut : t * 0.999999;
  }
  return std::max(t, 0.0);
}

// Plain Nelder-Mead minimization in R^n; deterministic tie handling. Returns
// the best value; x is overwritten with the best point.
double nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                   std::vector<double>& x, int iters, double step) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> pts(n + 1, x);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (int i = 0; i <= n; ++i) vals[i] = fn(pts[i]);

  std::vector<int> idx(n + 1);
  for (int it = 0; it < iters; ++it) {
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
    const int lo = idx[0], hi = idx[n], next_hi = idx[n - 1];

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (int d = 0; d < n; ++d) centroid[d] += pts[i][d];
    }
    for (int d = 0; d < n; ++d) centroid[d] /= n;

    auto blend = [&](double alpha) {
      std::vector<double> p(n);
      for (int d = 0; d < n; ++d) {
        p[d] = centroid[d] + alpha * (pts[hi][d] - centroid[d]);
      }
      return p;
    };

    std::vector<double> refl = blend(-1.0);
    double refl_v = fn(refl);
    if (refl_v < vals[lo]) {
      std::vector<double> exp_p = blend(-2.0);
      double exp_v = fn(exp_p);
      if (exp_v < refl_v) {
        pts[hi] = std::move(exp_p);
        vals[hi] = exp_v;
      } else {
        pts[hi] = std::move(refl);
        vals[hi] = refl_v;
      }
      continue;
    }
    if (refl_v < vals[next_hi]) {
      pts[hi] = std::move(refl);
      vals[hi] = refl_v;
      continue;
    }
    std::vector<double> contr = blend(0.5);
    double contr_v = fn(contr);
    if (contr_v < vals[hi]) {
      pts[hi] = std::move(contr);
      vals[hi] = contr_v;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == lo) continue;
      for (int d = 0; d < n; ++d) {
        pts[i][d] = pts[lo][d] + 0.5 * (pts[i][d] - pts[lo][d]);
      }
      vals[i] = fn(pts[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  x = pts[best];
  return vals[best];
}

Mat3 normalized_mat(const Mat3& b) {
  const double n = fro_norm(b);
  Mat3 out = b;
  for (auto& row : out) {
    for (double& v : row) v /= n;
  }
  return out;
}

// Eigenvectors of the form's 9x9 Gram matrix, reshaped to 3x3. These are the
// natural structured candidates: a pure rank-one form (B:xi)^2 has Gram
// vec(B)vec(B)^T, whose top eigenvector recovers B exactly - a direction the
// random/ascent search essentially never finds because the budget landscape
// around it is flat zero.
std::vector<Mat3> spectral_seeds(const QuadraticForm& f, bool symmetric) {
  Eigen::Matrix<double, 9, 9> g;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) g(i, j) = rat_to_double(f.gram()[i][j]);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 9, 9>> solver(g);
  const double top = solver.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Mat3> out;
  if (top <= 0.0) return out;
  for (int k = 0; k < 9; ++k) {
    if (std::abs(solver.eigenvalues()(k)) < 1e-10 * top) continue;
    Mat3 m{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] = solver.eigenvectors()(3 * i + j, k);
    }
    if (symmetric) {
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          m[i][j] = m[j][i] = 0.5 * (m[i][j] + m[j][i]);
        }
      }
      if (fro_norm(m) < 1e-9) continue;
    }
    out.push_back(m);
  }
  return out;
}

std::vector<Mat3> start_seeds(const QuadraticForm& f,
                              const FormExtremalityConfig& cfg) {
  std::vector<Mat3> seeds;
  auto push = [&](Mat3 m) { seeds.push_back(normalized_mat(m)); };

  if (!cfg.symmetrized_rank_one) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Mat3 m{};
        m[i][j] = 1.0;
        push(m);
      }
    }
  } else {
    for (int i = 0; i < 3; ++i) {
      Mat3 m{};
      m[i][i] = 1.0;
      push(m);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      Mat3 m{};
      m[i][j] = m[j][i] = 1.0;
      push(m);
    }
  }
  push({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  push({{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}});
  push({{{0, 0, 0}, {0, 1, 0}, {0, 0, -1}}});
  push({{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}});
  push({{{1, 0, 0}, {0, 1, 0}, {0, 0, -2}}});
  push({{{2, 0, 0}, {0, -1, 0}, {0, 0, -1}}});
  for (const Mat3& m : spectral_seeds(f, cfg.symmetrized_rank_one)) push(m);

  Rng rng(cfg.seed);
  const int dim = cfg.symmetrized_rank_one ? 6 : 9;
  while (static_cast<int>(seeds.size()) < cfg.starts) {
    const std::vector<double> g = rng.gauss_vec(dim);
    const Mat3 m = coords_to_mat(g, cfg.symmetrized_rank_one);
    if (fro_norm(m) < 1e-9) continue;
    push(m);
  }
  if (static_cast<int>(seeds.size()) > cfg.starts) {
    seeds.resize(std::max(cfg.starts, 1));
  }
  return seeds;
}

RatMatrix round_mat(const Mat3& b) {
  RatMatrix m(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = rat_round(b[i][j], 1000000);
  }
  return m;
}

struct StartOutcome {
  Mat3 b{};
  double t = 0.0;
};

}  // namespace

FormExtremalityReport form_extremality(const QuadraticForm& f,
                                       const FormExtremalityConfig& cfg) {
  RankOneConvexityConfig pre_cfg;
  pre_cfg.seed = cfg.seed;
  const RankOneConvexityReport pre = rank_one_convexity(f, pre_cfg);
  if (!pre.convex) {
    throw std::invalid_argument(
        "form_extremality: form is not rank-one convex (min " +
        std::to_string(pre.min_value) + "), extremality is undefined");
  }

  FormExtremalityReport report;
  report.cfg = cfg;

  const InnerContext ctx = make_context(f, cfg);
  const std::vector<Mat3> seeds = start_seeds(f, cfg);
  const bool sym = cfg.symmetrized_rank_one;

  std::vector<StartOutcome> outcomes(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), [&](int s) {
    auto objective = [&](const std::vector<double>& x) {
      const Mat3 m = coords_to_mat(x, sym);
      if (fro_norm(m) < 1e-8) return kHuge;
      return -inner_estimate(ctx, normalized_mat(m), cfg, true);
    };
    std::vector<double> x = mat_to_coords(seeds[s], sym);
    nelder_mead(objective, x, cfg.ascent_iters, 0.3);
    Mat3 b = coords_to_mat(x, sym);
    if (fro_norm(b) < 1e-8) b = seeds[s];
    b = normalized_mat(b);
    // Keep whichever of seed and ascent result scores better under the full
    // scan, then debias it with the cutting loop.
    const double t_seed = inner_estimate(ctx, seeds[s], cfg, false);
    const double t_opt = inner_estimate(ctx, b, cfg, false);
    if (t_seed > t_opt) b = seeds[s];
    const double t_cert =
        inner_certified(ctx, b, cfg, std::max(t_seed, t_opt));
    outcomes[s] = {b, t_cert};
  });

  std::vector<int> order(outcomes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (outcomes[a].t != outcomes[b].t) return outcomes[a].t > outcomes[b].t;
    return flatten(outcomes[a].b) < flatten(outcomes[b].b);
  });

  report.best_t_by_start.reserve(outcomes.size());
  for (int idx : order) {
    report.best_t_by_start.push_back(
        {round_mat(outcomes[idx].b), outcomes[idx].t, false});
  }
  report.max_t = outcomes.empty() ? 0.0 : outcomes[order[0]].t;

  if (report.max_t <= cfg.tol) {
    report.verdict = FormExtremalityReport::Verdict::kExtremal;
    return report;
  }

  // Walk candidates best-first until one survives the rank-one convexity
  // re-check of f - t (B:xi)^2 (with a short shrink ladder absorbing the
  // rounding of B and any residual overshoot in t).
  RankOneConvexityConfig ver_cfg;
  ver_cfg.seed = cfg.seed;
  for (size_t rank = 0; rank < order.size(); ++rank) {
    const StartOutcome& cand = outcomes[order[rank]];
    if (cand.t <= cfg.tol) break;
    const RatMatrix brat = round_mat(cand.b);
    const QuadraticForm b_form = QuadraticForm::rank_one(brat);
    for (double factor : {1.0, 1.0 - 1e-9, 1.0 - 1e-6, 1.0 - 1e-3, 0.99, 0.9, 0.5}) {
      const double t = cand.t * factor;
      if (t <= cfg.tol) break;
      const QuadraticForm g = sub(f, scale(b_form, rat_round(t, 1000000000000ULL)));
      if (rank_one_convexity(g, ver_cfg).convex) {
        report.verdict = FormExtremalityReport::Verdict::kNotExtremal;
        report.witness_b = RankOneForm{brat};
        report.witness_t = t;
        report.witness_verified = true;
        report.best_t_by_start[rank].verified = true;
        return report;
      }
    }
  }

  report.verdict = FormExtremalityReport::Verdict::kInconclusive;
  return report;
}

FormExtremalityReport form_extremality(const StiffnessTensor& c,
                                       const FormExtremalityConfig& cfg) {
  return form_extremality(QuadraticForm::from_stiffness(c), cfg);
}

double rank_one_budget(const QuadraticForm& f, const RatMatrix& b,
                       const FormExtremalityConfig& cfg) {
  if (b.size() != 3 || b[0].size() != 3) {
    throw std::invalid_argument("rank_one_budget: B must be 3x3");
  }
  Mat3 bm{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) bm[i][j] = rat_to_double(b[i][j]);
  }
  if (fro_norm(bm) < 1e-12) {
    throw std::invalid_argument("rank_one_budget: B must be nonzero");
  }
  const InnerContext ctx = make_context(f, cfg);
  const double est = inner_estimate(ctx, bm, cfg, false);
  return inner_certified(ctx, bm, cfg, est);
}

std::string verdict_name(FormExtremalityReport::Verdict v) {
  switch (v) {
    case FormExtremalityReport::Verdict::kExtremal:
      return "extremal_up_to_tol";
    case FormExtremalityReport::Verdict::kNotExtremal:
      return "not_extremal";
    default:
      return "inconclusive";
  }
}

namespace {

nlohmann::json rat_matrix_json(const RatMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(rat_to_string(v));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

nlohmann::json to_json(const FormExtremalityReport& r) {
  nlohmann::json j;
  j["verdict"] = verdict_name(r.verdict);
  j["max_t"] = r.max_t;
  j["witness_verified"] = r.witness_verified;
  if (r.witness_b) {
    j["witness"] = {{"B", rat_matrix_json(r.witness_b->B)}, {"t", r.witness_t}};
  }
  nlohmann::json starts = nlohmann::json::array();
  for (const FormExtremalityStart& s : r.best_t_by_start) {
    starts.push_back({{"B", rat_matrix_json(s.B)},
                      {"t", s.t},
                      {"verified", s.verified}});
  }
  j["best_t_by_start"] = starts;
  j["config"] = {{"starts", r.cfg.starts},
                 {"inner_samples", r.cfg.inner_samples},
                 {"inner_refine", r.cfg.inner_refine},
                 {"ascent_iters", r.cfg.ascent_iters},
                 {"tol", r.cfg.tol},
                 {"seed", r.cfg.seed},
                 {"symmetrized_rank_one", r.cfg.symmetrized_rank_one}};
  return j;
}

}  // namespace elastica
