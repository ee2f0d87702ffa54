#include "elastica/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace elastica {

namespace {

struct Lu {
  int n = 0;
  std::vector<std::vector<double>> a;
  std::vector<int> piv;
  bool ok = false;
};

Lu lu_factor(std::vector<std::vector<double>> m) {
  Lu f;
  f.n = static_cast<int>(m.size());
  f.piv.assign(f.n, 0);
  for (int k = 0; k < f.n; ++k) {
    int p = k;
    for (int r = k + 1; r < f.n; ++r)
      if (std::fabs(m[r][k]) > std::fabs(m[p][k])) p = r;
    if (std::fabs(m[p][k]) < 1e-13) return f;  // singular
    std::swap(m[p], m[k]);
    f.piv[k] = p;
    for (int r = k + 1; r < f.n; ++r) {
      m[r][k] /= m[k][k];
      const double l = m[r][k];
      if (l == 0.0) continue;
      for (int c = k + 1; c < f.n; ++c) m[r][c] -= l * m[k][c];
    }
  }
  f.a = std::move(m);
  f.ok = true;
  return f;
}

std::vector<double> lu_solve(const Lu& f, std::vector<double> b) {
  for (int k = 0; k < f.n; ++k) std::swap(b[k], b[f.piv[k]]);
  for (int r = 1; r < f.n; ++r)
    for (int c = 0; c < r; ++c) b[r] -= f.a[r][c] * b[c];
  for (int r = f.n - 1; r >= 0; --r) {
    for (int c = r + 1; c < f.n; ++c) b[r] -= f.a[r][c] * b[c];
    b[r] /= f.a[r][r];
  }
  return b;
}

// Revised simplex on the dual  min h.l  s.t. (G^T) l = c, l >= 0.
// Column j < m is constraint row j of G; columns m..m+K-1 are the phase-1
// artificials. Rows whose artificial cannot be pivoted out after phase 1 are
// linearly dependent (and consistent, or phase 1 would have failed) and get
// dropped; the matching primal coordinate is reported as 0.
class DualSimplex {
 public:
  DualSimplex(const std::vector<double>& c,
              const std::vector<std::vector<double>>& G,
              const std::vector<double>& h, int max_iters)
      : m_(static_cast<int>(G.size())),
        K_(static_cast<int>(c.size())),
        G_(G),
        h_(h),
        c_(c),
        max_iters_(max_iters) {
    row_sign_.assign(K_, 1.0);
    b_.assign(K_, 0.0);
    for (int i = 0; i < K_; ++i) {
      b_[i] = c[i];
      if (b_[i] < 0) {
        row_sign_[i] = -1.0;
        b_[i] = -b_[i];
      }
    }
    rows_.resize(K_);
    std::iota(rows_.begin(), rows_.end(), 0);
    bas_.resize(K_);
    is_basic_.assign(m_ + K_, 0);
    for (int p = 0; p < K_; ++p) {
      bas_[p] = m_ + p;
      is_basic_[m_ + p] = 1;
    }
    double hmax = 0.0, gmax = 0.0;
    for (double v : h_) hmax = std::max(hmax, std::fabs(v));
    for (const auto& row : G_)
      for (double v : row) gmax = std::max(gmax, std::fabs(v));
    enter_tol1_ = 1e-9 * (1.0 + gmax);
    enter_tol2_ = 1e-9 * (1.0 + hmax + gmax);
    double bmax = 0.0;
    for (double v : b_) bmax = std::max(bmax, v);
    feas_tol_ = 1e-8 * (1.0 + bmax) * std::max(K_, 1);
  }

  LpResult run() {
    LpResult res;
    if (K_ == 0) {
      res.status = LpResult::kOptimal;
      return res;
    }
    if (!refactor()) return res;  // kIterLimit: degenerate start (impossible)

    if (!phase(/*phase1=*/true, res)) return res;
    // Phase-1 optimum must be (numerically) zero, else the dual is
    // infeasible, i.e. the primal is unbounded (or vacuously infeasible).
    double art = 0.0;
    for (size_t p = 0; p < bas_.size(); ++p)
      if (bas_[p] >= m_) art += std::max(xb_[p], 0.0);
    if (art > feas_tol_) {
      res.status = LpResult::kUnbounded;
      res.iterations = iterations_;
      return res;
    }
    if (!purge_artificials()) return res;

    if (!phase(/*phase1=*/false, res)) return res;

    res.status = LpResult::kOptimal;
    res.iterations = iterations_;
    res.x.assign(K_, 0.0);
    for (size_t p = 0; p < rows_.size(); ++p)
      res.x[rows_[p]] = row_sign_[rows_[p]] * pi_[p];
    res.value = 0.0;
    for (int i = 0; i < K_; ++i) res.value += c_[i] * res.x[i];
    return res;
  }

 private:
  double col_entry(int j, int i) const {  // i is an original row index
    if (j < m_) return row_sign_[i] * G_[j][i];
    return j - m_ == i ? 1.0 : 0.0;
  }

  double cost_of(int j, bool phase1) const {
    if (phase1) return j < m_ ? 0.0 : 1.0;
    return j < m_ ? h_[j] : 0.0;
  }

  bool refactor() {
    const int n = static_cast<int>(rows_.size());
    std::vector<std::vector<double>> B(n, std::vector<double>(n));
    std::vector<std::vector<double>> BT(n, std::vector<double>(n));
    for (int p = 0; p < n; ++p)
      for (int r = 0; r < n; ++r) {
        B[r][p] = col_entry(bas_[p], rows_[r]);
        BT[p][r] = B[r][p];
      }
    lu_ = lu_factor(std::move(B));
    luT_ = lu_factor(std::move(BT));
    return lu_.ok && luT_.ok;
  }

  void compute_state(bool phase1) {
    const int n = static_cast<int>(rows_.size());
    std::vector<double> bact(n), costB(n);
    for (int p = 0; p < n; ++p) {
      bact[p] = b_[rows_[p]];
      costB[p] = cost_of(bas_[p], phase1);
    }
    xb_ = lu_solve(lu_, bact);
    pi_ = lu_solve(luT_, costB);
  }

  double reduced_cost(int j, bool phase1) const {
    double rc = cost_of(j, phase1);
    for (size_t p = 0; p < rows_.size(); ++p)
      rc -= pi_[p] * col_entry(j, rows_[p]);
    return rc;
  }

  // Returns false when res has been finalized (infeasible / iteration limit).
  bool phase(bool phase1, LpResult& res) {
    const double enter_tol = phase1 ? enter_tol1_ : enter_tol2_;
    double prev_obj = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (;;) {
      if (iterations_ >= max_iters_) {
        res.status = LpResult::kIterLimit;
        res.iterations = iterations_;
        return false;
      }
      compute_state(phase1);

      double obj = 0.0;
      for (size_t p = 0; p < bas_.size(); ++p)
        obj += cost_of(bas_[p], phase1) * xb_[p];
      if (obj > prev_obj - 1e-12 * (1.0 + std::fabs(prev_obj))) {
        if (++stall > 60) bland_ = true;
      } else {
        stall = 0;
      }
      prev_obj = obj;

      int enter = -1;
      double best = -enter_tol;
      for (int j = 0; j < m_; ++j) {  // artificials never re-enter
        if (is_basic_[j]) continue;
        const double rc = reduced_cost(j, phase1);
        if (bland_) {
          if (rc < -enter_tol) {
            enter = j;
            break;
          }
        } else if (rc < best) {
          best = rc;
          enter = j;
        }
      }
      if (enter < 0) return true;  // optimal for this phase

      std::vector<double> col(rows_.size());
      for (size_t p = 0; p < rows_.size(); ++p)
        col[p] = col_entry(enter, rows_[p]);
      const auto d = lu_solve(lu_, col);

      int leave = -1;
      double theta = std::numeric_limits<double>::infinity();
      for (size_t p = 0; p < d.size(); ++p) {
        if (d[p] <= 1e-10) continue;
        const double ratio = std::max(xb_[p], 0.0) / d[p];
        if (leave < 0) {
          theta = ratio;
          leave = static_cast<int>(p);
          continue;
        }
        const double eps = 1e-12 * (1.0 + std::fabs(theta));
        const bool tie = std::fabs(ratio - theta) <= eps;
        if (ratio < theta - eps ||
            (tie && prefer_leaving(static_cast<int>(p), leave))) {
          theta = std::min(ratio, theta);
          leave = static_cast<int>(p);
        }
      }
      if (leave < 0) {
        // Dual unbounded: the primal has no feasible point.
        res.status = phase1 ? LpResult::kIterLimit : LpResult::kInfeasible;
        res.iterations = iterations_;
        return false;
      }

      is_basic_[bas_[leave]] = 0;
      bas_[leave] = enter;
      is_basic_[enter] = 1;
      ++iterations_;
      if (!refactor()) {
        res.status = LpResult::kIterLimit;
        res.iterations = iterations_;
        return false;
      }
    }
  }

  // Tie-break for the leaving row: drive artificials out first, then lowest
  // column index (Bland-compatible, so the stall switch stays cycle-free).
  bool prefer_leaving(int cand, int cur) const {
    const bool cand_art = bas_[cand] >= m_;
    const bool cur_art = bas_[cur] >= m_;
    if (cand_art != cur_art) return cand_art;
    return bas_[cand] < bas_[cur];
  }

  bool purge_artificials() {
    for (size_t p = 0; p < bas_.size();) {
      if (bas_[p] < m_) {
        ++p;
        continue;
      }
      // w = row p of the basis inverse; entries of B^-1 A_j for row p are
      // w . A_j, so one transpose solve prices every candidate column.
      std::vector<double> ep(rows_.size(), 0.0);
      ep[p] = 1.0;
      const auto w = lu_solve(luT_, ep);
      int found = -1;
      for (int j = 0; j < m_ && found < 0; ++j) {
        if (is_basic_[j]) continue;
        double dp = 0.0;
        for (size_t r = 0; r < rows_.size(); ++r)
          dp += w[r] * col_entry(j, rows_[r]);
        if (std::fabs(dp) > 1e-9) found = j;
      }
      if (found >= 0) {
        is_basic_[bas_[p]] = 0;
        bas_[p] = found;
        is_basic_[found] = 1;
      } else {
        // Dependent (and consistent) equality row; drop it.
        is_basic_[bas_[p]] = 0;
        bas_.erase(bas_.begin() + p);
        rows_.erase(rows_.begin() + p);
      }
      if (!refactor()) return false;
    }
    return true;
  }

  const int m_, K_;
  const std::vector<std::vector<double>>& G_;
  const std::vector<double>& h_;
  const std::vector<double>& c_;
  const int max_iters_;

  std::vector<double> row_sign_, b_;
  std::vector<int> rows_, bas_;
  std::vector<char> is_basic_;
  Lu lu_, luT_;
  std::vector<double> xb_, pi_;
  double enter_tol1_ = 1e-9, enter_tol2_ = 1e-9, feas_tol_ = 1e-8;
  int iterations_ = 0;
  bool bland_ = false;
};

}  // namespace

LpResult lp_maximize(const std::vector<double>& c,
                     const std::vector<std::vector<double>>& G,
                     const std::vector<double>& h, int max_iters) {
  DualSimplex solver(c, G, h, max_iters);
  return solver.run();
}

}  // namespace elastica
