#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "elastica/lp.hpp"
#include "elastica/sampling.hpp"

using namespace elastica;

namespace {

// Brute-force oracle: enumerate all n-subsets of active constraints, solve the
// square systems, keep feasible vertices, and take the best objective.
double vertex_oracle(const std::vector<double>& c,
                     const std::vector<std::vector<double>>& g,
                     const std::vector<double>& h, bool* feasible) {
  const int m = static_cast<int>(g.size());
  const int n = static_cast<int>(c.size());
  double best = -std::numeric_limits<double>::infinity();
  *feasible = false;

  std::vector<int> idx(n);
  const auto solve_and_score = [&](const std::vector<int>& rows) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = g[rows[i]][j];
      a[i][n] = h[rows[i]];
    }
    for (int col = 0; col < n; ++col) {  // Gaussian elimination
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
      if (std::fabs(a[piv][col]) < 1e-11) return;
      std::swap(a[col], a[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        for (int j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
      }
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    for (int r = 0; r < m; ++r) {
      double dot = 0;
      for (int j = 0; j < n; ++j) dot += g[r][j] * x[j];
      if (dot > h[r] + 1e-8) return;
    }
    *feasible = true;
    double val = 0;
    for (int j = 0; j < n; ++j) val += c[j] * x[j];
    if (val > best) best = val;
  };

  // Enumerate subsets of size n out of m.
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    solve_and_score(comb);
    int k = n - 1;
    while (k >= 0 && comb[k] == m - n + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (int j = k + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

}  // namespace

TEST_CASE("matches the vertex-enumeration oracle on random bounded LPs") {
  Rng rng(7);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(2, 4);
    const int extra = rng.uniform_int(3, 6);
    std::vector<std::vector<double>> g;
    std::vector<double> h;
    // Box |x_i| <= b_i keeps every instance bounded and feasible at 0.
    for (int i = 0; i < n; ++i) {
      std::vector<double> row(n, 0.0);
      row[i] = 1.0;
      g.push_back(row);
      h.push_back(rng.uniform(0.5, 3.0));
      row[i] = -1.0;
      g.push_back(row);
      h.push_back(rng.uniform(0.5, 3.0));
    }
    for (int r = 0; r < extra; ++r) {
      std::vector<double> row(n);
      for (auto& v : row) v = rng.uniform(-1.0, 1.0);
      g.push_back(row);
      h.push_back(rng.uniform(0.2, 2.0));
    }
    std::vector<double> c(n);
    for (auto& v : c) v = rng.uniform(-1.0, 1.0);

    bool oracle_feasible = false;
    const double oracle = vertex_oracle(c, g, h, &oracle_feasible);
    const auto r = lp_maximize(c, g, h);
    if (!oracle_feasible) continue;  // oracle could not certify (degenerate)
    ++solved;
    REQUIRE(r.status == LpResult::Status::kOptimal);
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-7));
    // Returned point is feasible and achieves the value.
    double val = 0;
    for (size_t j = 0; j < c.size(); ++j) val += c[j] * r.x[j];
    CHECK(val == doctest::Approx(r.value).epsilon(1e-9));
    for (size_t row = 0; row < g.size(); ++row) {
      double dot = 0;
      for (size_t j = 0; j < c.size(); ++j) dot += g[row][j] * r.x[j];
      CHECK(dot <= h[row] + 1e-7);
    }
  }
  CHECK(solved >= 50);
}

TEST_CASE("detects unbounded problems") {
  // maximize x1 subject to x1 >= 0 only.
  const auto r = lp_maximize({1.0, 0.0}, {{-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}},
                             {0.0, 1.0, 1.0});
  CHECK(r.status == LpResult::Status::kUnbounded);
}

TEST_CASE("detects infeasible problems") {
  // x1 <= 0 and -x1 <= -1 cannot both hold.
  const auto r = lp_maximize({1.0}, {{1.0}, {-1.0}}, {0.0, -1.0});
  CHECK(r.status == LpResult::Status::kInfeasible);
}

TEST_CASE("handles redundant constraints") {
  // maximize x1 + x2 in the unit square with the box repeated three times.
  std::vector<std::vector<double>> g;
  std::vector<double> h;
  for (int rep = 0; rep < 3; ++rep) {
    g.push_back({1.0, 0.0});
    h.push_back(1.0);
    g.push_back({0.0, 1.0});
    h.push_back(1.0);
    g.push_back({-1.0, 0.0});
    h.push_back(0.0);
    g.push_back({0.0, -1.0});
    h.push_back(0.0);
  }
  const auto r = lp_maximize({1.0, 1.0}, g, h);
  REQUIRE(r.status == LpResult::Status::kOptimal);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}
