#include "elastica/nonneg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace elastica {

namespace {

// Deterministic total order on minima candidates: smaller value first, ties
// broken lexicographically on coordinates so parallel runs agree.
bool better(double val_a, const Vec3& a, double val_b, const Vec3& b) {
  if (val_a != val_b) return val_a < val_b;
  return a < b;
}

}  // namespace

NonnegReport nonneg_check(const CompiledPoly& p, const NonnegConfig& cfg) {
  if (p.degree % 2 != 0)
    throw std::invalid_argument("nonnegativity is for even-degree polynomials");
  NonnegReport rep;
  rep.cfg = cfg;

  std::vector<Vec3> seeds = fibonacci_sphere(std::max(cfg.samples, 16));
  const auto& anchors = structured_directions();
  seeds.insert(seeds.end(), anchors.begin(), anchors.end());
  Rng rng(cfg.seed);
  for (int i = 0; i < 32; ++i) seeds.push_back(rng.unit_vec3());

  const int n = static_cast<int>(seeds.size());
  std::vector<double> vals(n);
  parallel_for(n, [&](int i) { vals[i] = p(seeds[i]); });

  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(vals[i]));

  // Rank seeds; refine from the best few.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return better(vals[i], seeds[i], vals[j], seeds[j]);
  });

  double best_val = vals[order[0]];
  Vec3 best_y = seeds[order[0]];
  const int k = std::min(cfg.refine, n);
  std::vector<SphereMin> refined(k);
  parallel_for(k, [&](int i) {
    refined[i] =
        minimize_on_sphere([&](const Vec3& y) { return p(y); }, seeds[order[i]]);
  });
  for (const auto& r : refined)
    if (better(r.value, r.y, best_val, best_y)) {
      best_val = r.value;
      best_y = r.y;
    }

  rep.min_value = best_val;
  rep.argmin = best_y;
  rep.scale = scale;
  rep.nonnegative = best_val >= -cfg.tol * scale;
  return rep;
}

NonnegReport nonneg_check(const HomoPoly& p, const NonnegConfig& cfg) {
  if (p.nvars() != 3)
    throw std::invalid_argument("nonnegativity check supports nvars == 3 only");
  return nonneg_check(compile(p), cfg);
}

nlohmann::json to_json(const NonnegReport& r) {
  return {{"nonnegative", r.nonnegative},
          {"min_value", r.min_value},
          {"argmin", {r.argmin[0], r.argmin[1], r.argmin[2]}},
          {"scale", r.scale},
          {"config",
           {{"samples", r.cfg.samples},
            {"refine", r.cfg.refine},
            {"tol", r.cfg.tol},
            {"seed", r.cfg.seed}}}};
}

}  // namespace elastica
