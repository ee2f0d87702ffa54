#pragma once

#include <cstdint>

#include <json.hpp>

#include "elastica/homopoly.hpp"
#include "elastica/sampling.hpp"

namespace elastica {

struct NonnegConfig {
  int samples = 20000;   // Fibonacci-sphere seeds
  int refine = 50;       // local descents from the k best seeds
  double tol = 1e-9;     // relative to the observed value scale
  uint64_t seed = 1;
};

struct NonnegReport {
  bool nonnegative = true;      // min_value >= -tol*scale
  double min_value = 0.0;
  Vec3 argmin{0, 0, 0};
  double scale = 1.0;           // max(1, max |sampled value|)
  NonnegConfig cfg;
};

// Minimizes p over the unit sphere: quasi-uniform seeding plus local descent
// from the best seeds; witness chosen by minimal value, ties by lexicographic
// y. Requires nvars == 3 and even degree.
NonnegReport nonneg_check(const HomoPoly& p, const NonnegConfig& cfg = {});
NonnegReport nonneg_check(const CompiledPoly& p, const NonnegConfig& cfg = {});

nlohmann::json to_json(const NonnegReport& r);

}  // namespace elastica
