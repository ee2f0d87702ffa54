#pragma once

#include <cstdint>

#include "elastica/extremal.hpp"
#include "elastica/nonneg.hpp"
#include "elastica/perfect_square.hpp"

namespace elastica {

// Shared knobs threaded through the CLI; fields mirror the per-algorithm
// configs and are copied into them before a run.
struct RunConfig {
  uint64_t seed = 1;
  double tol = 0.0;   // 0 keeps each algorithm's own default
  int samples = 0;    // likewise
  int starts = 0;

  NonnegConfig nonneg() const {
    NonnegConfig c;
    c.seed = seed;
    if (tol > 0) c.tol = tol;
    if (samples > 0) c.samples = samples;
    return c;
  }

  PerfectSquareConfig perfect_square() const {
    PerfectSquareConfig c;
    c.seed = seed;
    if (tol > 0) c.tol = tol;
    if (starts > 0) c.starts = starts;
    return c;
  }

  PolyExtremalityConfig poly_extremality() const {
    PolyExtremalityConfig c;
    c.seed = seed;
    if (tol > 0) c.tol = tol;
    if (samples > 0) c.samples = samples;
    return c;
  }

  FormExtremalityConfig form_extremality() const {
    FormExtremalityConfig c;
    c.seed = seed;
    if (tol > 0) c.tol = tol;
    if (samples > 0) c.inner_samples = samples;
    if (starts > 0) c.starts = starts;
    return c;
  }

  RankOneConvexityConfig rank_one() const {
    RankOneConvexityConfig c;
    c.seed = seed;
    if (tol > 0) c.tol = tol;
    if (samples > 0) c.samples = samples;
    return c;
  }
};

}  // namespace elastica
