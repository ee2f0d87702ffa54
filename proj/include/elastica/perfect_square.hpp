#pragma once

#include <cstdint>
#include <optional>

#include <json.hpp>

#include "elastica/homopoly.hpp"

namespace elastica {

struct PerfectSquareConfig {
  double tol = 1e-8;            // relative residual threshold for the numeric path
  int starts = 12;              // extra random least-squares starts
  uint64_t seed = 1;
  unsigned long max_den = 1000000;  // rational rounding denominator cap
};

struct PerfectSquareReport {
  bool square = false;
  bool exact = false;           // verdict certified by exact arithmetic
  // When square: p == root_scale * root^2 exactly. root is sign-canonical
  // (leading coefficient positive); root_scale > 0 absorbs a square-free
  // factor when the square root of the leading coefficient is irrational
  // (e.g. 3 y1^2 = 3 * (y1)^2).
  std::optional<HomoPoly> root;
  Rational root_scale = 1;
  double residual = 0.0;        // best relative coefficient residual ||p - q^2||/||p||
  PerfectSquareConfig cfg;
};

// Decides whether p is the square of a single homogeneous polynomial with
// real coefficients. Exact path: greedy leading-term extraction of the monic
// square root over Q, which is complete — any real square root of a rational
// polynomial is a rational polynomial times the square root of the leading
// coefficient. Numeric path (corroborative): multi-start Levenberg-Marquardt
// on the coefficient residual, seeded from sign-traced square roots of p
// along a sphere-covering path; reported in `residual`.
PerfectSquareReport perfect_square_check(const HomoPoly& p,
                                         const PerfectSquareConfig& cfg = {});

nlohmann::json to_json(const PerfectSquareReport& r);

}  // namespace elastica
