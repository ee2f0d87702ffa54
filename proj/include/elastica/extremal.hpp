#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastica/elastic.hpp"
#include "elastica/homopoly.hpp"
#include "elastica/lp.hpp"

namespace elastica {

// ---------------------------------------------------------------------------
// Extremality of a nonnegative homogeneous polynomial: p is extremal when the
// only nonnegative polynomials q (same degree) with p - q nonnegative are
// scalar multiples of p. Tested by linear programming over coefficient space
// with constraint exchange on the sphere.
// ---------------------------------------------------------------------------

struct PolyExtremalityConfig {
  int samples = 2000;        // base sphere sample budget per round
  int rounds = 8;            // constraint-exchange rounds
  int directions = 64;       // random LP objectives orthogonal to p
  double tol = 1e-6;         // relative deviation threshold
  uint64_t seed = 1;
  bool even_only = true;     // restrict candidates to even exponents (p even)
  int verify_samples = 60000;  // budget when certifying a witness
};

struct PolyExtremalityReport {
  enum class Verdict { kExtremal, kNotExtremal, kInconclusive };
  Verdict verdict = Verdict::kInconclusive;
  // Witness q (0 <= q <= p, q far from span{p}), present iff kNotExtremal.
  std::optional<HomoPoly> witness;
  double max_deviation = 0.0;  // max over directions of |c . q*| / ||p||_2
  int samples = 0;             // constraint count in the final LP
  double tol = 1e-6;
  PolyExtremalityConfig cfg;
};

PolyExtremalityReport poly_extremality(const HomoPoly& p,
                                       const PolyExtremalityConfig& cfg = {});

std::string verdict_name(PolyExtremalityReport::Verdict v);
nlohmann::json to_json(const PolyExtremalityReport& r);

// ---------------------------------------------------------------------------
// Extremality of a rank-one convex quadratic form: f is extremal when no
// rank-one form (B:xi)^2 can be subtracted while preserving rank-one
// convexity. For fixed B the largest admissible t has the closed form
//   t*(B) = inf_{y in S^2, b(y) != 0} 1 / (b(y)^T T(y)^+ b(y)),
// with b(y) = B y, provided b(y) stays in range(T(y)); the infimum is 0 when
// it escapes. The outer search ascends over B.
// ---------------------------------------------------------------------------

struct FormExtremalityConfig {
  int starts = 200;           // outer multi-start count
  int inner_samples = 2000;   // sphere budget for the inner infimum
  int inner_refine = 40;      // local refinement iterations (inner)
  int ascent_iters = 160;     // derivative-free ascent iterations (outer)
  // t below this counts as zero. For an extremal form the ascent can park B
  // on matrices that vanish on the form's rank-one zero set, where subtracting
  // t(B:xi)^2 dips negative only at depths ~t^2; the certify pass resolves
  // violations down to ~1e-11 * scale, so t estimates below ~3e-6 cannot be
  // refuted even in principle. The threshold keeps a wide margin above that
  // floor while staying far below any genuine rank-one subtraction.
  double tol = 1e-4;
  uint64_t seed = 1;
  bool symmetrized_rank_one = false;  // restrict B to symmetric matrices
};

struct FormExtremalityStart {
  RatMatrix B;    // normalized candidate (rounded for reporting)
  double t;       // estimated t*(B)
  bool verified;  // rank_one_convexity(f - t (B:xi)^2) held at re-check
};

struct FormExtremalityReport {
  enum class Verdict { kExtremal, kNotExtremal, kInconclusive };
  Verdict verdict = Verdict::kInconclusive;
  // Best subtractable direction, present iff kNotExtremal.
  std::optional<RankOneForm> witness_b;
  double witness_t = 0.0;
  bool witness_verified = false;
  double max_t = 0.0;  // best t over all starts
  std::vector<FormExtremalityStart> best_t_by_start;
  FormExtremalityConfig cfg;
};

FormExtremalityReport form_extremality(const QuadraticForm& f,
                                       const FormExtremalityConfig& cfg = {});
FormExtremalityReport form_extremality(const StiffnessTensor& c,
                                       const FormExtremalityConfig& cfg = {});

std::string verdict_name(FormExtremalityReport::Verdict v);
nlohmann::json to_json(const FormExtremalityReport& r);

// Largest admissible t for one fixed direction B (the inner problem alone).
double rank_one_budget(const QuadraticForm& f, const RatMatrix& b,
                       const FormExtremalityConfig& cfg = {});

// ---------------------------------------------------------------------------
// Equivalence of polynomials under invertible linear substitution: exact
// coefficient-level test of p(y) == q(A y). Throws std::invalid_argument when
// A is singular (the relation is only an equivalence for invertible A).
// ---------------------------------------------------------------------------

bool equivalence_check(const HomoPoly& p, const HomoPoly& q,
                       const LinearSubstitution& a);

// ---------------------------------------------------------------------------
// Audit of the determinant criterion for orthotropic tensors: when
// C11 C22 C33 != 0 and det T(y) is an extremal polynomial that is not a
// perfect square, the quadratic form itself must be extremal. The audit
// evaluates every hypothesis numerically, runs the direct form search as
// well, and reports whether the observed combination is consistent with the
// implication (hypotheses holding while a verified rank-one subtraction
// exists would flag a contradiction worth a tolerance review).
// ---------------------------------------------------------------------------

struct Theorem51Config {
  RankOneConvexityConfig convexity;
  FormExtremalityConfig form;
  PolyExtremalityConfig poly;
  double tol = 1e-6;
};

struct Theorem51Report {
  // All determinant-side hypotheses hold: rank-one convexity,
  // C11 C22 C33 != 0, det not identically zero, det extremal and not a
  // perfect square.
  bool hypotheses_satisfied = false;
  bool rank_one_convex = false;
  bool form_extremal = false;
  bool normal_product_nonzero = false;
  bool det_identically_zero = false;
  bool det_extremal = false;
  bool det_perfect_square = false;
  bool consistent = true;  // implication not falsified by the observations
  RankOneConvexityReport convexity;
  HomoPoly det;
  // Extremality searches are skipped (nullopt) when the form is not rank-one
  // convex or the determinant vanishes identically; both make the verdicts
  // undefined rather than false.
  std::optional<FormExtremalityReport> form_report;
  std::optional<PolyExtremalityReport> poly_report;
  std::optional<HomoPoly> square_root;  // present if det is a perfect square
};

// Requires c.is_orthotropic(); throws std::invalid_argument otherwise.
Theorem51Report theorem51_audit(const StiffnessTensor& c,
                                const Theorem51Config& cfg = {});

nlohmann::json to_json(const Theorem51Report& r);

}  // namespace elastica
