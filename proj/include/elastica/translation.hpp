#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastica/elastic.hpp"
#include "elastica/sampling.hpp"

namespace elastica {

using Mat6 = std::array<std::array<double, 6>, 6>;

// Mandel (orthonormal) 6x6 representation: D C D with D = diag(1,1,1,r2,r2,r2),
// r2 = sqrt(2), so that eigenvalues match those of C acting on symmetric
// matrices with the Frobenius inner product.
Mat6 mandel(const StiffnessTensor& c);

// Restriction of a 9x9 quadratic form to symmetric 3x3 arguments, expressed
// in the same Mandel basis.
Mat6 mandel_restrict(const QuadraticForm& f);

struct EigSym6 {
  std::array<double, 6> w;                  // ascending
  std::array<std::array<double, 6>, 6> v;   // v[i] pairs with w[i]
};
EigSym6 eig6_sym(const Mat6& m);

// ---------------------------------------------------------------------------
// Translation bound gap for a two-phase medium: C_i - t Q must stay psd in
// each phase for the translation t Q (a rank-one-convex null-ish comparison
// form) to be admissible.
// ---------------------------------------------------------------------------

struct TwoPhaseSetup {
  StiffnessTensor phase1;
  StiffnessTensor phase2;
  QuadraticForm translation;  // acting on symmetric strains
  double t = 1.0;
};

struct PhaseGap {
  bool psd = false;          // min eigenvalue >= -tol * scale
  double min_eigenvalue = 0.0;
  double scale = 1.0;
};

struct GapReport {
  PhaseGap phase1;
  PhaseGap phase2;
  bool admissible = false;   // both phases psd
  // Directions (unit symmetric matrices, Mandel coordinates) with
  // |eigenvalue| <= degenerate_tol * scale in either phase.
  std::vector<std::array<double, 6>> degenerate_directions;
  double tol = 1e-10;
  double degenerate_tol = 1e-10;
};

GapReport translation_gap(const TwoPhaseSetup& setup, double tol = 1e-10,
                          double degenerate_tol = 1e-10);

nlohmann::json to_json(const GapReport& r);

// Maps a degenerate Mandel direction back to a symmetric 3x3 matrix.
Mat3 mandel_to_sym(const std::array<double, 6>& m);

// ---------------------------------------------------------------------------
// Periodic displacement fields on an N^3 grid and the Fourier test of the
// quasiconvexity inequality  mean f(grad u) >= f(0) = 0  for periodic u.
// ---------------------------------------------------------------------------

struct PeriodicField {
  int n = 0;                      // grid size per axis
  std::vector<double> data;       // 3 components, row-major, x fastest:
                                  // data[3*((ix*n + iy)*n + iz) + comp]

  double& at(int ix, int iy, int iz, int comp) {
    return data[3 * (static_cast<size_t>((ix * n + iy)) * n + iz) + comp];
  }
  double at(int ix, int iy, int iz, int comp) const {
    return data[3 * (static_cast<size_t>((ix * n + iy)) * n + iz) + comp];
  }
};

// Raw little-endian float64 payload plus a JSON sidecar header
// {"N": n, "layout": "row-major", "components": 3}.
void write_field(const PeriodicField& f, const std::string& data_path,
                 const std::string& header_path);
PeriodicField read_field(const std::string& data_path,
                         const std::string& header_path);

PeriodicField random_field(int n, uint64_t seed);
// u(x) = a * cos(2 pi k . x / n), sampled on the grid.
PeriodicField single_mode_field(int n, const std::array<int, 3>& k,
                                const Vec3& a);
// Zero-extension preprocessing: keeps samples where mask != 0 (mask has n^3
// entries in the field's scalar layout) and zeroes the rest.
PeriodicField zero_outside(PeriodicField u, const std::vector<uint8_t>& mask);

struct ModeTerm {
  std::array<int, 3> k;
  double value;  // f(Re uhat (x) kappa) + f(Im uhat (x) kappa), kappa = 2 pi k
};

struct FourierReport {
  double total = 0.0;        // sum over nonzero modes == mean f(grad u)
  double field_norm2 = 0.0;  // mean |u|^2 over grid points
  bool nonnegative = true;   // total >= -tol * field_norm2
  bool special = false;      // every mode term <= tol * scale (u is a
                             // zero-energy oscillation for f)
  // Modes whose term exceeds the specialness threshold tol * scale, where
  // scale = max(1, mean |grad u|^2).
  std::vector<ModeTerm> violating_modes;
  double plancherel_rel_err = 0.0;  // |sum - real-space quadrature| / scale
  double tol = 1e-8;
};

FourierReport fourier_quasiconvexity_check(const QuadraticForm& f,
                                           const PeriodicField& u,
                                           double tol = 1e-8);
FourierReport fourier_quasiconvexity_check(const StiffnessTensor& c,
                                           const PeriodicField& u,
                                           double tol = 1e-8);

nlohmann::json to_json(const FourierReport& r);

}  // namespace elastica
