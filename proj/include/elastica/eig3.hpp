#pragma once

#include <array>

namespace elastica {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct Eig3 {
  std::array<double, 3> w;                  // ascending
  std::array<std::array<double, 3>, 3> v;   // v[i] is the eigenvector for w[i]
};

// Symmetric 3x3 eigendecomposition: closed-form (trigonometric) eigenvalues
// with cross-product eigenvectors, falling back to cyclic Jacobi sweeps when
// the analytic path loses accuracy (near-degenerate spectrum). Deterministic.
Eig3 eig3_sym(const Mat3& a);

// Cyclic Jacobi sweeps unconditionally: slower than eig3_sym but with
// eigenvalue error on the order of machine epsilon times the matrix norm
// (the closed form can be ~100x noisier), and exact on diagonal input.
Eig3 eig3_sym_jacobi(const Mat3& a);

double eig3_min(const Mat3& a);

}  // namespace elastica
