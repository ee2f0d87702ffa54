#pragma once

#include "elastica/elastic.hpp"
#include "elastica/homopoly.hpp"

namespace elastica {
namespace fixtures {

// y1^4 y2^2 + y2^4 y3^2 + y3^4 y1^2 - 3 y1^2 y2^2 y3^2.
HomoPoly cyclic_sextic();

// The cyclic sextic with y2 and y3 swapped:
// y1^4 y3^2 + y1^2 y2^4 + y2^2 y3^4 - 3 y1^2 y2^2 y3^2.
HomoPoly cyclic_sextic_swapped();

// y1^2 y2^2 y3^2.
HomoPoly triple_square();

// (y1^2 + y2^2)(y1^2 + y2^2 + y3^2)^2.
HomoPoly split_sextic();

// Quadratic form on general 3x3 matrices (it does not come from a stiffness
// tensor):
//   xi11^2 + xi22^2 + xi33^2 - 2(xi11 xi22 + xi11 xi33 + xi22 xi33)
//     + xi12^2 + xi23^2 + xi31^2.
// Acoustic matrix: T11 = y1^2+y2^2, T22 = y2^2+y3^2, T33 = y3^2+y1^2,
// T12 = -y1 y2, T13 = -y1 y3, T23 = -y2 y3; its determinant is
// cyclic_sextic_swapped().
QuadraticForm cyclic_form();

// Orthotropic tensor whose quadratic form agrees with cyclic_form() on
// symmetric matrices: C11 = C22 = C33 = 1, C12 = C13 = C23 = -1,
// C44 = C55 = C66 = 1/4.
StiffnessTensor cyclic_stiffness();

// Diagonal stiffness C = diag(c11,...,c66) in Voigt order.
StiffnessTensor diagonal_stiffness(const std::array<Rational, 6>& d);

// xi11^2 + xi22^2 + xi33^2 with zero shear stiffness, acoustic det
// y1^2 y2^2 y3^2: extremal determinant but not an extremal form
// (t*(e1 (x) e1) = 1).
StiffnessTensor normal_squares_stiffness();

// (xi11 + xi22)^2 + xi33^2: degenerate, acoustic det == 0.
StiffnessTensor two_diag_squares_stiffness();

// Isotropic lambda = mu = 1.
StiffnessTensor isotropic_stiffness();

}  // namespace fixtures
}  // namespace elastica
