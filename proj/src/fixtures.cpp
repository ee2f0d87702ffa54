#include "elastica/fixtures.hpp"

namespace elastica {
namespace fixtures {

namespace {

HomoPoly mono6(int e1, int e2, int e3, const Rational& c) {
  return HomoPoly::monomial(3, {e1, e2, e3}, c);
}

}  // namespace

HomoPoly cyclic_sextic() {
  HomoPoly p(3, 6);
  p.add_term({4, 2, 0}, 1);
  p.add_term({0, 4, 2}, 1);
  p.add_term({2, 0, 4}, 1);
  p.add_term({2, 2, 2}, -3);
  return p;
}

HomoPoly cyclic_sextic_swapped() {
  HomoPoly p(3, 6);
  p.add_term({4, 0, 2}, 1);
  p.add_term({2, 4, 0}, 1);
  p.add_term({0, 2, 4}, 1);
  p.add_term({2, 2, 2}, -3);
  return p;
}

HomoPoly triple_square() { return mono6(2, 2, 2, 1); }

HomoPoly split_sextic() {
  HomoPoly inner(3, 2);
  inner.add_term({2, 0, 0}, 1);
  inner.add_term({0, 2, 0}, 1);
  HomoPoly norm2(3, 2);
  norm2.add_term({2, 0, 0}, 1);
  norm2.add_term({0, 2, 0}, 1);
  norm2.add_term({0, 0, 2}, 1);
  return mul(inner, poly_pow(norm2, 2));
}

QuadraticForm cyclic_form() {
  RatMatrix g(9, std::vector<Rational>(9, Rational(0)));
  const int diag[3] = {0, 4, 8};  // xi11, xi22, xi33
  for (int i = 0; i < 3; ++i) g[diag[i]][diag[i]] = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) g[diag[i]][diag[j]] = g[diag[j]][diag[i]] = -1;
  g[1][1] = 1;  // xi12^2
  g[5][5] = 1;  // xi23^2
  g[6][6] = 1;  // xi31^2
  return QuadraticForm::from_gram(std::move(g));
}

StiffnessTensor cyclic_stiffness() {
  const Rational q(1, 4);
  return StiffnessTensor::orthotropic(1, 1, 1, -1, -1, -1, q, q, q);
}

StiffnessTensor diagonal_stiffness(const std::array<Rational, 6>& d) {
  return StiffnessTensor::orthotropic(d[0], d[1], d[2], 0, 0, 0, d[3], d[4], d[5]);
}

StiffnessTensor normal_squares_stiffness() {
  return StiffnessTensor::orthotropic(1, 1, 1, 0, 0, 0, 0, 0, 0);
}

StiffnessTensor two_diag_squares_stiffness() {
  return StiffnessTensor::orthotropic(1, 1, 1, 1, 0, 0, 0, 0, 0);
}

StiffnessTensor isotropic_stiffness() { return StiffnessTensor::isotropic(1, 1); }

}  // namespace fixtures
}  // namespace elastica
