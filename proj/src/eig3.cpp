#include "elastica/eig3.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

namespace {

double dot3(const double* a, const double* b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void cross3(const double* a, const double* b, double* out) {
  out[0] = a[1] * b[2] - a[2] * b[1];
  out[1] = a[2] * b[0] - a[0] * b[2];
  out[2] = a[0] * b[1] - a[1] * b[0];
}

double norm3(const double* a) { return std::sqrt(dot3(a, a)); }

// Cyclic Jacobi sweeps; robust for any symmetric 3x3.
Eig3 jacobi(Mat3 a) {
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int sweep = 0; sweep < 40; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = c * c * app - 2 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        const int r = 3 - p - q;
        const double arp = a[r][p], arq = a[r][q];
        a[r][p] = a[p][r] = c * arp - s * arq;
        a[r][q] = a[q][r] = s * arp + c * arq;
        for (int i = 0; i < 3; ++i) {
          const double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
  }
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return a[i][i] < a[j][j]; });
  Eig3 out;
  for (int k = 0; k < 3; ++k) {
    out.w[k] = a[idx[k]][idx[k]];
    for (int i = 0; i < 3; ++i) out.v[k][i] = v[i][idx[k]];
  }
  return out;
}

}  // namespace

Eig3 eig3_sym_jacobi(const Mat3& a) {
  double scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  if (scale == 0.0) {
    return Eig3{{0, 0, 0}, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  }
  Mat3 m = a;
  for (auto& row : m)
    for (double& x : row) x /= scale;
  Eig3 out = jacobi(m);
  for (double& x : out.w) x *= scale;
  return out;
}

Eig3 eig3_sym(const Mat3& a) {
  // Scale to avoid overflow in the cubic characteristic polynomial.
  double scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  if (scale == 0.0) {
    return Eig3{{0, 0, 0}, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  }
  Mat3 m = a;
  for (auto& row : m)
    for (double& x : row) x /= scale;

  // Closed-form eigenvalues of a symmetric 3x3 (trigonometric solution of the
  // characteristic cubic).
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                    (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
  if (p2 < 1e-28) {
    // Numerically a multiple of the identity.
    Eig3 out{{q * scale, q * scale, q * scale},
             {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
    return out;
  }
  const double p = std::sqrt(p2 / 6.0);
  Mat3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
  const double detb =
      b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
      b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
      b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  double r = detb / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  std::array<double, 3> w;
  w[2] = q + 2.0 * p * std::cos(phi);
  w[0] = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  w[1] = 3.0 * q - w[0] - w[2];

  // Eigenvectors from cross products of rows of (m - w I); fall back to
  // Jacobi when the spectrum is too clustered for that to be stable.
  const double gap01 = std::fabs(w[1] - w[0]);
  const double gap12 = std::fabs(w[2] - w[1]);
  if (std::min(gap01, gap12) < 1e-7 * std::max(1.0, std::fabs(w[2]))) {
    Eig3 out = jacobi(m);
    for (double& x : out.w) x *= scale;
    return out;
  }
  Eig3 out;
  for (int k = 0; k < 3; ++k) {
    double rows[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rows[i][j] = m[i][j] - (i == j ? w[k] : 0.0);
    double best[3] = {0, 0, 0};
    double best_n = -1.0;
    for (int i = 0; i < 3; ++i) {
      double c[3];
      cross3(rows[i], rows[(i + 1) % 3], c);
      const double n = norm3(c);
      if (n > best_n) {
        best_n = n;
        best[0] = c[0];
        best[1] = c[1];
        best[2] = c[2];
      }
    }
    if (best_n < 1e-12) {
      Eig3 fallback = jacobi(m);
      for (double& x : fallback.w) x *= scale;
      return fallback;
    }
    for (int i = 0; i < 3; ++i) out.v[k][i] = best[i] / best_n;
    out.w[k] = w[k] * scale;
  }
  return out;
}

double eig3_min(const Mat3& a) { return eig3_sym(a).w[0]; }

}  // namespace elastica
