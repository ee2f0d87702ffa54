#include "elastica/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace elastica {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (n == 0.0) return {1.0, 0.0, 0.0};
  return {a[0] / n, a[1] / n, a[2] / n};
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> pts;
  pts.reserve(std::max(n, 0));
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double th = golden * i;
    pts.push_back({r * std::cos(th), r * std::sin(th), z});
  }
  return pts;
}

const std::vector<Vec3>& structured_directions() {
  static const std::vector<Vec3> dirs = [] {
    std::vector<Vec3> d;
    d.push_back({1, 0, 0});
    d.push_back({0, 1, 0});
    d.push_back({0, 0, 1});
    const double s = 1.0 / std::sqrt(3.0);
    for (int s2 : {1, -1})
      for (int s3 : {1, -1}) d.push_back({s, s2 * s, s3 * s});
    const double q = 1.0 / std::sqrt(2.0);
    for (int sgn : {1, -1}) {
      d.push_back({q, sgn * q, 0});
      d.push_back({q, 0, sgn * q});
      d.push_back({0, q, sgn * q});
    }
    return d;
  }();
  return dirs;
}

double Rng::uniform() {
  // 53-bit mantissa from the top bits; stable across library implementations.
  return (gen_() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

double Rng::gauss() {
  // Box-Muller; draws exactly two variates and discards the second so the
  // stream position is a deterministic function of the call count.
  for (;;) {
    const double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) continue;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
}

Vec3 Rng::unit_vec3() {
  for (;;) {
    const Vec3 v{gauss(), gauss(), gauss()};
    const double n = norm(v);
    if (n > 1e-12) return {v[0] / n, v[1] / n, v[2] / n};
  }
}

std::vector<double> Rng::gauss_vec(int n) {
  std::vector<double> v(n);
  for (double& x : v) x = gauss();
  return v;
}

namespace {

// Orthonormal tangent basis at y.
void tangent_basis(const Vec3& y, Vec3& u, Vec3& v) {
  const Vec3 a = std::fabs(y[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  u = {y[1] * a[2] - y[2] * a[1], y[2] * a[0] - y[0] * a[2],
       y[0] * a[1] - y[1] * a[0]};
  u = normalized(u);
  v = {y[1] * u[2] - y[2] * u[1], y[2] * u[0] - y[0] * u[2],
       y[0] * u[1] - y[1] * u[0]};
}

}  // namespace

SphereMin minimize_on_sphere(const std::function<double(const Vec3&)>& f,
                             const Vec3& seed, int max_iters, double tol) {
  Vec3 center = normalized(seed);
  double step = 0.35;
  // Nelder-Mead on 2D tangent coordinates; the chart is re-anchored at the
  // current best vertex whenever the simplex is rebuilt.
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  Vec3 u, v;
  auto lift = [&](double a, double b) {
    return normalized(Vec3{center[0] + a * u[0] + b * v[0],
                           center[1] + a * u[1] + b * v[1],
                           center[2] + a * u[2] + b * v[2]});
  };
  double best_val = f(center);
  Vec3 best_y = center;
  int evals = 0;
  for (int restart = 0; restart < 3; ++restart) {
    tangent_basis(center, u, v);
    struct Pt {
      double a, b, val;
    };
    std::array<Pt, 3> s = {Pt{0, 0, f(lift(0, 0))}, Pt{step, 0, f(lift(step, 0))},
                           Pt{0, step, f(lift(0, step))}};
    for (int it = 0; it < max_iters && evals < 4 * max_iters; ++it) {
      std::sort(s.begin(), s.end(),
                [](const Pt& x, const Pt& yv) { return x.val < yv.val; });
      if (std::fabs(s[2].val - s[0].val) <
          tol * (1.0 + std::fabs(s[0].val)))
        break;
      const double ca = (s[0].a + s[1].a) / 2, cb = (s[0].b + s[1].b) / 2;
      const double ra = ca + alpha * (ca - s[2].a), rb = cb + alpha * (cb - s[2].b);
      const double fr = f(lift(ra, rb));
      ++evals;
      if (fr < s[0].val) {
        const double ea = ca + gamma * (ra - ca), eb = cb + gamma * (rb - cb);
        const double fe = f(lift(ea, eb));
        ++evals;
        s[2] = fe < fr ? Pt{ea, eb, fe} : Pt{ra, rb, fr};
      } else if (fr < s[1].val) {
        s[2] = {ra, rb, fr};
      } else {
        const double ka = ca + rho * (s[2].a - ca), kb = cb + rho * (s[2].b - cb);
        const double fk = f(lift(ka, kb));
        ++evals;
        if (fk < s[2].val) {
          s[2] = {ka, kb, fk};
        } else {
          for (int i = 1; i < 3; ++i) {
            s[i].a = s[0].a + sigma * (s[i].a - s[0].a);
            s[i].b = s[0].b + sigma * (s[i].b - s[0].b);
            s[i].val = f(lift(s[i].a, s[i].b));
            ++evals;
          }
        }
      }
    }
    std::sort(s.begin(), s.end(),
              [](const Pt& x, const Pt& yv) { return x.val < yv.val; });
    const Vec3 cand = lift(s[0].a, s[0].b);
    const double cand_val = f(cand);
    if (cand_val < best_val) {
      best_val = cand_val;
      best_y = cand;
    }
    // Re-anchor and shrink the initial simplex for the next pass.
    center = best_y;
    step *= 0.12;
    if (step < 1e-9) break;
  }
  return {best_y, best_val};
}

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("ELASTICA_THREADS")) {
    try {
      const int req = std::stoi(env);
      if (req >= 1) return std::min(hw, req);
    } catch (...) {
    }
  }
  return hw;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int nthreads = std::min(thread_budget(), std::max(n, 1));
  if (nthreads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += nthreads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace elastica
