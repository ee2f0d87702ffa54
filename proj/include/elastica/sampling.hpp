#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace elastica {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 normalized(const Vec3& a);

// Deterministic quasi-uniform covering of the unit sphere (golden-angle
// spiral). Independent of any seed.
std::vector<Vec3> fibonacci_sphere(int n);

// Axes, space diagonals and face diagonals; cheap symmetric anchors that the
// scan seeds always include.
const std::vector<Vec3>& structured_directions();

// Seeded RNG with explicitly specified algorithms so that streams are stable
// across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform();                 // [0,1)
  double uniform(double a, double b);
  int uniform_int(int lo, int hi);  // inclusive
  double gauss();                   // Box-Muller, no state carried between calls
  Vec3 unit_vec3();
  std::vector<double> gauss_vec(int n);

 private:
  std::mt19937_64 gen_;
};

struct SphereMin {
  Vec3 y;
  double value;
};

// Local minimization of f on the unit sphere: Nelder-Mead in a tangent-plane
// chart, re-anchored as the iterate moves. Deterministic.
SphereMin minimize_on_sphere(const std::function<double(const Vec3&)>& f,
                             const Vec3& seed, int max_iters = 220,
                             double tol = 1e-13);

// Thread budget: min(hardware, ELASTICA_THREADS if set). Always >= 1.
int thread_budget();

// Runs fn(i) for i in [0,n) on up to thread_budget() threads. The caller
// writes results into per-index slots, so reductions stay deterministic.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace elastica
