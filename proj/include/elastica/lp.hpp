#pragma once

#include <vector>

namespace elastica {

// maximize c.x subject to G x <= h, x free.
//
// Solved via a two-phase revised simplex on the dual
//   min h.l  s.t.  G^T l = c, l >= 0,
// whose basis matrices are K x K with K = dim(x) (small here), while the
// column count may run to thousands. At optimality the simplex multipliers of
// the dual basis are an optimal primal vertex. Dantzig pricing with a
// permanent switch to Bland's rule after a degenerate stall.
struct LpResult {
  enum Status { kOptimal, kUnbounded, kInfeasible, kIterLimit } status = kIterLimit;
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

LpResult lp_maximize(const std::vector<double>& c,
                     const std::vector<std::vector<double>>& G,
                     const std::vector<double>& h,
                     int max_iters = 50000);

}  // namespace elastica
