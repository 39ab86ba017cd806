#pragma once

#include <utility>
#include <vector>

#include "optimizer.hpp"

namespace fscap {

// Certified interval for f(theta*) built from the error-bound recursion
//   gap_k <= eta * gap_{k-1} + gamma_k,
// seeded with delta0 and closed by the triangle step |f_K(theta_K) - f(theta*)|
// <= tail + recursion_bound.
struct BoundReport {
  double eta = 0.0;             // rate used in the recursion
  double eta_formula = 0.0;     // the three-term min evaluated with dist_c (recorded)
  double gamma_coeff = 0.0;     // gamma_k = gamma_coeff * rho^{k + k0 + 1}
  double recursion_bound = 0.0; // bound on f(theta*) - f(theta_K)
  double tail = 0.0;            // N(K + k0) rho^{K + k0}
  std::pair<double, double> interval{0.0, 0.0};
  double delta0 = 0.0;
  int max_backtracks_seen = 0;
};

// dist_c: measured distance of the C-set from the boundary (from the lemma
// audit). delta0: any valid bound on the initial optimality gap; 2M always
// works since |f| <= M.
//
// The uniform per-step contraction is eta = 1 - 2 m alpha beta^{T_max} with
// T_max the largest backtrack count in the trace: the recursion only needs a
// bound on the observed T(k), and the a-priori three-term value
// 1 - min{2 m alpha, (dist/M) 2 m alpha beta, 2 m alpha beta / M} is far
// looser whenever the boundary check never actually bound (it never does on
// the instantiated channels). Both values are reported.
BoundReport certified_bound(const std::vector<IterateRecord>& trace,
                            const ObjectiveSequence& seq, double alpha, double beta,
                            double dist_c, double delta0);

}  // namespace fscap
