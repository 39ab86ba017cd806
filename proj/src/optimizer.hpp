#pragma once

#include <vector>

#include "objective.hpp"

namespace fscap {

struct Algo1Config {
  double alpha = 0.4;              // Armijo fraction, in (0, 0.5)
  double beta = 0.9;               // backtracking factor, in (0, 1)
  std::vector<double> theta0;      // interior starting point
  int outer_iters = 100;
  int max_backtracks = 200;        // safety cap; the theory bounds T(k) uniformly
};

struct Algo3Config {
  Algo1Config base;
  double b = 0.5;                  // gradient-floor parameter, in (0, 1)
  double y0 = -1e300;              // level of the B set checked at Step 0
};

struct IterateRecord {
  int outer_k = 0;                 // index of the objective used: k0 + k
  std::vector<double> theta;       // accepted iterate theta_k
  double f_value = 0.0;            // g_k(theta_k)
  double grad_norm = 0.0;          // ||grad g_k(theta_k)||_2
  double step_t = 1.0;             // accepted t = beta^backtracks
  int backtracks = 0;              // T(k)
  bool perturbed = false;          // zero-gradient branch taken (Algorithm 1)
  bool floor_active = false;       // gradient floor was the last blocker (Algorithm 3)
};

// Backtracking exhausted the safety cap; carries the iterates accepted so
// far. Signals mis-specified constants for Algorithm 1 and is the documented
// stopping signal near stationary points for Algorithm 3.
class BacktrackError : public Error {
 public:
  BacktrackError(const std::string& what, std::vector<IterateRecord> partial)
      : Error(what), partial_trace(std::move(partial)) {}
  std::vector<IterateRecord> partial_trace;
};

// Backtracking gradient ascent on g_k = f_{k + k0} with the perturbed Armijo
// slack (N(k+k0)+M) M t rho^{k+k0} absorbing the drift of the objective
// sequence. Requires the strong-concavity modulus m.
std::vector<IterateRecord> run_algorithm1(const ObjectiveSequence& seq,
                                          const Algo1Config& cfg);

// Variant without concavity: the Armijo condition loses its slack and a
// gradient-norm floor 2 N(k+k0) rho^{(k+k0)/3} / (1-b) prevents premature
// convergence to non-stationary points.
std::vector<IterateRecord> run_algorithm3(const ObjectiveSequence& seq,
                                          const Algo3Config& cfg);

}  // namespace fscap
