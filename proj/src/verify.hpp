#pragma once

#include <vector>

#include "objective.hpp"

namespace fscap {

// Grid-based audit of the initialization lemmas. delta_est is the gap
// between the interior maximum and the boundary maximum of a late proxy
// objective f_K; y0 is chosen centrally inside that gap; dist_c_boundary is
// the distance from the sublevel witness set C = {f_k0 >= y0 - delta/8} to
// the boundary of the box.
struct LemmaReport {
  double delta_est = 0.0;
  double y0 = 0.0;
  int k0_checked = 0;
  std::array<double, 2> cond_a_lhs{0.0, 0.0};
  double dist_c_boundary = 0.0;
  bool passed = false;
  std::vector<double> witness;  // suggested theta0 (gradient-floor scan), may be empty
};

using Lemma1Report = LemmaReport;

// Conditions of the strongly concave initialization lemma:
//   (a) ((N+M) M rho^{k0+1} + 2 N rho^{k0+1})/(1-rho) <= delta/8
//       and N rho^{k0} <= delta/8,
//   (c) dist(C_{k0}, boundary) > 0.
// proxy_k < 0 uses k0 + 40 (clamped to the objective's proxy_k_limit).
LemmaReport verify_lemma1(const ObjectiveSequence& seq, int grid_points,
                          int proxy_k = -1);

// Conditions of the non-concave initialization lemma:
//   (a) rho^{1/3} + rho^{2 k0/3} < 1 and 2 N rho^{k0}/(1-rho) <= delta/8,
//   (b) a grid point with ||grad f_k0|| >= 2 N rho^{k0/3}/(1-b) and
//       f_k0 >= y0 exists (returned as the witness).
LemmaReport verify_lemma5(const ObjectiveSequence& seq, double b, int grid_points,
                          int proxy_k = -1);

}  // namespace fscap
