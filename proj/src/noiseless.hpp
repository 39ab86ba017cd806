#pragma once

#include "objective.hpp"

namespace fscap {

// Noiseless two-state channel y_n = phi(x_{n-1}, x_n) with phi(0,0) = 1 and
// 0 otherwise; the induced sliding block code has forbidden set {101}.
struct NoiselessTwoState {};

// Partial sum f_k(theta) of the unambiguous-symbol entropy series for an
// i.i.d. input with P(X = 0) = theta, built from pi_1 = theta^2,
// r = (1-theta, 0, 0), c = (0, theta, 0)^T and the 3x3 matrix B_theta.
// Both r B^{-1} 1 and r B^{-1} c are interpreted as 1.
double noiseless_fk(double theta, int k);

// The objective sequence over Theta = [0.4, 0.9] with k0 = 120,
// N(k) = 374.945 k^2 + 6207.73 k + 46587.2, rho = 0.875, m = 1.2, M = 10.37.
ObjectiveSequence noiseless_objective();

// Birch lower bound H(Y_4 | Y_3, X_2, X_1) for the first-order input chain
// on blocks {00, 01, 10, 11}, by exact enumeration.
double birch_bound_noiseless(double p, double q);

}  // namespace fscap
