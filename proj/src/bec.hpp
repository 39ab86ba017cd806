#pragma once

#include "objective.hpp"

namespace fscap {

// Binary erasure channel under the (1,inf)-RLL input constraint. The input
// chain over {1,2} has transition matrix [[1-theta, theta], [1, 0]]; the
// erasure process is i.i.d. with P(erased) = epsilon.
struct BecRllChannel {
  double epsilon;
};

// Partial sum f_k(theta) of the erasure-weighted entropy series, in nats.
// f_0 = f_1 by convention; theta in {0,1} yields 0 (all entropies vanish).
double bec_fk(const BecRllChannel& ch, double theta, int k);

// The BEC objective sequence over Theta = [0.2, 0.6] with constants
// N = 371, rho = 0.1, M = 5.81, m = 1.88, k0 = 18.
ObjectiveSequence bec_objective(const BecRllChannel& ch);

// Birch lower bound H(Y_6 | Y_5, Y_4, Y_3, X_2, X_1) - H(epsilon) for the
// second-order input chain on blocks {11, 12, 21}, by exact enumeration
// over (x_1^6, e_3^6).
double birch_bound_bec(double p, double q, double epsilon);

}  // namespace fscap
