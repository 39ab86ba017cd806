#pragma once

#include <functional>

#include "hidden_markov.hpp"
#include "objective.hpp"

namespace fscap {

// Finite-state channel in the generic small-k form: an analytically
// parameterized input chain, a strictly positive state kernel
// p(s_n | x_n, s_{n-1}) and a strictly positive emission p(y_n | x_n, s_{n-1}).
// Kernel rows are indexed by (x, s_prev) as x * ns + s_prev.
struct GenericFsc {
  int nx = 0;
  int ns = 0;
  int ny = 0;
  std::function<Eigen::MatrixXd(std::span<const double>)> input_param;
  Eigen::MatrixXd state_kernel;  // (nx*ns) x ns
  Eigen::MatrixXd emission;      // (nx*ns) x ny

  void validate() const;
};

// f_k(theta) = H(X_2|X_1) + H(Y_{k+1}|Y_1^k) - H(X_{k+1},Y_{k+1}|X_1^k,Y_1^k)
// computed exactly; the joint enumeration is exponential in k, so k <= 10.
double generic_fsc_fk(const GenericFsc& fsc, std::span<const double> theta, int k);

// The (1,inf)-RLL input family [[1-theta, theta], [1, 0]] used by the
// instantiated binary channels.
Eigen::MatrixXd rll_input_matrix(double theta);

}  // namespace fscap
