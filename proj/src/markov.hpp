#pragma once

#include <Eigen/Dense>

#include "errors.hpp"

namespace fscap {

// Binary entropy in nats with the 0*ln 0 := 0 convention. Values within
// 1e-12 of [0,1] are clamped; anything further out is a domain error.
double binary_entropy(double p);

class MarkovChain {
 public:
  // Validates row sums (within 1e-12) and non-negativity.
  explicit MarkovChain(Eigen::MatrixXd transition);

  int size() const { return static_cast<int>(p_.rows()); }
  const Eigen::MatrixXd& matrix() const { return p_; }

  // Some power of P entrywise positive, checked up to the Wielandt bound
  // s^2 - 2s + 2. Requires size <= 64.
  bool is_primitive() const;

 private:
  Eigen::MatrixXd p_;
};

// The unique pi with pi P = pi, pi >= 0, sum pi = 1, found by a direct
// linear solve. Throws for non-primitive chains.
Eigen::VectorXd stationary_distribution(const MarkovChain& chain);

}  // namespace fscap
