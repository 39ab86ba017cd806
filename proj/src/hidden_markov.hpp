#pragma once

#include <Eigen/Dense>

#include "markov.hpp"

namespace fscap {

// Hidden-state chain plus an emission kernel. The observation at time t
// depends on the hidden state at time t; init is the distribution of the
// hidden state at time 1 (the stationary one unless overridden).
class HiddenMarkovSource {
 public:
  // init defaults to the stationary distribution of the chain.
  HiddenMarkovSource(MarkovChain chain, Eigen::MatrixXd emission);
  HiddenMarkovSource(MarkovChain chain, Eigen::MatrixXd emission, Eigen::VectorXd init,
                     bool init_is_stationary = false);

  int hidden_states() const { return chain_.size(); }
  int alphabet_size() const { return static_cast<int>(emission_.cols()); }
  const MarkovChain& chain() const { return chain_; }
  const Eigen::MatrixXd& emission() const { return emission_; }
  const Eigen::VectorXd& init() const { return init_; }

 private:
  void validate(bool init_is_stationary) const;

  MarkovChain chain_;
  Eigen::MatrixXd emission_;
  Eigen::VectorXd init_;
};

// H(Y_n | Y_1^{n-1}) in nats, exact up to rounding, by depth-first traversal
// of the output tree carrying the forward vector alpha(y_1^t). Prefixes with
// probability below 1e-300 are pruned; their subtree contributes < 1e-290.
// Cost O(|O|^n * |H|).
double conditional_entropy_forward(const HiddenMarkovSource& src, int n, int n_max = 22);

// Same quantity by explicit summation over all hidden paths,
// cost O(|O|^n * |H|^{n+1}). Independent oracle for the forward recursion.
double conditional_entropy_bruteforce(const HiddenMarkovSource& src, int n);

}  // namespace fscap
