#pragma once

#include <array>

#include "hidden_markov.hpp"
#include "objective.hpp"

namespace fscap {

// Gilbert-Elliott channel y_n = x_n XOR e_n under the (1,inf)-RLL input
// constraint. The channel state chain selects a BSC crossover probability;
// the input chain over {0,1} is [[1-theta, theta], [1, 0]].
struct GilbertElliott {
  MarkovChain state_chain;            // 2x2
  std::array<double, 2> crossover;    // when S_{n-1} = 0 resp. 1

  GilbertElliott(MarkovChain chain, std::array<double, 2> cross);
};

// Hidden source of the output process: 4 hidden states (x_n, s_{n-1}) with
// transition P((x,s) -> (x',s')) = P_X(x'|x) * P_S(s'|s), emission
// P(y | x, s) = BSC_{crossover[s]}(y | x), initialized at stationarity.
HiddenMarkovSource ge_output_source(const GilbertElliott& ch, double theta);

// Hidden source of the error process: the state chain itself with emission
// row (1 - crossover[s], crossover[s]). Does not consume theta.
HiddenMarkovSource ge_error_source(const GilbertElliott& ch);

// f_k(theta) = H(Y_k | Y_1^{k-1}) - H(E_k | E_1^{k-1}), with f_0 = f_1.
double ge_fk(const GilbertElliott& ch, double theta, int k, int n_max = 22);

// The decay constants (N, rho) are not supplied by the model. They are
// fitted by regressing ln|f_k - f_{k-1}| on k over k = 4..16 at theta = 0.3;
// N is 3x the fitted intercept. Both are overridable via set_constants.
ObjectiveSequence ge_objective(const GilbertElliott& ch, int n_max = 22);

// Same objective with caller-supplied constants and domain (skips the fit).
ObjectiveSequence ge_objective(const GilbertElliott& ch, const SequenceConstants& constants,
                               ParamDomain domain, int n_max = 22);

}  // namespace fscap
