#include "hidden_markov.hpp"

#include <cmath>
#include <vector>

namespace fscap {

namespace {
constexpr double kPrefixFloor = 1e-300;
}

HiddenMarkovSource::HiddenMarkovSource(MarkovChain chain, Eigen::MatrixXd emission)
    : chain_(std::move(chain)),
      emission_(std::move(emission)),
      init_(stationary_distribution(chain_)) {
  validate(true);
}

HiddenMarkovSource::HiddenMarkovSource(MarkovChain chain, Eigen::MatrixXd emission,
                                       Eigen::VectorXd init, bool init_is_stationary)
    : chain_(std::move(chain)), emission_(std::move(emission)), init_(std::move(init)) {
  validate(init_is_stationary);
}

void HiddenMarkovSource::validate(bool init_is_stationary) const {
  if (emission_.rows() != chain_.size() || emission_.cols() < 1) {
    throw DimensionError("HiddenMarkovSource: emission must have one row per hidden state");
  }
  for (Eigen::Index i = 0; i < emission_.rows(); ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < emission_.cols(); ++j) {
      if (emission_(i, j) < -1e-12) {
        throw DomainError("HiddenMarkovSource: negative emission probability");
      }
      row_sum += emission_(i, j);
    }
    if (std::abs(row_sum - 1.0) > 1e-12) {
      throw DomainError("HiddenMarkovSource: emission row " + std::to_string(i) +
                        " sums to " + std::to_string(row_sum));
    }
  }
  if (init_.size() != chain_.size()) {
    throw DimensionError("HiddenMarkovSource: init must match the hidden alphabet");
  }
  if (std::abs(init_.sum() - 1.0) > 1e-12 || init_.minCoeff() < -1e-12) {
    throw DomainError("HiddenMarkovSource: init is not a probability vector");
  }
  if (init_is_stationary) {
    double res = (init_.transpose() * chain_.matrix() - init_.transpose())
                     .cwiseAbs()
                     .maxCoeff();
    if (res > 1e-10) {
      throw DomainError("HiddenMarkovSource: init flagged stationary but ||init*P - init|| = " +
                        std::to_string(res));
    }
  }
}

namespace {

struct ForwardAccumulator {
  const Eigen::MatrixXd& trans;
  const Eigen::MatrixXd& emit;
  int n;
  double entropy = 0.0;

  // alpha(h) = P(y_1^t, H_t = h) for the prefix represented by this call.
  void descend(const Eigen::VectorXd& alpha, double prefix_prob, int depth) {
    const int n_obs = static_cast<int>(emit.cols());
    Eigen::VectorXd pushed;
    if (depth > 0) pushed = trans.transpose() * alpha;
    const Eigen::VectorXd& source = (depth > 0) ? pushed : alpha;
    for (int y = 0; y < n_obs; ++y) {
      Eigen::VectorXd next = source.cwiseProduct(emit.col(y));
      double p = next.sum();
      if (p < kPrefixFloor) continue;
      if (depth + 1 == n) {
        entropy += p * std::log(prefix_prob / p);
      } else {
        descend(next, p, depth + 1);
      }
    }
  }
};

}  // namespace

double conditional_entropy_forward(const HiddenMarkovSource& src, int n, int n_max) {
  if (n < 1) throw DomainError("conditional_entropy_forward: n must be positive");
  if (n > n_max) {
    double leaves = std::pow(static_cast<double>(src.alphabet_size()), n);
    throw CostError("conditional_entropy_forward: n = " + std::to_string(n) +
                    " exceeds n_max = " + std::to_string(n_max) + " (about " +
                    std::to_string(leaves) + " leaf evaluations)");
  }
  ForwardAccumulator acc{src.chain().matrix(), src.emission(), n};
  acc.descend(src.init(), 1.0, 0);
  return acc.entropy;
}

double conditional_entropy_bruteforce(const HiddenMarkovSource& src, int n) {
  if (n < 1) throw DomainError("conditional_entropy_bruteforce: n must be positive");
  if (n > 8) {
    throw CostError("conditional_entropy_bruteforce: n = " + std::to_string(n) +
                    " exceeds the n <= 8 cost cap");
  }
  const int n_obs = src.alphabet_size();
  const int n_hidden = src.hidden_states();
  const auto& p = src.chain().matrix();
  const auto& e = src.emission();

  std::vector<int> y(n, 0), h(n, 0);
  // joint[code(y_1^n)] = P(y_1^n) as an explicit sum over hidden paths.
  std::vector<double> joint(static_cast<std::size_t>(std::pow(n_obs, n)), 0.0);
  for (std::size_t yc = 0; yc < joint.size(); ++yc) {
    std::size_t rem = yc;
    for (int t = n - 1; t >= 0; --t) {
      y[t] = static_cast<int>(rem % n_obs);
      rem /= n_obs;
    }
    double total = 0.0;
    std::size_t paths = 1;
    for (int t = 0; t < n; ++t) paths *= n_hidden;
    for (std::size_t hc = 0; hc < paths; ++hc) {
      std::size_t hrem = hc;
      for (int t = n - 1; t >= 0; --t) {
        h[t] = static_cast<int>(hrem % n_hidden);
        hrem /= n_hidden;
      }
      double prob = src.init()(h[0]) * e(h[0], y[0]);
      for (int t = 1; t < n; ++t) prob *= p(h[t - 1], h[t]) * e(h[t], y[t]);
      total += prob;
    }
    joint[yc] = total;
  }

  double entropy = 0.0;
  for (std::size_t yc = 0; yc < joint.size(); yc += n_obs) {
    double prefix = 0.0;
    for (int v = 0; v < n_obs; ++v) prefix += joint[yc + v];
    if (prefix <= 0.0) continue;
    for (int v = 0; v < n_obs; ++v) {
      double pj = joint[yc + v];
      if (pj > 0.0) entropy += pj * std::log(prefix / pj);
    }
  }
  return entropy;
}

}  // namespace fscap
