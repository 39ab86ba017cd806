#include "markov.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace fscap {

double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw DomainError("binary_entropy: p must lie in [0,1], got " + std::to_string(p));
  }
  p = std::min(1.0, std::max(0.0, p));
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

MarkovChain::MarkovChain(Eigen::MatrixXd transition) : p_(std::move(transition)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) {
    throw DimensionError("MarkovChain: transition matrix must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < p_.cols(); ++j) {
      if (p_(i, j) < -1e-12) {
        throw DomainError("MarkovChain: negative transition probability");
      }
      row_sum += p_(i, j);
    }
    if (std::abs(row_sum - 1.0) > 1e-12) {
      throw DomainError("MarkovChain: row " + std::to_string(i) +
                        " sums to " + std::to_string(row_sum));
    }
  }
}

bool MarkovChain::is_primitive() const {
  const int s = size();
  if (s > 64) throw CostError("MarkovChain::is_primitive: size capped at 64 states");
  // Boolean powers with bitmask rows.
  std::vector<std::uint64_t> base(s, 0), power(s, 0);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (p_(i, j) > 0.0) base[i] |= (std::uint64_t{1} << j);
    }
    power[i] = base[i];
  }
  const std::uint64_t full = (s == 64) ? ~std::uint64_t{0}
                                       : ((std::uint64_t{1} << s) - 1);
  const int max_power = s * s - 2 * s + 2;
  for (int e = 1; e <= max_power; ++e) {
    bool all_positive = true;
    for (int i = 0; i < s; ++i) {
      if (power[i] != full) {
        all_positive = false;
        break;
      }
    }
    if (all_positive) return true;
    std::vector<std::uint64_t> next(s, 0);
    for (int i = 0; i < s; ++i) {
      std::uint64_t row = power[i];
      while (row) {
        int j = std::countr_zero(row);
        row &= row - 1;
        next[i] |= base[j];
      }
    }
    power.swap(next);
  }
  return false;
}

Eigen::VectorXd stationary_distribution(const MarkovChain& chain) {
  if (!chain.is_primitive()) {
    throw DomainError("stationary_distribution: no unique stationary distribution "
                      "(chain is not primitive)");
  }
  const int s = chain.size();
  // Solve the overdetermined consistent system [P^T - I; 1^T] pi = [0; 1].
  Eigen::MatrixXd a(s + 1, s);
  a.topRows(s) = chain.matrix().transpose() - Eigen::MatrixXd::Identity(s, s);
  a.bottomRows(1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
  rhs(s) = 1.0;
  Eigen::VectorXd pi = a.colPivHouseholderQr().solve(rhs);
  for (int i = 0; i < s; ++i) pi(i) = std::max(pi(i), 0.0);
  pi /= pi.sum();
  double residual = (pi.transpose() * chain.matrix() - pi.transpose()).cwiseAbs().maxCoeff();
  if (residual > 1e-12) {
    throw NumericError("stationary_distribution: residual " + std::to_string(residual) +
                       " exceeds 1e-12");
  }
  return pi;
}

}  // namespace fscap
