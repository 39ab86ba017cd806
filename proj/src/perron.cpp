#include "perron.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace fscap {

namespace {

// Strong connectivity of the positivity pattern == irreducibility.
bool irreducible(const Eigen::MatrixXd& a) {
  const int s = static_cast<int>(a.rows());
  auto reach_all = [&](bool transpose) {
    std::vector<bool> seen(s, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < s; ++v) {
        double w = transpose ? a(v, u) : a(u, v);
        if (w > 0.0 && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    for (bool b : seen)
      if (!b) return false;
    return true;
  };
  return reach_all(false) && reach_all(true);
}

}  // namespace

double perron_log_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("perron_log_eigenvalue: matrix must be square and nonempty");
  }
  if (a.rows() > 64) {
    throw CostError("perron_log_eigenvalue: size capped at 64");
  }
  if (a.minCoeff() < 0.0) {
    throw DomainError("perron_log_eigenvalue: matrix must be non-negative");
  }
  if (!irreducible(a)) {
    throw DomainError("perron_log_eigenvalue: Perron eigenvalue not unique "
                      "(matrix is reducible)");
  }

  Eigen::VectorXd x = Eigen::VectorXd::Ones(a.rows());
  x.normalize();
  double lambda_prev = 0.0;
  const int max_iters = 500000;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd y = a * x;
    double lambda = x.dot(y);
    double norm = y.norm();
    if (norm == 0.0) throw NumericError("perron_log_eigenvalue: iterate vanished");
    x = y / norm;
    if (it > 0 && std::abs(lambda - lambda_prev) < 1e-13) {
      if (lambda <= 0.0) {
        throw NumericError("perron_log_eigenvalue: non-positive Rayleigh quotient");
      }
      return std::log(lambda);
    }
    lambda_prev = lambda;
  }
  throw NumericError("perron_log_eigenvalue: power iteration did not converge");
}

Eigen::MatrixXd build_forbidden_word_adjacency(const std::string& word) {
  const int length = static_cast<int>(word.size());
  if (length < 2 || length > 6) {
    throw DomainError("build_forbidden_word_adjacency: word length must lie in [2,6]");
  }
  for (char c : word) {
    if (c != '0' && c != '1') {
      throw DomainError("build_forbidden_word_adjacency: word must be a 0/1 string");
    }
  }
  unsigned word_bits = 0;
  for (char c : word) word_bits = (word_bits << 1) | (c == '1' ? 1u : 0u);

  const int block = length - 1;
  const unsigned block_count = 1u << block;
  auto contains_word = [&](unsigned bits, int nbits) {
    if (nbits < length) return false;
    unsigned mask = (1u << length) - 1;
    for (int shift = 0; shift + length <= nbits; ++shift) {
      if (((bits >> shift) & mask) == word_bits) return true;
    }
    return false;
  };

  std::vector<unsigned> states;
  for (unsigned s = 0; s < block_count; ++s) {
    if (!contains_word(s, block)) states.push_back(s);
  }
  const int n = static_cast<int>(states.size());
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  const unsigned overlap_mask = (block >= 2) ? ((1u << (block - 1)) - 1) : 0u;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      unsigned u = states[i], v = states[j];
      // u's last block-1 symbols must equal v's first block-1 symbols.
      if (block >= 2 && (u & overlap_mask) != (v >> 1)) continue;
      unsigned merged = (u << 1) | (v & 1u);
      if (merged == word_bits) continue;
      adj(i, j) = 1.0;
    }
  }
  return adj;
}

}  // namespace fscap
