#include "bec.hpp"

#include <array>
#include <cmath>
#include <map>

#include "markov.hpp"

namespace fscap {

namespace {

void check_bec(const BecRllChannel& ch) {
  if (!(ch.epsilon > 0.0 && ch.epsilon < 1.0)) {
    throw ConfigError("BecRllChannel: epsilon must lie in (0,1)");
  }
}

}  // namespace

double bec_fk(const BecRllChannel& ch, double theta, int k) {
  check_bec(ch);
  if (k < 0) throw DomainError("bec_fk: k must be non-negative");
  if (theta < 0.0 || theta > 1.0) {
    throw DomainError("bec_fk: theta must lie in [0,1]");
  }
  const double eps = ch.epsilon;
  const double w = (1.0 - eps) * (1.0 - eps);
  const double one_plus = 1.0 + theta;

  double value = w * binary_entropy(theta) / one_plus;
  if (k < 2) return value;

  // sign = (-theta)^l, carried across the series.
  double sign_l = theta * theta;          // (-theta)^2
  double eps_pow = eps;                   // eps^{l-1} at l = 2
  for (int l = 2; l <= k; ++l) {
    double arg_first = (1.0 - (-theta) * sign_l) / one_plus;   // uses (-theta)^{l+1}
    double arg_second = (1.0 - sign_l) / one_plus;             // uses (-theta)^l
    value += w * eps_pow *
             (binary_entropy(arg_first) + theta * binary_entropy(arg_second)) / one_plus;
    sign_l *= -theta;
    eps_pow *= eps;
  }
  return value;
}

ObjectiveSequence bec_objective(const BecRllChannel& ch) {
  check_bec(ch);
  SequenceConstants constants;
  constants.n_poly = {371.0, 0.0, 0.0};
  constants.rho = 0.1;
  constants.big_m = 5.81;
  constants.small_m = 1.88;
  constants.k0 = 18;
  ParamDomain domain({0.2}, {0.6});
  auto eval = [ch](int k, std::span<const double> theta) {
    return bec_fk(ch, theta[0], k);
  };
  return ObjectiveSequence(std::move(domain), constants, std::move(eval));
}

double birch_bound_bec(double p, double q, double epsilon) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
    throw DomainError("birch_bound_bec: p and q must lie in (0,1)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("birch_bound_bec: epsilon must lie in (0,1)");
  }

  // Second-order input chain on blocks {11, 12, 21} ("22" is forbidden).
  Eigen::MatrixXd blocks(3, 3);
  blocks << p, 1.0 - p, 0.0,
            0.0, 0.0, 1.0,
            q, 1.0 - q, 0.0;
  MarkovChain chain(blocks);
  Eigen::VectorXd pi = stationary_distribution(chain);

  // Block index -> (x_{t-1}, x_t) over the channel alphabet {1, 2}.
  constexpr std::array<std::array<int, 2>, 3> kBlockSymbols{{{1, 1}, {1, 2}, {2, 1}}};

  // Joint distribution over (block(x1,x2), y_3, y_4, y_5, y_6) with the
  // erased output written as 0.
  std::map<std::array<int, 5>, double> joint;
  std::map<std::array<int, 4>, double> prefix;

  for (int z2 = 0; z2 < 3; ++z2) {
    // Walk all block paths z_2 -> z_3 -> ... -> z_6.
    struct Frame {
      int z;
      double prob;
      std::array<int, 4> x;  // x_3..x_6
      int depth;
    };
    std::vector<Frame> stack{{z2, pi(z2), {}, 0}};
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      if (f.depth == 4) {
        // Erasure patterns for e_3..e_6: P(E=0) = epsilon erases the symbol.
        for (int e = 0; e < 16; ++e) {
          double pe = 1.0;
          std::array<int, 5> key{};
          key[0] = z2;
          for (int t = 0; t < 4; ++t) {
            bool erased = ((e >> t) & 1) == 0;
            pe *= erased ? epsilon : (1.0 - epsilon);
            key[t + 1] = erased ? 0 : f.x[t];
          }
          double mass = f.prob * pe;
          joint[key] += mass;
          std::array<int, 4> pre{key[0], key[1], key[2], key[3]};
          prefix[pre] += mass;
        }
        continue;
      }
      for (int nz = 0; nz < 3; ++nz) {
        double tp = blocks(f.z, nz);
        if (tp <= 0.0) continue;
        Frame g = f;
        g.z = nz;
        g.prob *= tp;
        g.x[f.depth] = kBlockSymbols[nz][1];
        g.depth += 1;
        stack.push_back(g);
      }
    }
  }

  double entropy = 0.0;
  for (const auto& [key, pj] : joint) {
    if (pj <= 0.0) continue;
    std::array<int, 4> pre{key[0], key[1], key[2], key[3]};
    entropy += pj * std::log(prefix.at(pre) / pj);
  }
  return entropy - binary_entropy(epsilon);
}

}  // namespace fscap
