#include "noiseless.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>

#include "markov.hpp"

namespace fscap {

double noiseless_fk(double theta, int k) {
  if (k < 0) throw DomainError("noiseless_fk: k must be non-negative");
  if (theta < 0.0 || theta > 1.0) {
    throw DomainError("noiseless_fk: theta must lie in [0,1]");
  }

  const double pi1 = theta * theta;
  Eigen::RowVector3d r(1.0 - theta, 0.0, 0.0);
  Eigen::Vector3d c(0.0, theta, 0.0);
  Eigen::Matrix3d b;
  b << 0.0, theta, 1.0 - theta,
       1.0 - theta, 0.0, 0.0,
       0.0, theta, 1.0 - theta;

  auto checked_ratio = [](double num, double den) {
    double ratio = num / den;
    if (!(ratio >= 0.0 && ratio <= 1.0 + 1e-12)) {
      throw NumericError("noiseless_fk: probability ratio " + std::to_string(ratio) +
                         " outside [0,1]");
    }
    return std::min(ratio, 1.0);
  };

  double value = 0.0;
  Eigen::RowVector3d v = r;      // r B^l, updated in place
  double a_prev = 1.0;           // r B^{l-1} 1, seeded by the := 1 convention
  Eigen::RowVector3d v_prev = r; // r B^{l-1}, only meaningful for l >= 1
  for (int l = 0; l <= k; ++l) {
    double a_l = v.sum();                              // r B^l 1
    double c_l = (l == 0) ? 1.0 : v_prev.dot(c.transpose());  // r B^{l-1} c
    if (a_l > 0.0) {
      value -= pi1 * a_l * std::log(checked_ratio(a_l, a_prev));
    }
    if (c_l > 0.0) {
      double ratio = (l == 0) ? 1.0 : checked_ratio(c_l, a_prev);
      value -= pi1 * c_l * std::log(ratio);
    }
    v_prev = v;
    a_prev = a_l;
    v = v * b;
  }
  return value;
}

ObjectiveSequence noiseless_objective() {
  SequenceConstants constants;
  constants.n_poly = {46587.2, 6207.73, 374.945};
  constants.rho = 0.875;
  constants.big_m = 10.37;
  constants.small_m = 1.2;
  constants.k0 = 120;
  ParamDomain domain({0.4}, {0.9});
  auto eval = [](int k, std::span<const double> theta) {
    return noiseless_fk(theta[0], k);
  };
  return ObjectiveSequence(std::move(domain), constants, std::move(eval));
}

double birch_bound_noiseless(double p, double q) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
    throw DomainError("birch_bound_noiseless: p and q must lie in (0,1)");
  }

  // First-order input chain on blocks {00, 01, 10, 11}.
  Eigen::MatrixXd blocks(4, 4);
  blocks << p, 1.0 - p, 0.0, 0.0,
            0.0, 0.0, q, 1.0 - q,
            p, 1.0 - p, 0.0, 0.0,
            0.0, 0.0, q, 1.0 - q;
  MarkovChain chain(blocks);
  Eigen::VectorXd pi = stationary_distribution(chain);

  auto phi = [](int block) { return block == 0 ? 1 : 0; };  // y = 1 iff block 00

  // Joint over (block(x1,x2), y_3, y_4).
  std::map<std::array<int, 3>, double> joint;
  std::map<std::array<int, 2>, double> prefix;
  for (int z2 = 0; z2 < 4; ++z2) {
    for (int z3 = 0; z3 < 4; ++z3) {
      double p3 = pi(z2) * blocks(z2, z3);
      if (p3 <= 0.0) continue;
      for (int z4 = 0; z4 < 4; ++z4) {
        double p4 = p3 * blocks(z3, z4);
        if (p4 <= 0.0) continue;
        std::array<int, 3> key{z2, phi(z3), phi(z4)};
        joint[key] += p4;
        prefix[{z2, phi(z3)}] += p4;
      }
    }
  }

  double entropy = 0.0;
  for (const auto& [key, pj] : joint) {
    if (pj <= 0.0) continue;
    entropy += pj * std::log(prefix.at({key[0], key[1]}) / pj);
  }
  return entropy;
}

}  // namespace fscap
