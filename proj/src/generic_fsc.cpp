#include "generic_fsc.hpp"

#include <cmath>

namespace fscap {

namespace {
constexpr double kPrefixFloor = 1e-300;

void check_stochastic(const Eigen::MatrixXd& m, const char* name, bool strictly_positive) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (strictly_positive && !(m(i, j) > 0.0)) {
        throw DomainError(std::string(name) + ": entries must be strictly positive");
      }
      if (m(i, j) < -1e-12) {
        throw DomainError(std::string(name) + ": negative entry");
      }
      row_sum += m(i, j);
    }
    if (std::abs(row_sum - 1.0) > 1e-12) {
      throw DomainError(std::string(name) + ": row " + std::to_string(i) +
                        " sums to " + std::to_string(row_sum));
    }
  }
}

}  // namespace

void GenericFsc::validate() const {
  if (nx < 1 || ns < 1 || ny < 1) {
    throw ConfigError("GenericFsc: alphabet sizes must be positive");
  }
  if (!input_param) throw ConfigError("GenericFsc: input parameterization required");
  if (state_kernel.rows() != nx * ns || state_kernel.cols() != ns) {
    throw DimensionError("GenericFsc: state kernel must be (nx*ns) x ns");
  }
  if (emission.rows() != nx * ns || emission.cols() != ny) {
    throw DimensionError("GenericFsc: emission must be (nx*ns) x ny");
  }
  check_stochastic(state_kernel, "GenericFsc state kernel", true);
  check_stochastic(emission, "GenericFsc emission", true);
}

Eigen::MatrixXd rll_input_matrix(double theta) {
  if (theta < 0.0 || theta > 1.0) {
    throw DomainError("rll_input_matrix: theta must lie in [0,1]");
  }
  Eigen::MatrixXd px(2, 2);
  px << 1.0 - theta, theta,
        1.0, 0.0;
  return px;
}

namespace {

// Conditional joint entropy H(X_{k+1}, Y_{k+1} | X_1^k, Y_1^k) by depth-first
// traversal over (x, y) histories carrying beta(s) = P(x_1^t, y_1^t, S_t = s).
class JointEntropyWalker {
 public:
  JointEntropyWalker(const GenericFsc& fsc, const Eigen::MatrixXd& px,
                     const Eigen::VectorXd& pi_joint, int depth_total)
      : fsc_(fsc), px_(px), pi_joint_(pi_joint), depth_total_(depth_total) {}

  double run() {
    // beta_0 conditioned on the first input symbol:
    // P(x_1, s_0) = sum_x0 pi_joint(x_0, s_0) * P_X(x_0, x_1).
    for (int x1 = 0; x1 < fsc_.nx; ++x1) {
      Eigen::VectorXd beta = Eigen::VectorXd::Zero(fsc_.ns);
      for (int s0 = 0; s0 < fsc_.ns; ++s0) {
        for (int x0 = 0; x0 < fsc_.nx; ++x0) {
          beta(s0) += pi_joint_(x0 * fsc_.ns + s0) * px_(x0, x1);
        }
      }
      step(beta, 1.0, x1, 1);
    }
    return entropy_;
  }

 private:
  void step(const Eigen::VectorXd& beta_prev, double prefix_prob, int x, int depth) {
    for (int y = 0; y < fsc_.ny; ++y) {
      Eigen::VectorXd beta = Eigen::VectorXd::Zero(fsc_.ns);
      for (int sp = 0; sp < fsc_.ns; ++sp) {
        double w = beta_prev(sp) * fsc_.emission(x * fsc_.ns + sp, y);
        if (w <= 0.0) continue;
        for (int s = 0; s < fsc_.ns; ++s) {
          beta(s) += w * fsc_.state_kernel(x * fsc_.ns + sp, s);
        }
      }
      double p = beta.sum();
      if (p < kPrefixFloor) continue;
      if (depth == depth_total_) {
        entropy_ += p * std::log(prefix_prob / p);
      } else {
        for (int xn = 0; xn < fsc_.nx; ++xn) {
          double tp = px_(x, xn);
          if (tp <= 0.0) continue;
          step(beta * tp, p, xn, depth + 1);
        }
      }
    }
  }

  const GenericFsc& fsc_;
  const Eigen::MatrixXd& px_;
  const Eigen::VectorXd& pi_joint_;
  int depth_total_;
  double entropy_ = 0.0;
};

}  // namespace

double generic_fsc_fk(const GenericFsc& fsc, std::span<const double> theta, int k) {
  fsc.validate();
  if (k < 1) throw DomainError("generic_fsc_fk: k must be positive");
  if (k > 10) {
    throw CostError("generic_fsc_fk: k = " + std::to_string(k) +
                    " exceeds the k <= 10 enumeration cap");
  }

  Eigen::MatrixXd px = fsc.input_param(theta);
  if (px.rows() != fsc.nx || px.cols() != fsc.nx) {
    throw DimensionError("generic_fsc_fk: input matrix must be nx x nx");
  }
  check_stochastic(px, "generic_fsc_fk input matrix", false);
  MarkovChain input_chain(px);
  Eigen::VectorXd pix = stationary_distribution(input_chain);

  // H(X_2 | X_1) from the stationary input chain.
  double h_input = 0.0;
  for (int x = 0; x < fsc.nx; ++x) {
    for (int xn = 0; xn < fsc.nx; ++xn) {
      double p = px(x, xn);
      if (p > 0.0) h_input -= pix(x) * p * std::log(p);
    }
  }

  // Joint chain (X_n, S_n): p(x',s'|x,s) = P_X(x,x') * K(s' | x', s).
  Eigen::MatrixXd joint(fsc.nx * fsc.ns, fsc.nx * fsc.ns);
  for (int x = 0; x < fsc.nx; ++x) {
    for (int s = 0; s < fsc.ns; ++s) {
      for (int xn = 0; xn < fsc.nx; ++xn) {
        for (int sn = 0; sn < fsc.ns; ++sn) {
          joint(x * fsc.ns + s, xn * fsc.ns + sn) =
              px(x, xn) * fsc.state_kernel(xn * fsc.ns + s, sn);
        }
      }
    }
  }
  Eigen::VectorXd pi_joint = stationary_distribution(MarkovChain(joint));

  // Hidden chain of the output process: states (x_n, s_{n-1}).
  Eigen::MatrixXd ytrans(fsc.nx * fsc.ns, fsc.nx * fsc.ns);
  Eigen::VectorXd yinit(fsc.nx * fsc.ns);
  for (int x = 0; x < fsc.nx; ++x) {
    for (int sp = 0; sp < fsc.ns; ++sp) {
      for (int xn = 0; xn < fsc.nx; ++xn) {
        for (int sn = 0; sn < fsc.ns; ++sn) {
          ytrans(x * fsc.ns + sp, xn * fsc.ns + sn) =
              px(x, xn) * fsc.state_kernel(x * fsc.ns + sp, sn);
        }
      }
      double init = 0.0;
      for (int x0 = 0; x0 < fsc.nx; ++x0) {
        init += pi_joint(x0 * fsc.ns + sp) * px(x0, x);
      }
      yinit(x * fsc.ns + sp) = init;
    }
  }
  HiddenMarkovSource ysource(MarkovChain(ytrans), fsc.emission, yinit);
  double h_output = conditional_entropy_forward(ysource, k + 1, k + 1);

  double h_pair = JointEntropyWalker(fsc, px, pi_joint, k + 1).run();
  return h_input + h_output - h_pair;
}

}  // namespace fscap
