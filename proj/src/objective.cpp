#include "objective.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fscap {

namespace {
constexpr double kMinFdStep = 9.094947017729282e-13;  // 2^-40
}

void SequenceConstants::validate() const {
  for (int k : {0, 1, 10, 100, 1000}) {
    if (!(n_at(k) > 0.0)) {
      throw ConfigError("SequenceConstants: N(k) must be positive for all k >= 0");
    }
  }
  if (n_poly[1] < 0.0 || n_poly[2] < 0.0) {
    throw ConfigError("SequenceConstants: polynomial N must be non-decreasing in k");
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ConfigError("SequenceConstants: rho must lie in (0,1)");
  }
  if (!(big_m > 0.0)) {
    throw ConfigError("SequenceConstants: M must be positive");
  }
  if (small_m && !(*small_m > 0.0 && *small_m <= big_m)) {
    throw ConfigError("SequenceConstants: m must satisfy 0 < m <= M");
  }
  if (k0 < 0) {
    throw ConfigError("SequenceConstants: k0 must be non-negative");
  }
}

ObjectiveSequence::ObjectiveSequence(ParamDomain domain, SequenceConstants constants,
                                     EvalFn eval, GradFn grad)
    : domain_(std::move(domain)),
      constants_(constants),
      eval_(std::move(eval)),
      grad_(std::move(grad)) {
  constants_.validate();
  if (!eval_) throw ConfigError("ObjectiveSequence: eval function required");
}

void ObjectiveSequence::set_constants(SequenceConstants c) {
  c.validate();
  constants_ = c;
}

double ObjectiveSequence::eval(int k, std::span<const double> theta) const {
  if (k < 0) throw DomainError("ObjectiveSequence::eval: k must be non-negative");
  if (static_cast<int>(theta.size()) != dim()) {
    throw DimensionError("ObjectiveSequence::eval: expected dimension " +
                         std::to_string(dim()) + ", got " + std::to_string(theta.size()));
  }
  return eval_(k, theta);
}

std::vector<double> ObjectiveSequence::gradient(int k, std::span<const double> theta) const {
  if (grad_) return grad_(k, theta);
  double scale = 1.0;
  for (double t : theta) scale = std::max(scale, std::abs(t));
  return gradient_fd(*this, k, theta, 1e-6 * scale).value;
}

GradientEstimate gradient_fd(const ObjectiveSequence& seq, int k,
                             std::span<const double> theta, double h) {
  if (!(h > 0.0)) throw ConfigError("gradient_fd: h must be positive");
  const auto& dom = seq.domain();
  if (static_cast<int>(theta.size()) != dom.dim()) {
    throw DimensionError("gradient_fd: expected dimension " + std::to_string(dom.dim()) +
                         ", got " + std::to_string(theta.size()));
  }
  const int d = dom.dim();
  GradientEstimate out;
  out.value.resize(d);
  out.step.resize(d);
  std::vector<double> probe(theta.begin(), theta.end());
  for (int i = 0; i < d; ++i) {
    double room = std::min(dom.upper()[i] - theta[i], theta[i] - dom.lower()[i]);
    double hi = std::min(h, room);
    if (hi < kMinFdStep) {
      throw DomainError("gradient_fd: point too close to boundary for differentiation");
    }
    probe[i] = theta[i] + hi;
    double fp = seq.eval(k, probe);
    probe[i] = theta[i] - hi;
    double fm = seq.eval(k, probe);
    probe[i] = theta[i];
    out.value[i] = (fp - fm) / (2.0 * hi);
    out.step[i] = hi;
  }
  return out;
}

CurvatureProbe hessian_probe(const ObjectiveSequence& seq, int k,
                             const std::vector<std::vector<double>>& grid, double h) {
  if (grid.empty()) throw ConfigError("hessian_probe: grid must be nonempty");
  if (!(h > 0.0)) throw ConfigError("hessian_probe: h must be positive");
  const auto& dom = seq.domain();
  const int d = dom.dim();

  double max_eig = -std::numeric_limits<double>::infinity();
  double max_abs_eig = 0.0;

  std::vector<double> probe;
  for (const auto& point : grid) {
    if (static_cast<int>(point.size()) != d) {
      throw DimensionError("hessian_probe: grid point of wrong dimension");
    }
    if (dom.classify(point) != PointClass::Interior) {
      throw DomainError("hessian_probe: grid points must be interior");
    }
    double hi = h;
    for (int i = 0; i < d; ++i) {
      hi = std::min(hi, std::min(dom.upper()[i] - point[i], point[i] - dom.lower()[i]));
    }
    if (hi < kMinFdStep) {
      throw DomainError("hessian_probe: grid point too close to boundary");
    }

    probe = point;
    const double f0 = seq.eval(k, probe);
    Eigen::MatrixXd hess(d, d);
    for (int i = 0; i < d; ++i) {
      probe[i] = point[i] + hi;
      double fp = seq.eval(k, probe);
      probe[i] = point[i] - hi;
      double fm = seq.eval(k, probe);
      probe[i] = point[i];
      hess(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
      for (int j = i + 1; j < d; ++j) {
        probe[i] = point[i] + hi;
        probe[j] = point[j] + hi;
        double fpp = seq.eval(k, probe);
        probe[j] = point[j] - hi;
        double fpm = seq.eval(k, probe);
        probe[i] = point[i] - hi;
        double fmm = seq.eval(k, probe);
        probe[j] = point[j] + hi;
        double fmp = seq.eval(k, probe);
        probe[i] = point[i];
        probe[j] = point[j];
        double hij = (fpp - fpm - fmp + fmm) / (4.0 * hi * hi);
        hess(i, j) = hij;
        hess(j, i) = hij;
      }
    }

    if (d == 1) {
      max_eig = std::max(max_eig, hess(0, 0));
      max_abs_eig = std::max(max_abs_eig, std::abs(hess(0, 0)));
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
      if (es.info() != Eigen::Success) {
        throw NumericError("hessian_probe: eigen decomposition failed");
      }
      max_eig = std::max(max_eig, es.eigenvalues().maxCoeff());
      max_abs_eig = std::max(max_abs_eig, es.eigenvalues().cwiseAbs().maxCoeff());
    }
  }
  return CurvatureProbe{-max_eig, max_abs_eig};
}

}  // namespace fscap
