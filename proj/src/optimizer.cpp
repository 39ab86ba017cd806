#include "optimizer.hpp"

#include <cmath>

namespace fscap {

namespace {

constexpr double kZeroGradient = 1e-14;

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void check_common(const ObjectiveSequence& seq, const Algo1Config& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) {
    throw ConfigError("alpha must lie in (0,0.5)");
  }
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) {
    throw ConfigError("beta must lie in (0,1)");
  }
  if (cfg.outer_iters < 1) throw ConfigError("outer_iters must be positive");
  if (cfg.max_backtracks < 1) throw ConfigError("max_backtracks must be positive");
  if (static_cast<int>(cfg.theta0.size()) != seq.dim()) {
    throw ConfigError("theta0 has dimension " + std::to_string(cfg.theta0.size()) +
                      ", objective expects " + std::to_string(seq.dim()));
  }
  if (seq.domain().classify(cfg.theta0) != PointClass::Interior) {
    throw ConfigError("theta0 must be an interior point");
  }
}

std::vector<double> stepped(const std::vector<double>& theta, double t,
                            const std::vector<double>& dir) {
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = theta[i] + t * dir[i];
  return out;
}

}  // namespace

std::vector<IterateRecord> run_algorithm1(const ObjectiveSequence& seq,
                                          const Algo1Config& cfg) {
  check_common(seq, cfg);
  const SequenceConstants& c = seq.constants();
  if (!c.small_m) {
    throw ConfigError("Algorithm 1 requires the strong-concavity modulus m");
  }

  const int k0 = c.k0;
  const double big_m = c.big_m;

  std::vector<double> theta = cfg.theta0;
  std::vector<double> grad = seq.gradient(k0, theta);  // grad g_0(theta_0)
  if (norm2(grad) <= kZeroGradient) {
    throw ConfigError("Algorithm 1 Step 0: gradient of g_0 vanishes at theta0");
  }

  std::vector<IterateRecord> trace;
  trace.reserve(cfg.outer_iters);

  for (int k = 1; k <= cfg.outer_iters; ++k) {
    const double rho_k = std::pow(c.rho, k + k0);
    const double slack_coeff = (c.n_at(k + k0) + big_m) * big_m * rho_k;

    bool perturbed = false;
    std::vector<double> dir = grad;
    if (norm2(dir) <= kZeroGradient) {
      // Perturb away from the maximizer of g_{k-1} so the run is not trapped
      // short of the maximizer of f.
      perturbed = true;
      std::vector<double> shifted = theta;
      for (double& x : shifted) x += rho_k;
      dir = seq.gradient(k + k0 - 1, shifted);
    }
    const double dir_sq = norm2(dir) * norm2(dir);
    const double g_prev = seq.eval(k + k0, theta);

    int backtracks = 0;
    std::vector<double> tau;
    double g_tau = 0.0;
    for (;; ++backtracks) {
      if (backtracks > cfg.max_backtracks) {
        throw BacktrackError(
            "Algorithm 1: backtracking exhausted at outer iteration " + std::to_string(k) +
                " (constants are likely mis-specified)",
            std::move(trace));
      }
      const double t = std::pow(cfg.beta, backtracks);
      tau = stepped(theta, t, dir);
      if (seq.domain().classify(tau) != PointClass::Interior) continue;
      g_tau = seq.eval(k + k0, tau);
      if (g_tau >= g_prev + cfg.alpha * t * dir_sq - slack_coeff * t) break;
    }

    theta = std::move(tau);
    grad = seq.gradient(k + k0, theta);

    IterateRecord rec;
    rec.outer_k = k + k0;
    rec.theta = theta;
    rec.f_value = g_tau;
    rec.grad_norm = norm2(grad);
    rec.step_t = std::pow(cfg.beta, backtracks);
    rec.backtracks = backtracks;
    rec.perturbed = perturbed;
    trace.push_back(std::move(rec));
  }
  return trace;
}

std::vector<IterateRecord> run_algorithm3(const ObjectiveSequence& seq,
                                          const Algo3Config& cfg) {
  check_common(seq, cfg.base);
  if (!(cfg.b > 0.0 && cfg.b < 1.0)) {
    throw ConfigError("b must lie in (0,1)");
  }
  const SequenceConstants& c = seq.constants();
  const int k0 = c.k0;

  auto floor_at = [&](int k) {
    return 2.0 * c.n_at(k + k0) * std::pow(c.rho, (k + k0) / 3.0) / (1.0 - cfg.b);
  };

  std::vector<double> theta = cfg.base.theta0;
  std::vector<double> grad = seq.gradient(k0, theta);
  const double f0 = seq.eval(k0, theta);
  if (norm2(grad) < floor_at(0)) {
    throw ConfigError("Algorithm 3 Step 0: ||grad f_k0(theta0)|| = " +
                      std::to_string(norm2(grad)) + " is below the gradient floor " +
                      std::to_string(floor_at(0)) + " (theta0 not in A)");
  }
  if (f0 < cfg.y0) {
    throw ConfigError("Algorithm 3 Step 0: f_k0(theta0) = " + std::to_string(f0) +
                      " is below y0 (theta0 not in B)");
  }

  std::vector<IterateRecord> trace;
  trace.reserve(cfg.base.outer_iters);

  for (int k = 1; k <= cfg.base.outer_iters; ++k) {
    const std::vector<double> dir = grad;
    const double dir_sq = norm2(dir) * norm2(dir);
    const double g_prev = seq.eval(k + k0, theta);
    const double floor_k = floor_at(k);

    int backtracks = 0;
    bool floor_blocked_last = false;
    std::vector<double> tau;
    double g_tau = 0.0;
    std::vector<double> grad_tau;
    for (;; ++backtracks) {
      if (backtracks > cfg.base.max_backtracks) {
        throw BacktrackError(
            "Algorithm 3: backtracking exhausted at outer iteration " + std::to_string(k) +
                " (gradient floor may be unsatisfiable near a stationary point)",
            std::move(trace));
      }
      const double t = std::pow(cfg.base.beta, backtracks);
      tau = stepped(theta, t, dir);
      if (seq.domain().classify(tau) != PointClass::Interior) {
        floor_blocked_last = false;
        continue;
      }
      g_tau = seq.eval(k + k0, tau);
      const bool armijo_ok = g_tau >= g_prev + cfg.base.alpha * t * dir_sq;
      grad_tau = seq.gradient(k + k0, tau);
      const bool floor_ok = norm2(grad_tau) >= floor_k;
      if (armijo_ok && floor_ok) break;
      floor_blocked_last = !floor_ok;
    }

    theta = std::move(tau);
    grad = std::move(grad_tau);

    IterateRecord rec;
    rec.outer_k = k + k0;
    rec.theta = theta;
    rec.f_value = g_tau;
    rec.grad_norm = norm2(grad);
    rec.step_t = std::pow(cfg.base.beta, backtracks);
    rec.backtracks = backtracks;
    rec.floor_active = backtracks > 0 && floor_blocked_last;
    trace.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace fscap
