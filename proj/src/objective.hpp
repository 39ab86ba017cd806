#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "domain.hpp"
#include "errors.hpp"

namespace fscap {

// Convergence constants of an approximating objective sequence:
//   |f_k - f_{k-1}| and the derivative analogues are bounded by N(k) rho^k,
//   |f_k| and its first two derivatives by M, and (when present) every f_k
//   is strongly concave with modulus m on the interior.
// N(k) = c0 + c1*k + c2*k^2 covers both constant-N channels and the
// polynomial-N case.
struct SequenceConstants {
  std::array<double, 3> n_poly{1.0, 0.0, 0.0};
  double rho = 0.5;
  double big_m = 1.0;
  std::optional<double> small_m;  // strong-concavity modulus, absent for Algorithm 3 use
  int k0 = 0;

  double n_at(int k) const {
    return n_poly[0] + n_poly[1] * k + n_poly[2] * static_cast<double>(k) * k;
  }
  void validate() const;
};

// A family k -> f_k over a box domain together with its convergence
// constants. eval must be a pure function: repeated calls with identical
// (k, theta) return bit-identical values.
class ObjectiveSequence {
 public:
  using EvalFn = std::function<double(int, std::span<const double>)>;
  using GradFn = std::function<std::vector<double>(int, std::span<const double>)>;

  ObjectiveSequence(ParamDomain domain, SequenceConstants constants, EvalFn eval,
                    GradFn grad = nullptr);

  const ParamDomain& domain() const { return domain_; }
  const SequenceConstants& constants() const { return constants_; }
  int dim() const { return domain_.dim(); }

  // Largest k the objective is cheap enough to evaluate for verification
  // grids; <0 means unconstrained. Entropy-based channels set this.
  int proxy_k_limit() const { return proxy_k_limit_; }

  void set_constants(SequenceConstants c);
  void set_domain(ParamDomain d) { domain_ = std::move(d); }
  void set_proxy_k_limit(int k) { proxy_k_limit_ = k; }

  double eval(int k, std::span<const double> theta) const;

  // Analytic gradient when supplied, central finite differences otherwise
  // (h = 1e-6 * max(1, |theta|_inf) per coordinate).
  std::vector<double> gradient(int k, std::span<const double> theta) const;

  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }

 private:
  ParamDomain domain_;
  SequenceConstants constants_;
  EvalFn eval_;
  GradFn grad_;
  int proxy_k_limit_ = -1;
};

struct GradientEstimate {
  std::vector<double> value;  // central difference per coordinate
  std::vector<double> step;   // the h actually used per coordinate
};

// Central finite differences with automatic step shrinking: the step along
// coordinate i is reduced until theta +/- h e_i stays inside the box. Throws
// DomainError once the step falls below 2^-40.
GradientEstimate gradient_fd(const ObjectiveSequence& seq, int k,
                             std::span<const double> theta, double h);

struct CurvatureProbe {
  double m_est;      // -(largest Hessian eigenvalue seen over the grid)
  double big_m_est;  // largest absolute Hessian eigenvalue seen over the grid
};

// Second-difference Hessian estimates over a grid of interior points. For
// d = 1 these are plain second differences.
CurvatureProbe hessian_probe(const ObjectiveSequence& seq, int k,
                             const std::vector<std::vector<double>>& grid, double h);

}  // namespace fscap
