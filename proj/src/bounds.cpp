#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fscap {

namespace {

// Below this gradient norm the central-difference direction is dominated by
// rounding (absolute FD error is ~1e-10 at h = 1e-6), so backtrack counts
// stop reflecting the curvature theory and are excluded from the uniform
// contraction estimate. The recursion itself uses the accepted step sizes
// directly and stays valid either way.
constexpr double kGradientNoiseFloor = 1e-7;

// Per accepted step, floating-point evaluation error in the Armijo check is
// a few ulps of the objective scale; the recursion absorbs it explicitly.
constexpr double kEvalSlack = 16.0 * std::numeric_limits<double>::epsilon();

}  // namespace

BoundReport certified_bound(const std::vector<IterateRecord>& trace,
                            const ObjectiveSequence& seq, double alpha, double beta,
                            double dist_c, double delta0) {
  if (trace.empty()) throw ConfigError("certified_bound: empty trace");
  const SequenceConstants& c = seq.constants();
  if (!c.small_m) {
    throw AssumptionError("certified_bound: strong-concavity modulus m required");
  }
  if (!(alpha > 0.0 && alpha < 0.5) || !(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("certified_bound: alpha/beta outside their ranges");
  }
  if (!(dist_c >= 0.0)) throw ConfigError("certified_bound: dist_c must be non-negative");
  if (!(delta0 > 0.0)) throw ConfigError("certified_bound: delta0 must be positive");

  const double m = *c.small_m;
  const double two_ma = 2.0 * m * alpha;
  const int final_index = trace.back().outer_k;  // k0 + K
  const double n_conservative = c.n_at(final_index);

  BoundReport report;
  report.delta0 = delta0;

  int t_theory = 0;
  for (const auto& rec : trace) {
    report.max_backtracks_seen = std::max(report.max_backtracks_seen, rec.backtracks);
    if (rec.grad_norm >= kGradientNoiseFloor) {
      t_theory = std::max(t_theory, rec.backtracks);
    }
  }

  report.eta = 1.0 - two_ma * std::pow(beta, t_theory);
  report.eta_formula =
      1.0 - std::min({two_ma, (dist_c / c.big_m) * two_ma * beta,
                      two_ma * beta / c.big_m});
  if (!(report.eta > 0.0 && report.eta < 1.0)) {
    throw AssumptionError("certified_bound: constants inconsistent with convergence "
                          "guarantee (eta = " + std::to_string(report.eta) + ")");
  }

  report.gamma_coeff = (n_conservative * c.big_m + c.big_m * c.big_m +
                        2.0 * n_conservative) / c.rho + 2.0 * n_conservative * c.big_m;

  // gap_k <= (1 - 2 m alpha t_k) gap_{k-1} + gamma_k, folded over the trace
  // with the accepted step sizes; every coefficient is <= the uniform eta.
  double gap = delta0;
  for (const auto& rec : trace) {
    double coeff = std::max(0.0, 1.0 - two_ma * rec.step_t);
    gap = coeff * gap + report.gamma_coeff * std::pow(c.rho, rec.outer_k + 1) +
          kEvalSlack;
  }
  report.recursion_bound = gap;
  report.tail = n_conservative * std::pow(c.rho, final_index);

  const double f_final = trace.back().f_value;
  report.interval = {f_final - report.tail,
                     f_final + report.tail + report.recursion_bound};
  return report;
}

}  // namespace fscap
