#include "verify.hpp"

#include <cmath>
#include <limits>

namespace fscap {

namespace {

// Full product grid with grid_points per axis, endpoints included.
std::vector<std::vector<double>> product_grid(const ParamDomain& dom, int grid_points) {
  const int d = dom.dim();
  std::vector<std::vector<double>> grid;
  std::vector<int> idx(d, 0);
  for (;;) {
    std::vector<double> point(d);
    for (int i = 0; i < d; ++i) {
      double frac = static_cast<double>(idx[i]) / (grid_points - 1);
      point[i] = dom.lower()[i] + frac * (dom.upper()[i] - dom.lower()[i]);
    }
    grid.push_back(std::move(point));
    int axis = 0;
    while (axis < d && ++idx[axis] == grid_points) {
      idx[axis] = 0;
      ++axis;
    }
    if (axis == d) break;
  }
  return grid;
}

struct GridScan {
  double interior_max = -std::numeric_limits<double>::infinity();
  double boundary_max = -std::numeric_limits<double>::infinity();
  double overall_max = -std::numeric_limits<double>::infinity();
};

GridScan scan_objective(const ObjectiveSequence& seq, int k,
                        const std::vector<std::vector<double>>& grid,
                        std::vector<double>* values) {
  GridScan scan;
  for (const auto& point : grid) {
    double v = seq.eval(k, point);
    if (values) values->push_back(v);
    scan.overall_max = std::max(scan.overall_max, v);
    if (seq.domain().classify(point) == PointClass::Interior) {
      scan.interior_max = std::max(scan.interior_max, v);
    } else {
      scan.boundary_max = std::max(scan.boundary_max, v);
    }
  }
  return scan;
}

int proxy_index(const ObjectiveSequence& seq, int proxy_k) {
  if (proxy_k >= 0) return proxy_k;
  int k = seq.constants().k0 + 40;
  if (seq.proxy_k_limit() >= 0) k = std::min(k, seq.proxy_k_limit());
  return k;
}

}  // namespace

LemmaReport verify_lemma1(const ObjectiveSequence& seq, int grid_points, int proxy_k) {
  if (grid_points < 11) throw ConfigError("verify_lemma1: grid_points must be >= 11");
  const SequenceConstants& c = seq.constants();
  const double n0 = c.n_at(c.k0);
  const double rho_k0 = std::pow(c.rho, c.k0);

  LemmaReport report;
  report.k0_checked = c.k0;
  report.cond_a_lhs = {
      ((n0 + c.big_m) * c.big_m * c.rho * rho_k0 + 2.0 * n0 * c.rho * rho_k0) /
          (1.0 - c.rho),
      n0 * rho_k0,
  };

  auto grid = product_grid(seq.domain(), grid_points);
  GridScan proxy = scan_objective(seq, proxy_index(seq, proxy_k), grid, nullptr);
  report.delta_est = proxy.overall_max - proxy.boundary_max;
  if (report.delta_est <= 0.0) {
    report.passed = false;  // maximum sits on the boundary
    return report;
  }
  report.y0 = 0.5 * (proxy.boundary_max + proxy.overall_max);

  // Distance from C = {f_k0 >= y0 - delta/8} to the boundary, by grid scan.
  const double level = report.y0 - report.delta_est / 8.0;
  double dist = std::numeric_limits<double>::infinity();
  bool c_nonempty = false;
  for (const auto& point : grid) {
    if (seq.eval(c.k0, point) < level) continue;
    c_nonempty = true;
    dist = std::min(dist, seq.domain().boundary_distance(point));
  }
  report.dist_c_boundary = c_nonempty ? dist : 0.0;

  const double budget = report.delta_est / 8.0;
  report.passed = c_nonempty && report.cond_a_lhs[0] <= budget &&
                  report.cond_a_lhs[1] <= budget && report.dist_c_boundary > 0.0;
  return report;
}

LemmaReport verify_lemma5(const ObjectiveSequence& seq, double b, int grid_points,
                          int proxy_k) {
  if (grid_points < 11) throw ConfigError("verify_lemma5: grid_points must be >= 11");
  if (!(b > 0.0 && b < 1.0)) throw ConfigError("verify_lemma5: b must lie in (0,1)");
  const SequenceConstants& c = seq.constants();
  const double n0 = c.n_at(c.k0);
  const double rho_k0 = std::pow(c.rho, c.k0);

  LemmaReport report;
  report.k0_checked = c.k0;
  report.cond_a_lhs = {
      std::pow(c.rho, 1.0 / 3.0) + std::pow(c.rho, 2.0 * c.k0 / 3.0),
      2.0 * n0 * rho_k0 / (1.0 - c.rho),
  };

  auto grid = product_grid(seq.domain(), grid_points);
  std::vector<double> f_k0_values;
  f_k0_values.reserve(grid.size());
  GridScan at_k0 = scan_objective(seq, c.k0, grid, &f_k0_values);
  GridScan proxy = (proxy_index(seq, proxy_k) == c.k0)
                       ? at_k0
                       : scan_objective(seq, proxy_index(seq, proxy_k), grid, nullptr);
  report.delta_est = proxy.overall_max - proxy.boundary_max;
  if (report.delta_est <= 0.0) {
    report.passed = false;
    return report;
  }
  report.y0 = 0.5 * (proxy.boundary_max + proxy.overall_max);

  const double level = report.y0 - report.delta_est / 8.0;
  const double floor = 2.0 * n0 * std::pow(c.rho, c.k0 / 3.0) / (1.0 - b);
  double dist = std::numeric_limits<double>::infinity();
  bool c_nonempty = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (f_k0_values[i] < level) continue;
    c_nonempty = true;
    dist = std::min(dist, seq.domain().boundary_distance(grid[i]));
  }
  report.dist_c_boundary = c_nonempty ? dist : 0.0;

  // Witness scan for A intersect B: first interior grid point whose gradient
  // clears the floor while f_k0 clears y0.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (f_k0_values[i] < report.y0) continue;
    if (seq.domain().classify(grid[i]) != PointClass::Interior) continue;
    const auto grad = seq.gradient(c.k0, grid[i]);
    double norm_sq = 0.0;
    for (double g : grad) norm_sq += g * g;
    if (std::sqrt(norm_sq) >= floor) {
      report.witness = grid[i];
      break;
    }
  }

  report.passed = c_nonempty && report.cond_a_lhs[0] < 1.0 &&
                  report.cond_a_lhs[1] <= report.delta_est / 8.0 &&
                  report.dist_c_boundary > 0.0 && !report.witness.empty();
  return report;
}

}  // namespace fscap
