#include "domain.hpp"

#include <algorithm>
#include <limits>

namespace fscap {

ParamDomain::ParamDomain(std::vector<double> lower, std::vector<double> upper,
                         double interior_margin)
    : lower_(std::move(lower)), upper_(std::move(upper)), margin_(interior_margin) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw DimensionError("ParamDomain: lower/upper must be nonempty and of equal size");
  }
  if (!(margin_ > 0.0)) {
    throw ConfigError("ParamDomain: interior_margin must be positive");
  }
  double min_width = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw ConfigError("ParamDomain: lower[" + std::to_string(i) +
                        "] must be strictly below upper[" + std::to_string(i) + "]");
    }
    min_width = std::min(min_width, upper_[i] - lower_[i]);
  }
  if (!(margin_ < min_width / 2.0)) {
    throw ConfigError("ParamDomain: interior_margin must be below half the smallest width");
  }
}

PointClass ParamDomain::classify(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != dim()) {
    throw DimensionError("classify_point: expected dimension " + std::to_string(dim()) +
                         ", got " + std::to_string(theta.size()));
  }
  bool interior = true;
  for (int i = 0; i < dim(); ++i) {
    if (theta[i] < lower_[i] || theta[i] > upper_[i]) {
      return PointClass::Outside;
    }
    if (theta[i] < lower_[i] + margin_ || theta[i] > upper_[i] - margin_) {
      interior = false;
    }
  }
  return interior ? PointClass::Interior : PointClass::Boundary;
}

double ParamDomain::boundary_distance(std::span<const double> theta) const {
  if (classify(theta) == PointClass::Outside) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim(); ++i) {
    d = std::min(d, std::min(theta[i] - lower_[i], upper_[i] - theta[i]));
  }
  return std::max(d, 0.0);
}

std::vector<double> ParamDomain::center() const {
  std::vector<double> c(lower_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
  return c;
}

PointClass classify_point(const ParamDomain& domain, std::span<const double> theta) {
  return domain.classify(theta);
}

}  // namespace fscap
