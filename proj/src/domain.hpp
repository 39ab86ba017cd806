#pragma once

#include <span>
#include <vector>

#include "errors.hpp"

namespace fscap {

enum class PointClass { Interior, Boundary, Outside };

// Axis-aligned box in R^d. Points within interior_margin of a face are
// treated as non-interior so that the Interior test is decidable in
// floating point.
class ParamDomain {
 public:
  ParamDomain(std::vector<double> lower, std::vector<double> upper,
              double interior_margin = 1e-9);

  int dim() const { return static_cast<int>(lower_.size()); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  double interior_margin() const { return margin_; }

  PointClass classify(std::span<const double> theta) const;
  bool is_interior(std::span<const double> theta) const {
    return classify(theta) == PointClass::Interior;
  }

  // Distance from theta to the boundary of the box (0 if outside).
  double boundary_distance(std::span<const double> theta) const;

  std::vector<double> center() const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  double margin_;
};

// Exactly one of the three labels for every input of matching dimension.
PointClass classify_point(const ParamDomain& domain,
                          std::span<const double> theta);

}  // namespace fscap
