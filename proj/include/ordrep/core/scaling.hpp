#pragma once

#include <span>
#include <vector>

#include "ordrep/core/dataset.hpp"

namespace ordrep {

// Per-feature min-max scaler. A constant feature (max == min) maps to 0.
// Out-of-range inputs are extrapolated linearly, not clamped.
class MinMaxScaler {
 public:
  MinMaxScaler(std::vector<double> min, std::vector<double> max);

  static MinMaxScaler fit(const Dataset& data);

  std::vector<double> apply(std::span<const double> x) const;
  Dataset apply(const Dataset& data) const;

  std::span<const double> min() const { return min_; }
  std::span<const double> max() const { return max_; }
  std::size_t dim() const { return min_.size(); }

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

inline MinMaxScaler fit_minmax(const Dataset& data) { return MinMaxScaler::fit(data); }
inline std::vector<double> apply_minmax(const MinMaxScaler& s, std::span<const double> x) {
  return s.apply(x);
}

}  // namespace ordrep
