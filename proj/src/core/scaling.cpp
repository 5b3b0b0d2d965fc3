#include "ordrep/core/scaling.hpp"

#include <algorithm>
#include <stdexcept>

namespace ordrep {

MinMaxScaler::MinMaxScaler(std::vector<double> min, std::vector<double> max)
    : min_(std::move(min)), max_(std::move(max)) {
  if (min_.size() != max_.size()) throw std::invalid_argument("scaler extrema size mismatch");
  for (std::size_t d = 0; d < min_.size(); ++d) {
    if (!(min_[d] <= max_[d])) throw std::invalid_argument("scaler min exceeds max");
  }
}

MinMaxScaler MinMaxScaler::fit(const Dataset& data) {
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  std::vector<double> lo(data.row(0).begin(), data.row(0).end());
  std::vector<double> hi = lo;
  for (std::size_t i = 1; i < data.size(); ++i) {
    auto r = data.row(i);
    for (std::size_t d = 0; d < r.size(); ++d) {
      lo[d] = std::min(lo[d], r[d]);
      hi[d] = std::max(hi[d], r[d]);
    }
  }
  return MinMaxScaler(std::move(lo), std::move(hi));
}

std::vector<double> MinMaxScaler::apply(std::span<const double> x) const {
  if (x.size() != min_.size()) throw std::invalid_argument("scaler dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double range = max_[d] - min_[d];
    out[d] = range > 0.0 ? (x[d] - min_[d]) / range : 0.0;
  }
  return out;
}

Dataset MinMaxScaler::apply(const Dataset& data) const {
  Matrix m(data.size(), data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto scaled = apply(data.row(i));
    std::copy(scaled.begin(), scaled.end(), m.row(i).begin());
  }
  return Dataset(std::move(m), std::vector<int>(data.labels().begin(), data.labels().end()),
                 data.num_classes());
}

}  // namespace ordrep
