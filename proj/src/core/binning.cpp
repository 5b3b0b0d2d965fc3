#include "ordrep/core/binning.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ordrep {

std::vector<int> equal_frequency_bins(std::span<const double> values, int num_classes) {
  const std::size_t n = values.size();
  if (num_classes < 2) throw std::invalid_argument("equal_frequency_bins: K must be >= 2");
  if (static_cast<std::size_t>(num_classes) > n) {
    throw std::invalid_argument("equal_frequency_bins: K exceeds number of values");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  const auto k = static_cast<std::size_t>(num_classes);
  std::vector<int> labels(n);
  int bin = 1;
  std::size_t next_cut_index = 1;  // i in ceil(i*n/K)
  auto cut_at = [&](std::size_t i) { return (i * n + k - 1) / k; };
  for (std::size_t pos = 0; pos < n; ++pos) {
    while (next_cut_index < k && pos >= cut_at(next_cut_index)) {
      ++bin;
      ++next_cut_index;
    }
    const std::size_t idx = order[pos];
    if (pos > 0 && values[order[pos - 1]] == values[idx]) {
      labels[idx] = labels[order[pos - 1]];
    } else {
      labels[idx] = bin;
    }
  }
  return labels;
}

}  // namespace ordrep
