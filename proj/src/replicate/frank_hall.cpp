#include "ordrep/replicate/frank_hall.hpp"

#include <stdexcept>

namespace ordrep {

std::vector<BinaryLabel> frank_hall_labels(const Dataset& data, int boundary) {
  if (boundary < 1 || boundary > data.num_classes() - 1) {
    throw std::out_of_range("Frank-Hall boundary out of range");
  }
  std::vector<BinaryLabel> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = data.label(i) > boundary ? BinaryLabel::upper : BinaryLabel::lower;
  }
  return out;
}

std::vector<double> frank_hall_masses(std::span<const double> p_greater) {
  if (p_greater.empty()) throw std::invalid_argument("frank_hall_masses: need K-1 >= 1 estimates");
  const std::size_t k = p_greater.size() + 1;
  std::vector<double> mass(k);
  mass[0] = 1.0 - p_greater[0];
  for (std::size_t c = 1; c + 1 < k; ++c) mass[c] = p_greater[c - 1] - p_greater[c];
  mass[k - 1] = p_greater[k - 2];
  double total = 0.0;
  for (double& m : mass) {
    if (m < 0.0) m = 0.0;
    total += m;
  }
  for (double& m : mass) m = total > 0.0 ? m / total : 1.0 / static_cast<double>(k);
  return mass;
}

int argmax_class(std::span<const double> masses) {
  if (masses.empty()) throw std::invalid_argument("argmax_class: empty vector");
  std::size_t best = 0;
  for (std::size_t c = 1; c < masses.size(); ++c) {
    if (masses[c] > masses[best]) best = c;
  }
  return static_cast<int>(best) + 1;
}

}  // namespace ordrep
