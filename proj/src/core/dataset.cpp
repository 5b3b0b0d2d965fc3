#include "ordrep/core/dataset.hpp"

#include <stdexcept>
#include <string>

namespace ordrep {

Dataset::Dataset(Matrix features, std::vector<int> labels, int num_classes)
    : features_(std::move(features)), labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ < 2) throw std::invalid_argument("dataset needs at least 2 classes");
  if (features_.rows() != labels_.size()) {
    throw std::invalid_argument("feature rows (" + std::to_string(features_.rows()) +
                                ") do not match label count (" + std::to_string(labels_.size()) + ")");
  }
  if (!labels_.empty() && features_.cols() < 1) {
    throw std::invalid_argument("dataset needs at least one feature");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 1 || labels_[i] > num_classes_) {
      throw std::invalid_argument("label " + std::to_string(labels_[i]) + " at row " + std::to_string(i) +
                                  " outside 1.." + std::to_string(num_classes_));
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Matrix m(indices.size(), dim());
  std::vector<int> y(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::size_t src = indices[r];
    if (src >= size()) throw std::out_of_range("subset index out of range");
    auto from = row(src);
    std::copy(from.begin(), from.end(), m.row(r).begin());
    y[r] = labels_[src];
  }
  return Dataset(std::move(m), std::move(y), num_classes_);
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes_), 0);
  for (int y : labels_) ++counts[static_cast<std::size_t>(y - 1)];
  return counts;
}

}  // namespace ordrep
