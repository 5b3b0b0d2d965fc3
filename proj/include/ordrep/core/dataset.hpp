#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ordrep/core/matrix.hpp"

namespace ordrep {

// Feature matrix plus ordinal labels in 1..K.
//
// Invariants (checked on construction): labels.size() == features.rows(),
// every label in [1, K], dim >= 1, K >= 2.
class Dataset {
 public:
  Dataset(Matrix features, std::vector<int> labels, int num_classes);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return features_.cols(); }
  int num_classes() const { return num_classes_; }

  std::span<const double> row(std::size_t i) const { return features_.row(i); }
  int label(std::size_t i) const { return labels_[i]; }
  std::span<const int> labels() const { return labels_; }
  const Matrix& features() const { return features_; }

  Dataset subset(std::span<const std::size_t> indices) const;

  // Number of examples per class; index 0 holds class 1.
  std::vector<std::size_t> class_counts() const;

 private:
  Matrix features_;
  std::vector<int> labels_;
  int num_classes_;
};

}  // namespace ordrep
