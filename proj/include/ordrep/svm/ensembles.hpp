#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ordrep/core/dataset.hpp"
#include "ordrep/svm/binary_svm.hpp"

namespace ordrep {

// One-vs-one multiclass SVM (cSVM). Machine (a, b), a < b, answers `upper`
// for class b. Prediction is a majority vote, ties to the smaller class.
class OneVsOneSVM {
 public:
  OneVsOneSVM(int num_classes, std::size_t dim, std::vector<std::pair<int, int>> pairs,
              std::vector<BinarySVMModel> machines);

  int num_classes() const { return num_classes_; }
  std::size_t dim() const { return dim_; }
  std::span<const BinarySVMModel> machines() const { return machines_; }
  std::span<const std::pair<int, int>> pairs() const { return pairs_; }

  std::vector<int> votes(std::span<const double> x) const;
  int predict(std::span<const double> x) const;

 private:
  int num_classes_;
  std::size_t dim_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<BinarySVMModel> machines_;
};

OneVsOneSVM train_csvm(const Dataset& data, double C, const Kernel& kernel, const SmoOptions& options = {});

// Frank-Hall ensemble (pSVM): machine i tests class > i. Decision values
// pass through a unit logistic to give Pr(C > i).
class FrankHallSVM {
 public:
  FrankHallSVM(int num_classes, std::size_t dim, std::vector<BinarySVMModel> machines);

  int num_classes() const { return num_classes_; }
  std::size_t dim() const { return dim_; }
  std::span<const BinarySVMModel> machines() const { return machines_; }

  std::vector<double> exceedance(std::span<const double> x) const;
  std::vector<double> class_masses(std::span<const double> x) const;
  int predict(std::span<const double> x) const;

 private:
  int num_classes_;
  std::size_t dim_;
  std::vector<BinarySVMModel> machines_;
};

FrankHallSVM train_psvm(const Dataset& data, double C, const Kernel& kernel, const SmoOptions& options = {});

}  // namespace ordrep
