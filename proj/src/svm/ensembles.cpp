#include "ordrep/svm/ensembles.hpp"

#include <cmath>
#include <stdexcept>

#include "ordrep/replicate/frank_hall.hpp"

namespace ordrep {
namespace {

// A machine with no support vectors and zero bias carries no information
// (neither class of its pair was in the training sample) and does not vote.
bool abstains(const BinarySVMModel& m) { return m.coef().empty() && m.bias() == 0.0; }

BinarySVMModel train_or_constant(const Matrix& x, const std::vector<BinaryLabel>& y, double C,
                                 const Kernel& kernel, const SmoOptions& options) {
  bool lower = false, upper = false;
  for (auto label : y) (label == BinaryLabel::upper ? upper : lower) = true;
  if (lower && upper) return train_binary_svm(x, y, C, kernel, {}, options);
  if (!lower && !upper) return BinarySVMModel(kernel, C, Matrix(), {}, 0.0);
  return BinarySVMModel::constant(upper ? BinaryLabel::upper : BinaryLabel::lower, kernel, C);
}

}  // namespace

OneVsOneSVM::OneVsOneSVM(int num_classes, std::size_t dim, std::vector<std::pair<int, int>> pairs,
                         std::vector<BinarySVMModel> machines)
    : num_classes_(num_classes), dim_(dim), pairs_(std::move(pairs)), machines_(std::move(machines)) {
  if (pairs_.size() != machines_.size()) throw std::invalid_argument("one-vs-one pair/machine count mismatch");
}

std::vector<int> OneVsOneSVM::votes(std::span<const double> x) const {
  std::vector<int> v(static_cast<std::size_t>(num_classes_), 0);
  for (std::size_t m = 0; m < machines_.size(); ++m) {
    if (abstains(machines_[m])) continue;
    const auto [a, b] = pairs_[m];
    const int winner = machines_[m].classify(x) == BinaryLabel::upper ? b : a;
    ++v[static_cast<std::size_t>(winner - 1)];
  }
  return v;
}

int OneVsOneSVM::predict(std::span<const double> x) const {
  const auto v = votes(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < v.size(); ++c) {
    if (v[c] > v[best]) best = c;
  }
  return static_cast<int>(best) + 1;
}

OneVsOneSVM train_csvm(const Dataset& data, double C, const Kernel& kernel, const SmoOptions& options) {
  const int k = data.num_classes();
  std::vector<std::pair<int, int>> pairs;
  std::vector<BinarySVMModel> machines;
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      Matrix x(0, data.dim());
      std::vector<BinaryLabel> y;
      for (std::size_t i = 0; i < data.size(); ++i) {
        const int c = data.label(i);
        if (c != a && c != b) continue;
        x.append_row(data.row(i));
        y.push_back(c == b ? BinaryLabel::upper : BinaryLabel::lower);
      }
      pairs.emplace_back(a, b);
      machines.push_back(train_or_constant(x, y, C, kernel, options));
    }
  }
  return OneVsOneSVM(k, data.dim(), std::move(pairs), std::move(machines));
}

FrankHallSVM::FrankHallSVM(int num_classes, std::size_t dim, std::vector<BinarySVMModel> machines)
    : num_classes_(num_classes), dim_(dim), machines_(std::move(machines)) {
  if (machines_.size() != static_cast<std::size_t>(num_classes_ - 1)) {
    throw std::invalid_argument("Frank-Hall ensemble needs K-1 machines");
  }
}

std::vector<double> FrankHallSVM::exceedance(std::span<const double> x) const {
  std::vector<double> p(machines_.size());
  for (std::size_t i = 0; i < machines_.size(); ++i) {
    p[i] = 1.0 / (1.0 + std::exp(-machines_[i].decision(x)));
  }
  return p;
}

std::vector<double> FrankHallSVM::class_masses(std::span<const double> x) const {
  return frank_hall_masses(exceedance(x));
}

int FrankHallSVM::predict(std::span<const double> x) const { return argmax_class(class_masses(x)); }

FrankHallSVM train_psvm(const Dataset& data, double C, const Kernel& kernel, const SmoOptions& options) {
  std::vector<BinarySVMModel> machines;
  for (int i = 1; i < data.num_classes(); ++i) {
    const auto y = frank_hall_labels(data, i);
    machines.push_back(train_or_constant(data.features(), y, C, kernel, options));
  }
  return FrankHallSVM(data.num_classes(), data.dim(), std::move(machines));
}

}  // namespace ordrep
