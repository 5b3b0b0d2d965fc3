#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ordrep/core/matrix.hpp"
#include "ordrep/core/text_record.hpp"
#include "ordrep/replicate/replicate.hpp"
#include "ordrep/svm/kernel.hpp"
#include "ordrep/svm/smo.hpp"

namespace ordrep {

// Trained soft-margin machine: g(x) = sum_i coef_i k(sv_i, x) + bias, with
// coef_i = alpha_i y_i over the support vectors (alpha_i > 0).
class BinarySVMModel {
 public:
  BinarySVMModel() = default;
  BinarySVMModel(Kernel kernel, double C, Matrix support, std::vector<double> coef, double bias);

  // A machine with no support vectors whose decision is +-infinity; used when
  // a training sample holds a single binary class.
  static BinarySVMModel constant(BinaryLabel label, Kernel kernel, double C);

  double decision(std::span<const double> x) const;
  BinaryLabel classify(std::span<const double> x) const {
    return decision(x) > 0.0 ? BinaryLabel::upper : BinaryLabel::lower;
  }

  const Kernel& kernel() const { return kernel_; }
  double C() const { return C_; }
  const Matrix& support() const { return support_; }
  std::span<const double> coef() const { return coef_; }
  double bias() const { return bias_; }
  std::size_t input_dim() const { return support_.cols(); }

  // sum_i coef_i sv_i restricted to the trailing `linear_tail` coordinates,
  // i.e. the weights on the part of the input that enters the kernel linearly.
  std::vector<double> tail_weights() const;
  // Primal weight vector; only defined for a linear kernel.
  std::vector<double> primal_weights() const;

  // Solver bookkeeping from training.
  std::size_t iterations = 0;
  double dual_objective = 0.0;
  double final_gap = 0.0;

  // Writes the `bias` / `support` block of the model file; kernel and C are
  // carried by the enclosing header.
  void save_block(std::ostream& out) const;
  static BinarySVMModel load_block(RecordReader& in, const Kernel& kernel, double C);

 private:
  Kernel kernel_;
  double C_ = 1.0;
  Matrix support_;
  std::vector<double> coef_;
  double bias_ = 0.0;
};

// Trains on rows of x with labels y. `per_example_costs`, when non-empty,
// replaces the uniform bound C for each example.
BinarySVMModel train_binary_svm(const Matrix& x, std::span<const BinaryLabel> y, double C, const Kernel& kernel,
                                std::span<const double> per_example_costs = {}, const SmoOptions& options = {});

struct SlackReport {
  std::vector<double> xi;           // max(0, 1 - y g(x))
  std::size_t slack_bound = 0;      // #{xi > 1}, the sign-count bound
  std::size_t training_errors = 0;  // #{y g(x) < 0}
};

SlackReport slack_diagnostics(const BinarySVMModel& model, const Matrix& x, std::span<const BinaryLabel> y);

}  // namespace ordrep
