#include "ordrep/svm/binary_svm.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "ordrep/core/csv.hpp"

namespace ordrep {

BinarySVMModel::BinarySVMModel(Kernel kernel, double C, Matrix support, std::vector<double> coef, double bias)
    : kernel_(kernel), C_(C), support_(std::move(support)), coef_(std::move(coef)), bias_(bias) {
  if (support_.rows() != coef_.size()) throw std::invalid_argument("support/coefficient count mismatch");
}

BinarySVMModel BinarySVMModel::constant(BinaryLabel label, Kernel kernel, double C) {
  return BinarySVMModel(kernel, C, Matrix(), {}, sign_of(label) * std::numeric_limits<double>::infinity());
}

double BinarySVMModel::decision(std::span<const double> x) const {
  double g = bias_;
  for (std::size_t i = 0; i < coef_.size(); ++i) g += coef_[i] * kernel_(support_.row(i), x);
  return g;
}

std::vector<double> BinarySVMModel::tail_weights() const {
  const std::size_t tail = kernel_.linear_tail;
  std::vector<double> w(tail, 0.0);
  const std::size_t head = support_.cols() - tail;
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    const auto sv = support_.row(i);
    for (std::size_t t = 0; t < tail; ++t) w[t] += coef_[i] * sv[head + t];
  }
  return w;
}

std::vector<double> BinarySVMModel::primal_weights() const {
  if (kernel_.kind != KernelKind::linear) throw std::logic_error("primal weights need a linear kernel");
  std::vector<double> w(support_.cols(), 0.0);
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    const auto sv = support_.row(i);
    for (std::size_t d = 0; d < w.size(); ++d) w[d] += coef_[i] * sv[d];
  }
  return w;
}

void BinarySVMModel::save_block(std::ostream& out) const {
  out << "bias " << format_double(bias_, 17) << '\n';
  out << "support " << coef_.size() << ' ' << support_.cols() << '\n';
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    out << format_double(coef_[i], 17);
    for (double v : support_.row(i)) out << ' ' << format_double(v, 17);
    out << '\n';
  }
}

BinarySVMModel BinarySVMModel::load_block(RecordReader& in, const Kernel& kernel, double C) {
  const double bias = in.expect_double("bias");
  const auto dims = in.expect("support", 2);
  const auto n = static_cast<std::size_t>(parse_int(dims[0]));
  const auto cols = static_cast<std::size_t>(parse_int(dims[1]));
  Matrix support(n, cols);
  std::vector<double> coef(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tokens = in.next();
    if (tokens.size() != cols + 1) {
      throw std::runtime_error("model file line " + std::to_string(in.line()) + ": support row width mismatch");
    }
    coef[i] = parse_double(tokens[0]);
    for (std::size_t d = 0; d < cols; ++d) support(i, d) = parse_double(tokens[d + 1]);
  }
  return BinarySVMModel(kernel, C, std::move(support), std::move(coef), bias);
}

BinarySVMModel train_binary_svm(const Matrix& x, std::span<const BinaryLabel> y, double C, const Kernel& kernel,
                                std::span<const double> per_example_costs, const SmoOptions& options) {
  if (!(C > 0.0)) throw std::invalid_argument("SVM cost C must be positive");
  if (y.size() != x.rows()) throw std::invalid_argument("SVM label count does not match rows");
  if (!per_example_costs.empty() && per_example_costs.size() != x.rows()) {
    throw std::invalid_argument("per-example cost count does not match rows");
  }
  std::vector<double> ys(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) ys[i] = sign_of(y[i]);
  std::vector<double> upper(x.rows(), C);
  if (!per_example_costs.empty()) upper.assign(per_example_costs.begin(), per_example_costs.end());

  const DualSolution sol = solve_svm_dual(x, ys, upper, kernel, options);

  Matrix support(0, x.cols());
  std::vector<double> coef;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (sol.alpha[i] > 0.0) {
      support.append_row(x.row(i));
      coef.push_back(sol.alpha[i] * ys[i]);
    }
  }
  BinarySVMModel model(kernel, C, std::move(support), std::move(coef), sol.bias);
  model.iterations = sol.iterations;
  model.dual_objective = sol.objective;
  model.final_gap = sol.gap;
  return model;
}

SlackReport slack_diagnostics(const BinarySVMModel& model, const Matrix& x, std::span<const BinaryLabel> y) {
  SlackReport report;
  report.xi.resize(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double margin = sign_of(y[i]) * model.decision(x.row(i));
    report.xi[i] = std::max(0.0, 1.0 - margin);
    if (report.xi[i] > 1.0) ++report.slack_bound;
    if (margin < 0.0) ++report.training_errors;
  }
  return report;
}

}  // namespace ordrep
