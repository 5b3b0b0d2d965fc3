#include "ordrep/svm/ordinal_svm.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "ordrep/core/csv.hpp"
#include "ordrep/simd/kernels.hpp"

namespace ordrep {

OrdinalSVMModel::OrdinalSVMModel(BinarySVMModel machine, ReplicationConfig config)
    : machine_(std::move(machine)), config_(config) {
  config_.validate();
  const auto w_e = machine_.coef().empty() ? std::vector<double>(config_.e_block_dim(), 0.0)
                                           : machine_.tail_weights();
  biases_.resize(static_cast<std::size_t>(config_.num_classes - 1));
  for (int q = 1; q <= config_.num_classes - 1; ++q) {
    const auto e = e_block(q, config_);
    biases_[static_cast<std::size_t>(q - 1)] = machine_.bias() + simd::dot(w_e, e);
  }
}

double OrdinalSVMModel::boundary_decision(std::span<const double> x, int q) const {
  std::vector<double> replica(config_.extended_dim());
  write_replica(x, q, config_, replica);
  return machine_.decision(replica);
}

std::vector<double> OrdinalSVMModel::boundary_decisions(std::span<const double> x) const {
  if (x.size() != config_.dim) throw std::invalid_argument("oSVM input dimension mismatch");
  const Matrix replicas = make_query_replicas(x, config_);
  std::vector<double> g(replicas.rows());
  for (std::size_t q = 0; q < replicas.rows(); ++q) g[q] = machine_.decision(replicas.row(q));
  return g;
}

int OrdinalSVMModel::predict(std::span<const double> x) const {
  const auto g = boundary_decisions(x);
  std::vector<BinaryLabel> seq(g.size());
  std::transform(g.begin(), g.end(), seq.begin(),
                 [](double v) { return v > 0.0 ? BinaryLabel::upper : BinaryLabel::lower; });
  return decode(seq, config_.num_classes);
}

OrdinalSVMModel train_osvm(const Dataset& data, double C, const ReplicationConfig& config, const Kernel& base,
                           const SmoOptions& options) {
  const ExtendedDataset ext = replicate(data, config);
  const Kernel kernel = base.extended(config.e_block_dim());
  const bool has_lower = std::find(ext.labels.begin(), ext.labels.end(), BinaryLabel::lower) != ext.labels.end();
  const bool has_upper = std::find(ext.labels.begin(), ext.labels.end(), BinaryLabel::upper) != ext.labels.end();
  if (!has_lower || !has_upper) {
    // Degenerate training sample (e.g. a single class present).
    const auto label = has_upper ? BinaryLabel::upper : BinaryLabel::lower;
    return OrdinalSVMModel(BinarySVMModel::constant(label, kernel, C), config);
  }
  return OrdinalSVMModel(train_binary_svm(ext.features, ext.labels, C, kernel, {}, options), config);
}

}  // namespace ordrep
