#include "ordrep/nn/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ordrep/nn/unimodal.hpp"
#include "ordrep/replicate/frank_hall.hpp"
#include "ordrep/simd/kernels.hpp"

namespace ordrep {
namespace {

MLPArchitecture single_hidden(std::size_t inputs, std::size_t hidden, std::size_t outputs, Activation out) {
  MLPArchitecture arch;
  arch.input_dim = inputs;
  if (hidden > 0) arch.hidden = {hidden};
  arch.output_dim = outputs;
  arch.output = out;
  return arch;
}

void check_owner(std::size_t got, std::size_t want) {
  if (got != want) throw std::invalid_argument("input dimension does not match the network");
}

TrainTrace* next_trace(const NNOptions& options) {
  if (!options.traces) return nullptr;
  options.traces->emplace_back();
  return &options.traces->back();
}

}  // namespace

ClassifierNN::ClassifierNN(MLPModel net, int num_classes) : net_(std::move(net)), num_classes_(num_classes) {
  if (net_.architecture().output_dim != static_cast<std::size_t>(num_classes_) ||
      net_.architecture().output != Activation::softmax) {
    throw std::invalid_argument("cNN needs K softmax outputs");
  }
}

std::vector<double> ClassifierNN::probabilities(std::span<const double> x) const { return net_.forward(x); }

int ClassifierNN::predict(std::span<const double> x) const { return argmax_class(probabilities(x)); }

ClassifierNN train_cnn(const Dataset& data, const NNOptions& options) {
  const auto k = static_cast<std::size_t>(data.num_classes());
  Matrix targets(data.size(), k);
  for (std::size_t i = 0; i < data.size(); ++i) targets(i, static_cast<std::size_t>(data.label(i) - 1)) = 1.0;
  const auto arch = single_hidden(data.dim(), options.hidden_units, k, Activation::softmax);
  return ClassifierNN(train_mlp(arch, data.features(), targets, options.train, next_trace(options)), data.num_classes());
}

FrankHallNN::FrankHallNN(int num_classes, std::vector<MLPModel> nets)
    : num_classes_(num_classes), nets_(std::move(nets)) {
  if (nets_.size() != static_cast<std::size_t>(num_classes_ - 1)) {
    throw std::invalid_argument("Frank-Hall ensemble needs K-1 networks");
  }
  for (const auto& n : nets_) {
    if (n.architecture().output_dim != 1 || n.architecture().output != Activation::logistic) {
      throw std::invalid_argument("pNN members need one logistic output");
    }
  }
}

std::vector<double> FrankHallNN::exceedance(std::span<const double> x) const {
  std::vector<double> p;
  p.reserve(nets_.size());
  for (const auto& n : nets_) p.push_back(n.forward(x)[0]);
  return p;
}

std::vector<double> FrankHallNN::class_masses(std::span<const double> x) const {
  return frank_hall_masses(exceedance(x));
}

int FrankHallNN::predict(std::span<const double> x) const { return argmax_class(class_masses(x)); }

FrankHallNN train_pnn(const Dataset& data, const NNOptions& options) {
  const auto arch = single_hidden(data.dim(), options.hidden_units, 1, Activation::logistic);
  std::vector<MLPModel> nets;
  for (int i = 1; i < data.num_classes(); ++i) {
    Matrix targets(data.size(), 1);
    for (std::size_t n = 0; n < data.size(); ++n) targets(n, 0) = data.label(n) > i ? 1.0 : 0.0;
    TrainOptions opts = options.train;
    opts.seed = options.train.seed + static_cast<std::uint64_t>(i - 1);
    nets.push_back(train_mlp(arch, data.features(), targets, opts, next_trace(options)));
  }
  return FrankHallNN(data.num_classes(), std::move(nets));
}

MLPArchitecture onn_architecture(const ReplicationConfig& config, std::size_t hidden_units) {
  config.validate();
  auto arch = single_hidden(config.extended_dim(), hidden_units, 1, Activation::logistic);
  arch.passthrough = config.e_block_dim();
  return arch;
}

OrdinalNN::OrdinalNN(MLPModel net, ReplicationConfig config) : net_(std::move(net)), config_(config) {
  config_.validate();
  const auto& a = net_.architecture();
  if (a.input_dim != config_.extended_dim() || a.passthrough != config_.e_block_dim() || a.output_dim != 1 ||
      a.output != Activation::logistic) {
    throw std::invalid_argument("network does not have the oNN shape for this replication config");
  }
}

double OrdinalNN::latent(std::span<const double> x) const {
  check_owner(x.size(), config_.dim);
  std::vector<double> replica(config_.extended_dim());
  write_replica(x, 1, config_, replica);
  return -net_.output_preactivation(replica)[0];
}

std::vector<double> OrdinalNN::cut_points() const {
  const auto& a = net_.architecture();
  const auto w = net_.weights(a.num_layers() - 1);
  const std::size_t e_dim = config_.e_block_dim();
  const auto w_e = w.subspan(w.size() - e_dim, e_dim);
  std::vector<double> phi;
  for (int k = 1; k < config_.num_classes; ++k) {
    const auto e = e_block(k, config_);
    phi.push_back(e_dim == 0 ? 0.0 : simd::dot(w_e, e));
  }
  return phi;
}

// Evaluated on each replica, so it also holds when j < dim and the feature
// block differs per boundary; for j == dim it equals logsig(Phi_k - G(x)).
std::vector<double> OrdinalNN::cumulative_probabilities(std::span<const double> x) const {
  check_owner(x.size(), config_.dim);
  const Matrix replicas = make_query_replicas(x, config_);
  std::vector<double> p;
  for (std::size_t q = 0; q < replicas.rows(); ++q) p.push_back(net_.forward(replicas.row(q))[0]);
  return p;
}

std::vector<double> OrdinalNN::class_probabilities(std::span<const double> x) const {
  const auto cum = cumulative_probabilities(x);
  // Pr(C > k) = 1 - P_k feeds the same difference rule as the Frank-Hall masses.
  std::vector<double> greater;
  for (double p : cum) greater.push_back(1.0 - p);
  return frank_hall_masses(greater);
}

int OrdinalNN::predict(std::span<const double> x) const {
  int cls = 1;
  for (double p : cumulative_probabilities(x)) cls += p < 0.5 ? 1 : 0;
  return cls;
}

OrdinalNN train_onn(const Dataset& data, const ReplicationConfig& config, const NNOptions& options) {
  if (config.num_classes != data.num_classes() || config.dim != data.dim()) {
    throw std::invalid_argument("replication config does not match the dataset");
  }
  const auto ext = replicate(data, config);
  Matrix targets(ext.size(), 1);
  for (std::size_t i = 0; i < ext.size(); ++i) targets(i, 0) = ext.labels[i] == BinaryLabel::lower ? 1.0 : 0.0;
  const auto arch = onn_architecture(config, options.hidden_units);
  return OrdinalNN(train_mlp(arch, ext.features, targets, options.train, next_trace(options)), config);
}

UnimodalNN::UnimodalNN(MLPModel net, int num_classes) : net_(std::move(net)), num_classes_(num_classes) {
  if (num_classes_ < 2) throw std::invalid_argument("unimodal model needs K >= 2");
  if (net_.architecture().output_dim != 1 || net_.architecture().output != Activation::logistic) {
    throw std::invalid_argument("uNN needs one logistic output");
  }
}

double UnimodalNN::parameter(std::span<const double> x) const { return net_.forward(x)[0]; }

std::vector<double> UnimodalNN::posteriors(std::span<const double> x) const {
  return binomial_posteriors(parameter(x), num_classes_);
}

int UnimodalNN::predict(std::span<const double> x) const { return predict_unimodal(parameter(x), num_classes_); }

UnimodalNN train_unn(const Dataset& data, const NNOptions& options) {
  Matrix targets(data.size(), 1);
  for (std::size_t i = 0; i < data.size(); ++i) targets(i, 0) = unimodal_target(data.label(i), data.num_classes());
  const auto arch = single_hidden(data.dim(), options.hidden_units, 1, Activation::logistic);
  return UnimodalNN(train_mlp(arch, data.features(), targets, options.train, next_trace(options)), data.num_classes());
}

}  // namespace ordrep
