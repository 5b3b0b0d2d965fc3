#include "ordrep/nn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ordrep/simd/kernels.hpp"

namespace ordrep {
namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void apply_activation(Activation act, std::span<double> z) {
  switch (act) {
    case Activation::logistic:
      for (double& v : z) v = logistic(v);
      break;
    case Activation::linear:
      break;
    case Activation::softmax: {
      const double top = *std::max_element(z.begin(), z.end());
      double total = 0.0;
      for (double& v : z) {
        v = std::exp(v - top);
        total += v;
      }
      for (double& v : z) v /= total;
      break;
    }
  }
}

// Per-batch scratch space: the input vector and activation of every layer.
struct Workspace {
  std::vector<std::vector<double>> layer_in;
  std::vector<std::vector<double>> layer_out;
  std::vector<double> delta;
  std::vector<double> back;

  explicit Workspace(const MLPArchitecture& arch) {
    for (std::size_t l = 0; l < arch.num_layers(); ++l) {
      layer_in.emplace_back(arch.layer_inputs(l));
      layer_out.emplace_back(arch.layer_outputs(l));
    }
  }
};

void run_forward(const MLPModel& model, std::span<const double> x, Workspace& ws, bool activate_output = true) {
  const auto& arch = model.architecture();
  const std::size_t layers = arch.num_layers();
  const std::size_t head = arch.input_dim - arch.passthrough;
  if (layers == 1) {
    std::copy(x.begin(), x.end(), ws.layer_in[0].begin());
  } else {
    std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(head), ws.layer_in[0].begin());
  }
  for (std::size_t l = 0; l < layers; ++l) {
    const auto w = model.weights(l);
    const auto b = model.biases(l);
    const auto& in = ws.layer_in[l];
    auto& out = ws.layer_out[l];
    const std::size_t n_in = in.size();
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = b[k] + simd::dot(w.subspan(k * n_in, n_in), in);
    }
    const bool is_output = l + 1 == layers;
    if (!is_output) {
      apply_activation(Activation::logistic, out);
    } else if (activate_output) {
      apply_activation(arch.output, out);
    }
    if (!is_output) {
      auto& next = ws.layer_in[l + 1];
      std::copy(out.begin(), out.end(), next.begin());
      if (l + 2 == layers) {
        std::copy(x.begin() + static_cast<std::ptrdiff_t>(head), x.end(),
                  next.begin() + static_cast<std::ptrdiff_t>(out.size()));
      }
    }
  }
}

}  // namespace

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::logistic:
      return "logistic";
    case Activation::linear:
      return "linear";
    case Activation::softmax:
      return "softmax";
  }
  return "?";
}

Activation parse_activation(const std::string& name) {
  if (name == "logistic") return Activation::logistic;
  if (name == "linear") return Activation::linear;
  if (name == "softmax") return Activation::softmax;
  throw std::invalid_argument("unknown activation '" + name + "'");
}

std::string loss_name(Loss l) { return l == Loss::squared ? "squared" : "absolute"; }

Loss parse_loss(const std::string& name) {
  if (name == "squared") return Loss::squared;
  if (name == "absolute") return Loss::absolute;
  throw std::invalid_argument("unknown loss '" + name + "'");
}

void MLPArchitecture::validate() const {
  if (input_dim < 1) throw std::invalid_argument("network needs at least one input");
  if (passthrough > input_dim) throw std::invalid_argument("passthrough exceeds input width");
  if (!hidden.empty() && passthrough == input_dim) {
    throw std::invalid_argument("hidden layers need at least one non-passthrough input");
  }
  if (output_dim < 1) throw std::invalid_argument("network needs at least one output");
  for (std::size_t h : hidden) {
    if (h < 1) throw std::invalid_argument("hidden layers must have at least one unit");
  }
}

std::size_t MLPArchitecture::layer_inputs(std::size_t layer) const {
  if (hidden.empty()) return input_dim;
  if (layer == 0) return input_dim - passthrough;
  if (layer == hidden.size()) return hidden.back() + passthrough;
  return hidden[layer - 1];
}

std::size_t MLPArchitecture::layer_outputs(std::size_t layer) const {
  return layer < hidden.size() ? hidden[layer] : output_dim;
}

std::size_t MLPArchitecture::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < num_layers(); ++l) n += (layer_inputs(l) + 1) * layer_outputs(l);
  return n;
}

MLPModel::MLPModel(MLPArchitecture arch) : arch_(std::move(arch)) {
  arch_.validate();
  std::size_t offset = 0;
  for (std::size_t l = 0; l < arch_.num_layers(); ++l) {
    offsets_.push_back(offset);
    offset += (arch_.layer_inputs(l) + 1) * arch_.layer_outputs(l);
  }
  params_.assign(offset, 0.0);
}

void MLPModel::initialize(Rng& rng) {
  for (std::size_t l = 0; l < arch_.num_layers(); ++l) {
    const double r = 1.0 / std::sqrt(static_cast<double>(arch_.layer_inputs(l)));
    for (double& w : weights(l)) w = rng.uniform(-r, r);
    for (double& b : biases(l)) b = rng.uniform(-r, r);
  }
}

std::span<const double> MLPModel::weights(std::size_t layer) const {
  return std::span<const double>(params_).subspan(offsets_[layer],
                                                  arch_.layer_inputs(layer) * arch_.layer_outputs(layer));
}

std::span<const double> MLPModel::biases(std::size_t layer) const {
  return std::span<const double>(params_).subspan(
      offsets_[layer] + arch_.layer_inputs(layer) * arch_.layer_outputs(layer), arch_.layer_outputs(layer));
}

std::span<double> MLPModel::weights(std::size_t layer) {
  return std::span<double>(params_).subspan(offsets_[layer], arch_.layer_inputs(layer) * arch_.layer_outputs(layer));
}

std::span<double> MLPModel::biases(std::size_t layer) {
  return std::span<double>(params_).subspan(offsets_[layer] + arch_.layer_inputs(layer) * arch_.layer_outputs(layer),
                                            arch_.layer_outputs(layer));
}

std::vector<double> MLPModel::forward(std::span<const double> x) const {
  if (x.size() != arch_.input_dim) throw std::invalid_argument("network input dimension mismatch");
  Workspace ws(arch_);
  run_forward(*this, x, ws);
  return ws.layer_out.back();
}

std::vector<double> MLPModel::output_preactivation(std::span<const double> x) const {
  if (x.size() != arch_.input_dim) throw std::invalid_argument("network input dimension mismatch");
  Workspace ws(arch_);
  run_forward(*this, x, ws, false);
  return ws.layer_out.back();
}

double batch_loss(const MLPModel& model, const Matrix& inputs, const Matrix& targets, Loss loss) {
  const auto& arch = model.architecture();
  if (inputs.cols() != arch.input_dim || targets.cols() != arch.output_dim || inputs.rows() != targets.rows()) {
    throw std::invalid_argument("training data does not match network shape");
  }
  Workspace ws(arch);
  double total = 0.0;
  for (std::size_t n = 0; n < inputs.rows(); ++n) {
    run_forward(model, inputs.row(n), ws);
    const auto& y = ws.layer_out.back();
    const auto t = targets.row(n);
    for (std::size_t o = 0; o < y.size(); ++o) {
      const double e = y[o] - t[o];
      total += loss == Loss::squared ? e * e : std::abs(e);
    }
  }
  return total / static_cast<double>(inputs.rows() * arch.output_dim);
}

double loss_and_gradient(const MLPModel& model, const Matrix& inputs, const Matrix& targets, Loss loss,
                         std::span<double> gradient) {
  const auto& arch = model.architecture();
  if (inputs.cols() != arch.input_dim || targets.cols() != arch.output_dim || inputs.rows() != targets.rows()) {
    throw std::invalid_argument("training data does not match network shape");
  }
  if (gradient.size() != arch.parameter_count()) throw std::invalid_argument("gradient buffer size mismatch");
  std::fill(gradient.begin(), gradient.end(), 0.0);

  // Gradient views share the parameter layout.
  MLPModel grad_view(arch);
  Workspace ws(arch);
  const std::size_t layers = arch.num_layers();
  const double scale = 1.0 / static_cast<double>(inputs.rows() * arch.output_dim);
  std::vector<double> dy(arch.output_dim);
  double total = 0.0;

  for (std::size_t n = 0; n < inputs.rows(); ++n) {
    run_forward(model, inputs.row(n), ws);
    const auto& y = ws.layer_out.back();
    const auto t = targets.row(n);
    for (std::size_t o = 0; o < y.size(); ++o) {
      const double e = y[o] - t[o];
      if (loss == Loss::squared) {
        total += e * e;
        dy[o] = 2.0 * e * scale;
      } else {
        total += std::abs(e);
        dy[o] = (e > 0.0 ? 1.0 : (e < 0.0 ? -1.0 : 0.0)) * scale;
      }
    }

    // dL/dz at the output layer.
    ws.delta.assign(y.size(), 0.0);
    switch (arch.output) {
      case Activation::logistic:
        for (std::size_t o = 0; o < y.size(); ++o) ws.delta[o] = dy[o] * y[o] * (1.0 - y[o]);
        break;
      case Activation::linear:
        ws.delta = dy;
        break;
      case Activation::softmax: {
        const double inner = simd::dot(dy, y);
        for (std::size_t o = 0; o < y.size(); ++o) ws.delta[o] = y[o] * (dy[o] - inner);
        break;
      }
    }

    for (std::size_t l = layers; l-- > 0;) {
      const auto& in = ws.layer_in[l];
      const std::size_t n_in = in.size();
      auto gw = grad_view.weights(l);
      auto gb = grad_view.biases(l);
      for (std::size_t k = 0; k < ws.delta.size(); ++k) {
        simd::axpy(ws.delta[k], in, gw.subspan(k * n_in, n_in));
        gb[k] += ws.delta[k];
      }
      if (l == 0) break;
      // Propagate into the previous layer's activations (the passthrough tail
      // of the output layer's input has no parameters behind it).
      const auto w = model.weights(l);
      const std::size_t n_prev = arch.layer_outputs(l - 1);
      ws.back.assign(n_in, 0.0);
      for (std::size_t k = 0; k < ws.delta.size(); ++k) {
        simd::axpy(ws.delta[k], w.subspan(k * n_in, n_in), ws.back);
      }
      const auto& a = ws.layer_out[l - 1];
      ws.delta.assign(n_prev, 0.0);
      for (std::size_t u = 0; u < n_prev; ++u) ws.delta[u] = ws.back[u] * a[u] * (1.0 - a[u]);
    }
  }
  const auto g = grad_view.parameters();
  std::copy(g.begin(), g.end(), gradient.begin());
  return total * scale;
}

void train_mlp_inplace(MLPModel& model, const Matrix& inputs, const Matrix& targets, const TrainOptions& options,
                       TrainTrace* trace) {
  if (!(options.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  const std::size_t n_params = model.architecture().parameter_count();
  std::vector<double> grad(n_params), cand_grad(n_params);
  double current = loss_and_gradient(model, inputs, targets, options.loss, grad);
  if (!std::isfinite(current)) throw DivergenceError("network loss is not finite at epoch 0", 0);
  if (trace) trace->loss.push_back(current);

  MLPModel candidate = model;
  double rate = options.learning_rate;
  constexpr int kMaxHalvings = 40;
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxHalvings; ++attempt) {
      auto cp = candidate.parameters();
      const auto p = model.parameters();
      for (std::size_t i = 0; i < n_params; ++i) cp[i] = p[i] - rate * grad[i];
      const double next = loss_and_gradient(candidate, inputs, targets, options.loss, cand_grad);
      if (std::isnan(next)) {
        throw DivergenceError("network loss became NaN at epoch " + std::to_string(epoch), epoch);
      }
      if (next <= current) {
        std::swap(model, candidate);
        std::swap(grad, cand_grad);
        current = next;
        rate *= 1.1;
        accepted = true;
        break;
      }
      rate *= 0.5;
      if (trace) ++trace->rejected_steps;
    }
    if (trace) trace->loss.push_back(current);
    if (!accepted) {
      // No descent step exists at this resolution: a stationary point.
      if (trace) trace->loss.resize(trace->loss.size() + (options.epochs - epoch), current);
      break;
    }
  }
}

MLPModel train_mlp(const MLPArchitecture& arch, const Matrix& inputs, const Matrix& targets,
                   const TrainOptions& options, TrainTrace* trace) {
  MLPModel model(arch);
  Rng rng(options.seed);
  model.initialize(rng);
  train_mlp_inplace(model, inputs, targets, options, trace);
  return model;
}

}  // namespace ordrep
