#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordrep/core/matrix.hpp"
#include "ordrep/core/rng.hpp"

namespace ordrep {

enum class Activation { logistic, linear, softmax };

std::string activation_name(Activation a);
Activation parse_activation(const std::string& name);

// Fully connected feedforward network. Hidden layers use the logistic
// activation. The last `passthrough` inputs skip the hidden layers and feed
// the output layer directly, next to the last hidden activations; with no
// hidden layers the output layer simply sees the whole input.
struct MLPArchitecture {
  std::size_t input_dim = 1;
  std::size_t passthrough = 0;
  std::vector<std::size_t> hidden;
  std::size_t output_dim = 1;
  Activation output = Activation::logistic;

  void validate() const;
  std::size_t num_layers() const { return hidden.size() + 1; }
  std::size_t layer_inputs(std::size_t layer) const;
  std::size_t layer_outputs(std::size_t layer) const;
  std::size_t parameter_count() const;
};

class MLPModel {
 public:
  explicit MLPModel(MLPArchitecture arch);

  const MLPArchitecture& architecture() const { return arch_; }

  // Uniform in [-r, r], r = 1/sqrt(fan_in), per layer.
  void initialize(Rng& rng);

  std::vector<double> forward(std::span<const double> x) const;
  // Output layer values before the output activation.
  std::vector<double> output_preactivation(std::span<const double> x) const;

  std::span<const double> parameters() const { return params_; }
  std::span<double> parameters() { return params_; }

  // Row-major (outputs x inputs) weights of a layer, and its biases.
  std::span<const double> weights(std::size_t layer) const;
  std::span<const double> biases(std::size_t layer) const;
  std::span<double> weights(std::size_t layer);
  std::span<double> biases(std::size_t layer);

 private:
  MLPArchitecture arch_;
  std::vector<double> params_;
  std::vector<std::size_t> offsets_;  // start of each layer's weights
};

enum class Loss { squared, absolute };

std::string loss_name(Loss l);
Loss parse_loss(const std::string& name);

// Mean over examples and outputs of (y - t)^2, or |y - t|.
double batch_loss(const MLPModel& model, const Matrix& inputs, const Matrix& targets, Loss loss);

// Loss and its gradient with respect to parameters() by backpropagation.
double loss_and_gradient(const MLPModel& model, const Matrix& inputs, const Matrix& targets, Loss loss,
                         std::span<double> gradient);

struct TrainOptions {
  std::size_t epochs = 2000;
  double learning_rate = 0.1;
  Loss loss = Loss::squared;
  std::uint64_t seed = 1;
};

struct TrainTrace {
  std::vector<double> loss;  // accepted loss after each epoch (index 0: initial)
  std::size_t rejected_steps = 0;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch) : std::runtime_error(what), epoch_(epoch) {}
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

// Full-batch gradient descent with an adaptive step: a step that raises the
// loss is rejected and the rate halved; an accepted one grows the rate by
// 10%. The accepted loss sequence is therefore nonincreasing.
MLPModel train_mlp(const MLPArchitecture& arch, const Matrix& inputs, const Matrix& targets,
                   const TrainOptions& options, TrainTrace* trace = nullptr);

// Continues training from an existing model.
void train_mlp_inplace(MLPModel& model, const Matrix& inputs, const Matrix& targets, const TrainOptions& options,
                       TrainTrace* trace = nullptr);

}  // namespace ordrep
