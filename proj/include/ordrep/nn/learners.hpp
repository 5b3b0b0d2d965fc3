#pragma once

#include <span>
#include <vector>

#include "ordrep/core/dataset.hpp"
#include "ordrep/nn/mlp.hpp"
#include "ordrep/replicate/replicate.hpp"

namespace ordrep {

struct NNOptions {
  std::size_t hidden_units = 5;  // one hidden layer; 0 gives none
  TrainOptions train;
  // When set, one loss trace per trained network is appended.
  std::vector<TrainTrace>* traces = nullptr;
};

// Conventional network (cNN): K softmax outputs on 1-of-K targets.
class ClassifierNN {
 public:
  ClassifierNN(MLPModel net, int num_classes);

  const MLPModel& network() const { return net_; }
  int num_classes() const { return num_classes_; }

  std::vector<double> probabilities(std::span<const double> x) const;
  int predict(std::span<const double> x) const;

 private:
  MLPModel net_;
  int num_classes_;
};

ClassifierNN train_cnn(const Dataset& data, const NNOptions& options);

// Frank-Hall ensemble of networks (pNN). Network i has one logistic output
// read as Pr(C > i).
class FrankHallNN {
 public:
  FrankHallNN(int num_classes, std::vector<MLPModel> nets);

  int num_classes() const { return num_classes_; }
  std::span<const MLPModel> networks() const { return nets_; }

  std::vector<double> exceedance(std::span<const double> x) const;
  std::vector<double> class_masses(std::span<const double> x) const;
  int predict(std::span<const double> x) const;

 private:
  int num_classes_;
  std::vector<MLPModel> nets_;
};

FrankHallNN train_pnn(const Dataset& data, const NNOptions& options);

// Ordinal network (oNN) trained on the replicated data. A subnetwork G sees
// the feature block; the K-2 e-block inputs join the logistic output unit
// linearly. On the replica for boundary k the output is
//   P_k = logsig(Phi_k - G(x)),  Phi_k = w_e' e_{k-1},  Phi_1 = 0,
// an estimate of Pr(C <= k) (replica target 1 for the lower side).
class OrdinalNN {
 public:
  OrdinalNN(MLPModel net, ReplicationConfig config);

  const MLPModel& network() const { return net_; }
  const ReplicationConfig& config() const { return config_; }
  int num_classes() const { return config_.num_classes; }

  // G(x), read off the boundary-1 replica.
  double latent(std::span<const double> x) const;
  std::vector<double> cut_points() const;          // Phi_1..Phi_{K-1}
  std::vector<double> cumulative_probabilities(std::span<const double> x) const;
  // Differences of the cumulative probabilities; negative masses from
  // non-monotone cut points are clamped and the vector renormalized.
  std::vector<double> class_probabilities(std::span<const double> x) const;
  // 1 + #{k : P_k < 0.5}
  int predict(std::span<const double> x) const;

 private:
  MLPModel net_;
  ReplicationConfig config_;
};

// Network input layout for a replication config: D inputs, the last K-2 of
// them passed straight to the output unit.
MLPArchitecture onn_architecture(const ReplicationConfig& config, std::size_t hidden_units);

OrdinalNN train_onn(const Dataset& data, const ReplicationConfig& config, const NNOptions& options);

// Unimodal network (uNN): one logistic output p regressed onto
// (c - 1)/(K - 1); the class posterior is B(K-1, p).
class UnimodalNN {
 public:
  UnimodalNN(MLPModel net, int num_classes);

  const MLPModel& network() const { return net_; }
  int num_classes() const { return num_classes_; }

  double parameter(std::span<const double> x) const;
  std::vector<double> posteriors(std::span<const double> x) const;
  int predict(std::span<const double> x) const;

 private:
  MLPModel net_;
  int num_classes_;
};

UnimodalNN train_unn(const Dataset& data, const NNOptions& options);

}  // namespace ordrep
