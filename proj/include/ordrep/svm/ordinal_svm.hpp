#pragma once

#include <span>
#include <vector>

#include "ordrep/core/dataset.hpp"
#include "ordrep/replicate/replicate.hpp"
#include "ordrep/svm/binary_svm.hpp"

namespace ordrep {

// One binary machine trained on the replicated dataset with the extended
// kernel. Boundary q classifies the subspace-q replica of x.
class OrdinalSVMModel {
 public:
  OrdinalSVMModel(BinarySVMModel machine, ReplicationConfig config);

  const BinarySVMModel& machine() const { return machine_; }
  const ReplicationConfig& config() const { return config_; }
  int num_classes() const { return config_.num_classes; }

  // b_q = b + w_e' e_{q-1}, where w_e are the machine's e-block weights.
  std::span<const double> boundary_biases() const { return biases_; }

  // Decision value of boundary q (1-based) at x, computed on the replica.
  double boundary_decision(std::span<const double> x, int q) const;
  std::vector<double> boundary_decisions(std::span<const double> x) const;

  int predict(std::span<const double> x) const;

 private:
  BinarySVMModel machine_;
  ReplicationConfig config_;
  std::vector<double> biases_;
};

// Replicates `data` under `config` and trains one soft-margin machine with
// the base kernel extended over the e-block.
OrdinalSVMModel train_osvm(const Dataset& data, double C, const ReplicationConfig& config, const Kernel& base,
                           const SmoOptions& options = {});

}  // namespace ordrep
