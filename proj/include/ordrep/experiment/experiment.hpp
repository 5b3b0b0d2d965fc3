#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ordrep/core/dataset.hpp"
#include "ordrep/core/scaling.hpp"
#include "ordrep/metrics/metrics.hpp"
#include "ordrep/nn/persist.hpp"
#include "ordrep/svm/persist.hpp"

namespace ordrep {

enum class ModelKind { csvm, psvm, osvm, cnn, pnn, onn, unn };

std::string model_name(ModelKind m);
ModelKind parse_model(const std::string& name);
bool is_svm(ModelKind m);
bool uses_replication(ModelKind m);

struct ExperimentConfig {
  ModelKind model = ModelKind::osvm;
  // SVM family
  double C = 1.0;
  std::string kernel = "linear";
  int degree = 2;
  // replication (osvm, onn)
  double h = 1.0;
  int s = 1;
  std::optional<std::size_t> j;  // defaults to the data dimension
  bool cumulative_e = false;
  // NN family
  std::size_t hidden = 5;
  std::size_t epochs = 2000;
  double lr = 0.1;
  Loss loss = Loss::squared;  // unn only
  // Min-max scale features with training-set extrema before fitting.
  bool scale = false;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument on an out-of-range value.
  void validate() const;
  Kernel base_kernel() const;
  ReplicationConfig replication(int num_classes, std::size_t dim) const;
  NNOptions nn_options(std::uint64_t seed) const;
};

using AnyModel = std::variant<SvmModel, NNModel>;

int predict(const AnyModel& model, std::span<const double> x);
int model_classes(const AnyModel& model);
std::size_t model_dim(const AnyModel& model);

// Model file: SVM or network format, picked by the header line.
void save_model(std::ostream& out, const AnyModel& model);
AnyModel load_model(std::istream& in);

struct TrainedModel {
  AnyModel model;
  std::optional<MinMaxScaler> scaler;
  std::string diagnostics;  // solver or loss-trace summary

  int predict(std::span<const double> x) const;
  std::vector<int> predict_all(const Dataset& data) const;
};

TrainedModel train_model(const ExperimentConfig& config, const Dataset& train, std::uint64_t seed);

// Worker count from ORDREP_THREADS: unset uses the hardware concurrency,
// 0 means run serially on the calling thread.
std::size_t thread_budget();

// Runs body(0..count-1) on up to `threads` workers; 0 or 1 runs inline.
// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

struct CurveRow {
  std::size_t size = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  EvaluationReport report;
};

struct CurveResult {
  std::vector<CurveRow> rows;   // ordered by (size, run)
  std::vector<CurveRow> means;  // one per size; run and seed unused
};

// For each size and run i: seed_i = base + i, a random train split of that
// size, the rest as test set.
CurveResult run_curve(const Dataset& data, const ExperimentConfig& config, std::span<const std::size_t> sizes,
                      std::size_t runs, std::size_t threads);

// Mean of each metric over rows; NaN entries are skipped per metric.
EvaluationReport mean_report(std::span<const EvaluationReport> reports);

struct LoocvResult {
  std::vector<int> predictions;  // held-out prediction per example
  EvaluationReport report;
  std::size_t trainings = 0;
};

LoocvResult run_loocv(const Dataset& data, const ExperimentConfig& config, std::size_t threads);

}  // namespace ordrep
