#include "ordrep/experiment/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ordrep/core/csv.hpp"
#include "ordrep/core/split.hpp"

namespace ordrep {
namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

std::string svm_diagnostics(std::span<const BinarySVMModel> machines) {
  std::ostringstream out;
  out << "machine,iterations,dual_objective,final_gap,support_vectors\n";
  for (std::size_t i = 0; i < machines.size(); ++i) {
    const auto& m = machines[i];
    out << i << ',' << m.iterations << ',' << format_double(m.dual_objective) << ','
        << format_double(m.final_gap) << ',' << m.support().rows() << '\n';
  }
  return out.str();
}

std::string nn_diagnostics(const std::vector<TrainTrace>& traces) {
  std::ostringstream out;
  out << "network,epoch,loss\n";
  for (std::size_t n = 0; n < traces.size(); ++n) {
    for (std::size_t e = 0; e < traces[n].loss.size(); ++e) {
      out << n << ',' << e << ',' << format_double(traces[n].loss[e]) << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string model_name(ModelKind m) {
  switch (m) {
    case ModelKind::csvm: return "csvm";
    case ModelKind::psvm: return "psvm";
    case ModelKind::osvm: return "osvm";
    case ModelKind::cnn: return "cnn";
    case ModelKind::pnn: return "pnn";
    case ModelKind::onn: return "onn";
    case ModelKind::unn: return "unn";
  }
  return "?";
}

ModelKind parse_model(const std::string& name) {
  for (auto m : {ModelKind::csvm, ModelKind::psvm, ModelKind::osvm, ModelKind::cnn, ModelKind::pnn, ModelKind::onn,
                 ModelKind::unn}) {
    if (model_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown model '" + name + "'");
}

bool is_svm(ModelKind m) { return m == ModelKind::csvm || m == ModelKind::psvm || m == ModelKind::osvm; }

bool uses_replication(ModelKind m) { return m == ModelKind::osvm || m == ModelKind::onn; }

void ExperimentConfig::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("C must be positive");
  base_kernel().validate();
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("h must be positive");
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw std::invalid_argument("learning rate must be positive");
}

Kernel ExperimentConfig::base_kernel() const {
  const auto kind = parse_kernel_kind(kernel);
  return kind == KernelKind::linear ? Kernel::linear() : Kernel::polynomial(degree);
}

ReplicationConfig ExperimentConfig::replication(int num_classes, std::size_t dim) const {
  ReplicationConfig cfg{num_classes, dim, h, s, j.value_or(dim), cumulative_e};
  cfg.validate();
  return cfg;
}

NNOptions ExperimentConfig::nn_options(std::uint64_t run_seed) const {
  NNOptions o;
  o.hidden_units = hidden;
  o.train.epochs = epochs;
  o.train.learning_rate = lr;
  o.train.loss = model == ModelKind::unn ? loss : Loss::squared;
  o.train.seed = run_seed;
  return o;
}

int predict(const AnyModel& model, std::span<const double> x) {
  return std::visit([&](const auto& family) { return std::visit([&](const auto& m) { return m.predict(x); }, family); },
                    model);
}

int model_classes(const AnyModel& model) {
  return std::visit(
      [](const auto& family) { return std::visit([](const auto& m) { return m.num_classes(); }, family); }, model);
}

std::size_t model_dim(const AnyModel& model) {
  return std::visit(overloaded{
                        [](const SvmModel& m) {
                          return std::visit(overloaded{[](const OrdinalSVMModel& o) { return o.config().dim; },
                                                       [](const auto& e) { return e.dim(); }},
                                            m);
                        },
                        [](const NNModel& m) {
                          return std::visit(overloaded{[](const OrdinalNN& o) { return o.config().dim; },
                                                       [](const FrankHallNN& f) {
                                                         return f.networks().front().architecture().input_dim;
                                                       },
                                                       [](const auto& n) { return n.network().architecture().input_dim; }},
                                            m);
                        },
                    },
                    model);
}

void save_model(std::ostream& out, const AnyModel& model) {
  std::visit(overloaded{[&](const SvmModel& m) { save_svm_model(out, m); },
                        [&](const NNModel& m) { save_nn_model(out, m); }},
             model);
}

AnyModel load_model(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream stream(text);
  if (text.rfind(kSvmFormatHeader, 0) == 0) return load_svm_model(stream);
  if (text.rfind(kNNFormatHeader, 0) == 0) return load_nn_model(stream);
  throw std::runtime_error("unrecognized model file (expected '" + std::string(kSvmFormatHeader) + "' or '" +
                           std::string(kNNFormatHeader) + "' header)");
}

int TrainedModel::predict(std::span<const double> x) const {
  if (!scaler) return ordrep::predict(model, x);
  const auto scaled = scaler->apply(x);
  return ordrep::predict(model, scaled);
}

std::vector<int> TrainedModel::predict_all(const Dataset& data) const {
  if (data.dim() != model_dim(model)) throw std::invalid_argument("data dimension does not match the model");
  if (data.num_classes() != model_classes(model)) {
    throw std::invalid_argument("class count K=" + std::to_string(data.num_classes()) +
                                " does not match the model's K=" + std::to_string(model_classes(model)));
  }
  std::vector<int> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out.push_back(predict(data.row(i)));
  return out;
}

TrainedModel train_model(const ExperimentConfig& config, const Dataset& train_raw, std::uint64_t seed) {
  config.validate();
  std::optional<MinMaxScaler> scaler;
  if (config.scale) scaler = MinMaxScaler::fit(train_raw);
  const Dataset train = scaler ? scaler->apply(train_raw) : train_raw;
  const int k = train.num_classes();
  const auto kernel = config.base_kernel();

  switch (config.model) {
    case ModelKind::osvm: {
      auto m = train_osvm(train, config.C, config.replication(k, train.dim()), kernel);
      const BinarySVMModel machines[] = {m.machine()};
      auto diag = svm_diagnostics(machines);
      return {SvmModel(std::move(m)), scaler, std::move(diag)};
    }
    case ModelKind::csvm: {
      auto m = train_csvm(train, config.C, kernel);
      auto diag = svm_diagnostics(m.machines());
      return {SvmModel(std::move(m)), scaler, std::move(diag)};
    }
    case ModelKind::psvm: {
      auto m = train_psvm(train, config.C, kernel);
      auto diag = svm_diagnostics(m.machines());
      return {SvmModel(std::move(m)), scaler, std::move(diag)};
    }
    default:
      break;
  }

  std::vector<TrainTrace> traces;
  auto opts = config.nn_options(seed);
  opts.traces = &traces;
  NNModel nn = [&]() -> NNModel {
    switch (config.model) {
      case ModelKind::cnn: return train_cnn(train, opts);
      case ModelKind::pnn: return train_pnn(train, opts);
      case ModelKind::onn: return train_onn(train, config.replication(k, train.dim()), opts);
      default: return train_unn(train, opts);
    }
  }();
  return {AnyModel(std::move(nn)), scaler, nn_diagnostics(traces)};
}

std::size_t thread_budget() {
  const char* env = std::getenv("ORDREP_THREADS");
  if (env && *env) {
    try {
      const long long v = parse_int(env);
      if (v >= 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("ORDREP_THREADS must be a nonnegative integer, got '") + env + "'");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n = std::min(threads, count);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

EvaluationReport mean_report(std::span<const EvaluationReport> reports) {
  EvaluationReport m;
  auto avg = [&](double EvaluationReport::*field) {
    double total = 0.0;
    std::size_t n = 0;
    for (const auto& r : reports) {
      if (std::isnan(r.*field)) continue;
      total += r.*field;
      ++n;
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : total / static_cast<double>(n);
  };
  m.mer = avg(&EvaluationReport::mer);
  m.mae = avg(&EvaluationReport::mae);
  m.mse = avg(&EvaluationReport::mse);
  m.rmse = avg(&EvaluationReport::rmse);
  m.spearman = avg(&EvaluationReport::spearman);
  m.kendall_tau_b = avg(&EvaluationReport::kendall_tau_b);
  m.o_c = avg(&EvaluationReport::o_c);
  std::size_t n = 0;
  for (const auto& r : reports) n += r.n;
  m.n = reports.empty() ? 0 : n / reports.size();
  return m;
}

CurveResult run_curve(const Dataset& data, const ExperimentConfig& config, std::span<const std::size_t> sizes,
                      std::size_t runs, std::size_t threads) {
  config.validate();
  if (runs < 1) throw std::invalid_argument("need at least one run per size");
  for (std::size_t size : sizes) {
    if (size < 1 || size >= data.size()) {
      throw std::invalid_argument("train size " + std::to_string(size) + " must be in [1, " +
                                  std::to_string(data.size() - 1) + "]");
    }
  }
  CurveResult result;
  result.rows.resize(sizes.size() * runs);
  parallel_for(result.rows.size(), threads, [&](std::size_t t) {
    const std::size_t si = t / runs, run = t % runs;
    const std::uint64_t seed = config.seed + run;
    const auto plan = split_random(data.size(), sizes[si], seed);
    const auto train = data.subset(plan.train);
    const auto test = data.subset(plan.test);
    const auto model = train_model(config, train, seed);
    const auto pred = model.predict_all(test);
    result.rows[t] = {sizes[si], run, seed, evaluate(pred, test.labels())};
  });
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::vector<EvaluationReport> reports;
    for (std::size_t r = 0; r < runs; ++r) reports.push_back(result.rows[si * runs + r].report);
    result.means.push_back({sizes[si], 0, 0, mean_report(reports)});
  }
  return result;
}

LoocvResult run_loocv(const Dataset& data, const ExperimentConfig& config, std::size_t threads) {
  config.validate();
  const auto folds = loocv_folds(data.size());
  LoocvResult result;
  result.predictions.assign(data.size(), 0);
  parallel_for(folds.size(), threads, [&](std::size_t i) {
    const auto train = data.subset(folds[i].train);
    const auto model = train_model(config, train, config.seed + i);
    result.predictions[i] = model.predict(data.row(i));
  });
  result.trainings = folds.size();
  result.report = evaluate(result.predictions, data.labels());
  return result;
}

}  // namespace ordrep
