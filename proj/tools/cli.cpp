#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "ordrep/core/csv.hpp"
#include "ordrep/experiment/experiment.hpp"
#include "ordrep/replicate/replicate.hpp"
#include "ordrep/synth/synthetic.hpp"

namespace ordrep::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kReportHeader = "mer,mae,mse,rmse,spearman,tau_b,o_c,n";

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return format_double(v);
}

std::string report_row(const EvaluationReport& r) {
  std::ostringstream s;
  s << num(r.mer) << ',' << num(r.mae) << ',' << num(r.mse) << ',' << num(r.rmse) << ',' << num(r.spearman) << ','
    << num(r.kendall_tau_b) << ',' << num(r.o_c) << ',' << r.n;
  return s.str();
}

void print_table(std::ostream& out, const EvaluationReport& r) {
  auto line = [&](const char* name, double v) {
    out << "  " << std::left << std::setw(10) << name << std::right << std::setw(12) << std::fixed
        << std::setprecision(4) << v << '\n';
  };
  line("MER", r.mer);
  line("MAE", r.mae);
  line("MSE", r.mse);
  line("RMSE", r.rmse);
  line("Spearman", r.spearman);
  line("tau-b", r.kendall_tau_b);
  line("o_c", r.o_c);
  out << "  " << std::left << std::setw(10) << "n" << std::right << std::setw(12) << r.n << '\n';
  out.unsetf(std::ios::floatfield);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// `a:b:step` or a comma list.
std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  auto to_size = [](std::string_view s) {
    const long long v = parse_int(trim(s));
    if (v < 1) throw UsageError("train sizes must be positive");
    return static_cast<std::size_t>(v);
  };
  try {
    if (text.find(':') != std::string::npos) {
      const auto parts = split_fields(text, ':');
      if (parts.size() != 3) throw UsageError("sizes range must be start:stop:step");
      const auto lo = to_size(parts[0]), hi = to_size(parts[1]), step = to_size(parts[2]);
      if (hi < lo) throw UsageError("sizes range stop is below start");
      for (std::size_t s = lo; s <= hi; s += step) sizes.push_back(s);
    } else {
      for (auto p : split_fields(text, ',')) sizes.push_back(to_size(p));
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("bad --sizes '" + text + "': " + e.what());
  }
  if (sizes.empty()) throw UsageError("no train sizes given");
  return sizes;
}

// Options describing one experiment; shared by train, curve and loocv.
struct ConfigOptions {
  ExperimentConfig cfg;
  std::string model;
  std::string loss = "squared";
  std::size_t j = 0;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* app, bool model_required) {
    auto* m = app->add_option("--model", model, "csvm|psvm|osvm|cnn|pnn|onn|unn")
                  ->check(CLI::IsMember({"csvm", "psvm", "osvm", "cnn", "pnn", "onn", "unn"}));
    if (model_required) m->required();
    opts["C"] = app->add_option("--C", cfg.C, "SVM cost")->capture_default_str();
    opts["kernel"] = app->add_option("--kernel", cfg.kernel, "linear|poly")
                         ->check(CLI::IsMember({"linear", "poly", "polynomial"}))
                         ->capture_default_str();
    opts["degree"] = app->add_option("--degree", cfg.degree, "polynomial degree")->capture_default_str();
    opts["h"] = app->add_option("--h", cfg.h, "replica offset")->capture_default_str();
    opts["s"] = app->add_option("--s", cfg.s, "boundary neighbourhood width")->capture_default_str();
    opts["j"] = app->add_option("--j", j, "shared leading features (default: all)");
    opts["cumulative"] = app->add_flag("--cumulative", cfg.cumulative_e, "cumulative e-block");
    opts["hidden"] = app->add_option("--hidden", cfg.hidden, "hidden units (0: none)")->capture_default_str();
    opts["epochs"] = app->add_option("--epochs", cfg.epochs, "training epochs")->capture_default_str();
    opts["lr"] = app->add_option("--lr", cfg.lr, "initial learning rate")->capture_default_str();
    opts["loss"] = app->add_option("--loss", loss, "uNN regression loss: squared|absolute")
                       ->check(CLI::IsMember({"squared", "absolute"}))
                       ->capture_default_str();
    app->add_flag("--scale", cfg.scale, "min-max scale features with training extrema");
    app->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  }

  bool given(const std::string& key) const { return opts.at(key)->count() > 0; }

  ExperimentConfig finish() {
    try {
      cfg.model = parse_model(model);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    cfg.loss = parse_loss(loss);
    if (given("j")) cfg.j = j;
    const char* svm_only[] = {"C", "kernel", "degree"};
    const char* nn_only[] = {"hidden", "epochs", "lr"};
    const char* replication_only[] = {"h", "s", "j", "cumulative"};
    auto reject = [&](auto& keys, const char* family) {
      for (const char* k : keys) {
        if (given(k)) throw UsageError("--" + std::string(k) + " only applies to " + family + " models");
      }
    };
    if (!is_svm(cfg.model)) reject(svm_only, "SVM");
    if (is_svm(cfg.model)) reject(nn_only, "neural network");
    if (!uses_replication(cfg.model)) reject(replication_only, "replication (osvm, onn)");
    if (given("loss") && cfg.model != ModelKind::unn) throw UsageError("--loss only applies to unn");
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

Dataset load_data(const std::string& path, std::optional<int> classes) {
  return read_dataset_csv(path, classes);
}

std::optional<int> optional_classes(CLI::Option* opt, int value) {
  if (opt->count() == 0) return std::nullopt;
  if (value < 2) throw UsageError("--classes must be at least 2");
  return value;
}

int cmd_gen(const std::string& space, int classes, std::optional<std::size_t> n, std::optional<double> sigma,
            const std::vector<double>& thresholds, std::uint64_t seed, const std::string& out_path, bool noiseless,
            std::ostream& out) {
  SyntheticSpec spec;
  const SyntheticSpace sp = parse_space(space);
  if (thresholds.empty()) {
    if (classes != 5 && classes != 10) {
      throw UsageError("--classes must be 5 or 10 for the built-in generators (got " + std::to_string(classes) +
                       "); pass --thresholds for other counts");
    }
    spec = SyntheticSpec::preset(sp, classes);
  } else {
    spec.space = sp;
    spec.num_classes = static_cast<int>(thresholds.size()) + 1;
    spec.thresholds = thresholds;
    spec.n = sp == SyntheticSpace::r2 ? 1000 : 2000;
  }
  if (n) spec.n = *n;
  if (sigma) spec.sigma = *sigma;
  spec.seed = seed;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto gen = generate(spec);
  auto file = open_out(out_path);
  std::vector<ExtraColumn> extra;
  if (noiseless) extra.push_back({"noiseless_label", {gen.noiseless.begin(), gen.noiseless.end()}});
  write_dataset_csv(file, gen.data, extra);
  if (!file) throw std::runtime_error("failed writing '" + out_path + "'");

  out << "wrote " << gen.data.size() << " points (" << space_name(spec.space) << ", K=" << spec.num_classes
      << ", sigma=" << format_double(spec.sigma) << ", seed=" << seed << ") to " << out_path << '\n';
  out << "class,count\n";
  const auto counts = gen.data.class_counts();
  for (std::size_t k = 0; k < counts.size(); ++k) out << (k + 1) << ',' << counts[k] << '\n';
  out << "corrupted " << std::fixed << std::setprecision(1) << 100.0 * gen.corruption_rate() << "%\n";
  out.unsetf(std::ios::floatfield);
  return 0;
}

// Replicated training set as CSV: extended features, binary label (1 lower,
// 2 upper), then the subspace and origin columns.
void dump_extended(const ExperimentConfig& cfg, const Dataset& data, const std::string& path) {
  const auto ext = replicate(data, cfg.replication(data.num_classes(), data.dim()));
  std::vector<int> labels;
  labels.reserve(ext.size());
  for (auto b : ext.labels) labels.push_back(b == BinaryLabel::lower ? 1 : 2);
  const Dataset flat(ext.features, std::move(labels), 2);
  std::vector<ExtraColumn> extra(2);
  extra[0].name = "subspace";
  extra[0].values.assign(ext.subspace.begin(), ext.subspace.end());
  extra[1].name = "origin";
  for (auto o : ext.origin) extra[1].values.push_back(static_cast<double>(o));
  auto file = open_out(path);
  write_dataset_csv(file, flat, extra);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_train(const ExperimentConfig& cfg, const std::string& data_path, std::optional<int> classes,
              const std::string& out_path, const std::string& dump_path, std::ostream& out) {
  const auto data = load_data(data_path, classes);
  if (cfg.scale) throw UsageError("--scale is only supported by curve and loocv");
  if (!dump_path.empty()) {
    if (!uses_replication(cfg.model)) throw UsageError("--dump-extended only applies to osvm and onn");
    dump_extended(cfg, data, dump_path);
  }
  const std::string diag_path = out_path + ".diag";
  std::optional<TrainedModel> trained;
  try {
    trained = train_model(cfg, data, cfg.seed);
  } catch (const std::exception& e) {
    auto diag = open_out(diag_path);
    diag << "# ordrep train " << model_name(cfg.model) << ' ' << timestamp() << '\n';
    diag << "# failed: " << e.what() << '\n';
    throw;
  }
  {
    auto file = open_out(out_path);
    save_model(file, trained->model);
    if (!file) throw std::runtime_error("failed writing '" + out_path + "'");
  }
  auto diag = open_out(diag_path);
  diag << "# ordrep train " << model_name(cfg.model) << ' ' << timestamp() << '\n' << trained->diagnostics;

  const auto pred = trained->predict_all(data);
  out << "trained " << model_name(cfg.model) << " on " << data.size() << " examples (K=" << data.num_classes()
      << ", p=" << data.dim() << "); training MER " << format_double(mer(pred, data.labels())) << '\n';
  out << "model: " << out_path << "\ndiagnostics: " << diag_path << '\n';
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data_path, std::optional<int> classes,
             const std::string& out_path, const std::string& pred_path, std::ostream& out) {
  std::ifstream in(model_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model '" + model_path + "'");
  TrainedModel trained{load_model(in), std::nullopt, {}};
  const int model_k = model_classes(trained.model);
  if (classes && *classes != model_k) {
    throw std::runtime_error("K mismatch: --classes " + std::to_string(*classes) + " but the model has K=" +
                             std::to_string(model_k));
  }
  auto data = load_data(data_path, std::nullopt);
  if (data.num_classes() > model_k) {
    throw std::runtime_error("K mismatch: data has labels up to " + std::to_string(data.num_classes()) +
                             " but the model has K=" + std::to_string(model_k));
  }
  if (data.num_classes() != model_k) data = Dataset(data.features(), {data.labels().begin(), data.labels().end()}, model_k);
  const auto pred = trained.predict_all(data);
  const auto report = evaluate(pred, data.labels());

  if (!pred_path.empty()) {
    auto file = open_out(pred_path);
    file << "index,label,predicted\n";
    for (std::size_t i = 0; i < pred.size(); ++i) file << i << ',' << data.label(i) << ',' << pred[i] << '\n';
  }
  if (!out_path.empty()) {
    auto file = open_out(out_path);
    file << kReportHeader << '\n' << report_row(report) << '\n';
  }
  out << kReportHeader << '\n' << report_row(report) << "\n\n";
  print_table(out, report);
  return 0;
}

int cmd_curve(const ExperimentConfig& cfg, const std::string& data_path, std::optional<int> classes,
              const std::string& sizes_text, std::size_t runs, const std::string& out_path, std::ostream& out) {
  const auto sizes = parse_sizes(sizes_text);
  if (runs < 1) throw UsageError("--runs must be at least 1");
  const auto data = load_data(data_path, classes);
  for (auto s : sizes) {
    if (s >= data.size()) {
      throw UsageError("train size " + std::to_string(s) + " must be below the dataset size " +
                       std::to_string(data.size()));
    }
  }
  const auto result = run_curve(data, cfg, sizes, runs, thread_budget());

  std::ostringstream csv;
  csv << "kind,size,run,seed," << kReportHeader << '\n';
  for (const auto& r : result.rows) {
    csv << "run," << r.size << ',' << r.run << ',' << r.seed << ',' << report_row(r.report) << '\n';
  }
  for (const auto& m : result.means) csv << "mean," << m.size << ",,," << report_row(m.report) << '\n';
  if (out_path.empty()) {
    out << csv.str();
  } else {
    auto file = open_out(out_path);
    file << csv.str();
    out << "size,mean_mer,mean_mae\n";
    for (const auto& m : result.means) {
      out << m.size << ',' << format_double(m.report.mer) << ',' << format_double(m.report.mae) << '\n';
    }
  }
  return 0;
}

int cmd_loocv(const ExperimentConfig& cfg, const std::string& data_path, std::optional<int> classes,
              const std::string& out_path, const std::string& pred_path, std::ostream& out) {
  const auto data = load_data(data_path, classes);
  const auto result = run_loocv(data, cfg, thread_budget());
  if (!pred_path.empty()) {
    auto file = open_out(pred_path);
    file << "index,label,predicted\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
      file << i << ',' << data.label(i) << ',' << result.predictions[i] << '\n';
    }
  }
  if (!out_path.empty()) {
    auto file = open_out(out_path);
    file << kReportHeader << '\n' << report_row(result.report) << '\n';
  }
  out << "trainings " << result.trainings << '\n';
  out << kReportHeader << '\n' << report_row(result.report) << "\n\n";
  print_table(out, result.report);
  return 0;
}

// Moves `--config FILE` entries in front of the other subcommand flags as
// `--key=value`, so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file argument");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file '" + *path + "'");
  std::vector<std::string> injected;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(*path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(t.substr(0, eq));
    const auto value = trim(t.substr(eq + 1));
    if (key.empty()) throw UsageError(*path + ":" + std::to_string(lineno) + ": empty key");
    injected.push_back("--" + std::string(key) + "=" + std::string(value));
  }
  // rest[0] is the subcommand, if any.
  std::vector<std::string> out;
  std::size_t at = 0;
  if (!rest.empty() && rest[0].rfind("-", 0) != 0) out.push_back(rest[at++]);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(at), rest.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordinal classification toolkit: data replication SVMs and networks, unimodal networks, ordinal metrics"};
  app.name("ordrep");
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.add_option("--config", "key=value file of subcommand options; flags override");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic ordinal dataset");
  std::string space = "r2", gen_out;
  int gen_classes = 5;
  std::size_t gen_n = 0;
  double gen_sigma = 0.0;
  std::vector<double> thresholds;
  std::uint64_t gen_seed = 1;
  bool noiseless = false;
  gen->add_option("--space", space, "r2|r4")->check(CLI::IsMember({"r2", "r4"}))->capture_default_str();
  gen->add_option("--classes", gen_classes, "5 or 10")->capture_default_str();
  auto* gen_n_opt = gen->add_option("--n", gen_n, "number of points (default 1000 in r2, 2000 in r4)");
  auto* gen_sigma_opt = gen->add_option("--sigma", gen_sigma, "noise standard deviation override");
  gen->add_option("--thresholds", thresholds, "custom increasing cuts b_1,...,b_{K-1}")->delimiter(',');
  gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output CSV")->required();
  gen->add_flag("--noiseless", noiseless, "append the noiseless_label column");

  // train
  auto* train = app.add_subcommand("train", "train a model on a CSV dataset");
  ConfigOptions train_cfg;
  train_cfg.attach(train, true);
  std::string train_data, train_out, train_dump;
  int train_classes = 0;
  train->add_option("--data", train_data, "training CSV")->required();
  auto* train_k = train->add_option("--classes", train_classes, "number of classes (default: largest label)");
  train->add_option("--out", train_out, "model file")->required();
  train->add_option("--dump-extended", train_dump, "write the replicated training set (osvm, onn) to this CSV");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a saved model on a CSV dataset");
  std::string eval_model, eval_data, eval_out, eval_pred;
  int eval_classes = 0;
  eval->add_option("--model", eval_model, "model file")->required();
  eval->add_option("--data", eval_data, "test CSV")->required();
  auto* eval_k = eval->add_option("--classes", eval_classes, "expected number of classes");
  eval->add_option("--out", eval_out, "report CSV");
  eval->add_option("--predictions", eval_pred, "per-example predictions CSV");

  // curve
  auto* curve = app.add_subcommand("curve", "learning curve over train sizes and seeded runs");
  ConfigOptions curve_cfg;
  curve_cfg.attach(curve, true);
  std::string curve_data, curve_out, sizes = "20:100:20";
  std::size_t runs = 100;
  int curve_classes = 0;
  curve->add_option("--data", curve_data, "pool CSV")->required();
  auto* curve_k = curve->add_option("--classes", curve_classes, "number of classes (default: largest label)");
  curve->add_option("--sizes", sizes, "start:stop:step or a comma list")->capture_default_str();
  curve->add_option("--runs", runs, "runs per size")->capture_default_str();
  curve->add_option("--out", curve_out, "result CSV (default: stdout)");

  // loocv
  auto* loocv = app.add_subcommand("loocv", "leave-one-out cross-validation");
  ConfigOptions loocv_cfg;
  loocv_cfg.attach(loocv, true);
  std::string loocv_data, loocv_out, loocv_pred;
  int loocv_classes = 0;
  loocv->add_option("--data", loocv_data, "dataset CSV")->required();
  auto* loocv_k = loocv->add_option("--classes", loocv_classes, "number of classes (default: largest label)");
  loocv->add_option("--out", loocv_out, "report CSV");
  loocv->add_option("--predictions", loocv_pred, "held-out predictions CSV");

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);

    if (*gen) {
      return cmd_gen(space, gen_classes, gen_n_opt->count() ? std::optional(gen_n) : std::nullopt,
                     gen_sigma_opt->count() ? std::optional(gen_sigma) : std::nullopt, thresholds, gen_seed, gen_out,
                     noiseless, out);
    }
    if (*train) {
      return cmd_train(train_cfg.finish(), train_data, optional_classes(train_k, train_classes), train_out,
                       train_dump, out);
    }
    if (*eval) {
      return cmd_eval(eval_model, eval_data, optional_classes(eval_k, eval_classes), eval_out, eval_pred, out);
    }
    if (*curve) {
      return cmd_curve(curve_cfg.finish(), curve_data, optional_classes(curve_k, curve_classes), sizes, runs,
                       curve_out, out);
    }
    if (*loocv) {
      return cmd_loocv(loocv_cfg.finish(), loocv_data, optional_classes(loocv_k, loocv_classes), loocv_out,
                       loocv_pred, out);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    err << "ordrep: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "ordrep: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace ordrep::cli
