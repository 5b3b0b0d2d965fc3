#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ordrep/experiment/experiment.hpp"
#include "ordrep/synth/synthetic.hpp"

using namespace ordrep;

namespace {

Dataset small_r2(std::size_t n, std::uint64_t seed = 3) {
  auto s = SyntheticSpec::preset(SyntheticSpace::r2, 5);
  s.n = n;
  s.seed = seed;
  return generate(s).data;
}

ExperimentConfig quick(ModelKind m) {
  ExperimentConfig c;
  c.model = m;
  c.C = 10.0;
  c.kernel = "poly";
  c.degree = 2;
  c.s = 2;
  c.h = 1.0;
  c.hidden = 3;
  c.epochs = 60;
  return c;
}

struct EnvGuard {
  std::string name;
  std::string old;
  bool had;
  EnvGuard(const char* n, const char* value) : name(n) {
    const char* v = std::getenv(n);
    had = v != nullptr;
    if (had) old = v;
    if (value) setenv(n, value, 1);
    else unsetenv(n);
  }
  ~EnvGuard() {
    if (had) setenv(name.c_str(), old.c_str(), 1);
    else unsetenv(name.c_str());
  }
};

}  // namespace

TEST_CASE("model names") {
  for (auto m : {ModelKind::csvm, ModelKind::psvm, ModelKind::osvm, ModelKind::cnn, ModelKind::pnn, ModelKind::onn,
                 ModelKind::unn}) {
    CHECK(parse_model(model_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_model("svm"), std::invalid_argument);
  CHECK(is_svm(ModelKind::psvm));
  CHECK_FALSE(is_svm(ModelKind::onn));
  CHECK(uses_replication(ModelKind::onn));
  CHECK_FALSE(uses_replication(ModelKind::cnn));
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.C = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.h = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.s = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.kernel = "rbf";
  CHECK_THROWS(c.validate());
  c = {};
  c.lr = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.s = 5;
  CHECK_THROWS_AS(c.replication(5, 2), std::invalid_argument);
  c.s = 4;
  CHECK(c.replication(5, 2).j == 2);
  c.j = 1;
  CHECK(c.replication(5, 2).j == 1);
}

TEST_CASE("every model trains, predicts and round trips through a file") {
  const auto d = small_r2(60);
  for (auto m : {ModelKind::csvm, ModelKind::psvm, ModelKind::osvm, ModelKind::cnn, ModelKind::pnn, ModelKind::onn,
                 ModelKind::unn}) {
    CAPTURE(model_name(m));
    auto cfg = quick(m);
    const auto t = train_model(cfg, d, 5);
    CHECK_FALSE(t.diagnostics.empty());
    CHECK(model_classes(t.model) == 5);
    CHECK(model_dim(t.model) == 2);
    const auto pred = t.predict_all(d);
    for (int p : pred) {
      CHECK(p >= 1);
      CHECK(p <= 5);
    }
    std::stringstream s;
    save_model(s, t.model);
    const auto back = load_model(s);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(predict(back, d.row(i)) == pred[i]);
    // same seed, same model
    const auto again = train_model(cfg, d, 5);
    CHECK(again.predict_all(d) == pred);
  }
  std::stringstream junk("nonsense\n");
  CHECK_THROWS(load_model(junk));
}

TEST_CASE("prediction checks dimension and class count") {
  const auto d = small_r2(40);
  const auto t = train_model(quick(ModelKind::psvm), d, 1);
  auto s4 = SyntheticSpec::preset(SyntheticSpace::r4, 5);
  s4.n = 10;
  CHECK_THROWS_AS(t.predict_all(generate(s4).data), std::invalid_argument);
  auto s10 = SyntheticSpec::preset(SyntheticSpace::r2, 10);
  s10.n = 10;
  CHECK_THROWS_AS(t.predict_all(generate(s10).data), std::invalid_argument);
}

TEST_CASE("scaling uses the training extrema") {
  auto d = small_r2(50);
  Matrix big = d.features();
  for (auto& v : big.data()) v = 100.0 * v + 7.0;
  const Dataset shifted(big, std::vector<int>(d.labels().begin(), d.labels().end()), 5);
  auto cfg = quick(ModelKind::osvm);
  cfg.kernel = "linear";
  cfg.scale = true;
  const auto a = train_model(cfg, d, 1), b = train_model(cfg, shifted, 1);
  REQUIRE(b.scaler.has_value());
  // an affine change of units is absorbed by the scaler
  CHECK(a.predict_all(d) == b.predict_all(shifted));
}

TEST_CASE("learning curves") {
  const auto d = small_r2(120);
  auto cfg = quick(ModelKind::osvm);
  const std::size_t sizes[] = {20, 40};
  const auto r = run_curve(d, cfg, sizes, 3, 1);
  REQUIRE(r.rows.size() == 6);
  REQUIRE(r.means.size() == 2);
  for (std::size_t t = 0; t < 6; ++t) {
    CHECK(r.rows[t].size == sizes[t / 3]);
    CHECK(r.rows[t].run == t % 3);
    CHECK(r.rows[t].seed == cfg.seed + t % 3);
    CHECK(r.rows[t].report.n == d.size() - sizes[t / 3]);
  }
  for (std::size_t si = 0; si < 2; ++si) {
    double mer = 0.0, mae = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      mer += r.rows[si * 3 + k].report.mer;
      mae += r.rows[si * 3 + k].report.mae;
    }
    CHECK(r.means[si].report.mer == doctest::Approx(mer / 3));
    CHECK(r.means[si].report.mae == doctest::Approx(mae / 3));
  }
  // threads do not change the numbers
  const auto p = run_curve(d, cfg, sizes, 3, 4);
  for (std::size_t t = 0; t < 6; ++t) CHECK(p.rows[t].report.mer == r.rows[t].report.mer);

  const std::size_t one[] = {30};
  const auto single = run_curve(d, cfg, one, 1, 1);
  CHECK(single.means[0].report.mer == single.rows[0].report.mer);
  CHECK(single.means[0].report.o_c == single.rows[0].report.o_c);

  const std::size_t bad[] = {120};
  CHECK_THROWS_AS(run_curve(d, cfg, bad, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_curve(d, cfg, one, 0, 1), std::invalid_argument);
}

TEST_CASE("mean report skips NaN per metric") {
  EvaluationReport a, b;
  a.mer = 0.2;
  b.mer = 0.4;
  a.spearman = 0.5;
  b.spearman = std::nan("");
  a.n = b.n = 10;
  const EvaluationReport both[] = {a, b};
  const auto m = mean_report(both);
  CHECK(m.mer == doctest::Approx(0.3));
  CHECK(m.spearman == 0.5);
  CHECK(m.n == 10);
  b.o_c = a.o_c = std::nan("");
  const EvaluationReport nans[] = {a, b};
  CHECK(std::isnan(mean_report(nans).o_c));
}

TEST_CASE("leave-one-out") {
  const auto d = small_r2(10, 8);
  auto cfg = quick(ModelKind::csvm);
  cfg.kernel = "linear";
  const auto r = run_loocv(d, cfg, 1);
  CHECK(r.trainings == 10);
  CHECK(r.predictions.size() == 10);
  CHECK(r.report.n == 10);
  CHECK(r.report.mer == doctest::Approx(mer(r.predictions, d.labels())));
  CHECK(run_loocv(d, cfg, 3).predictions == r.predictions);
}

TEST_CASE("parallel_for runs every task and propagates errors") {
  for (std::size_t threads : {0, 1, 2, 5}) {
    std::vector<int> hits(100);
    parallel_for(100, threads, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) CHECK(h == 1);
    std::atomic<int> ran{0};
    CHECK_THROWS_WITH_AS(parallel_for(50, threads,
                                      [&](std::size_t i) {
                                        ++ran;
                                        if (i == 7) throw std::runtime_error("task 7");
                                      }),
                         "task 7", std::runtime_error);
    CHECK(ran.load() >= 1);
  }
}

TEST_CASE("thread budget from the environment") {
  {
    EnvGuard g("ORDREP_THREADS", "0");
    CHECK(thread_budget() == 0);
  }
  {
    EnvGuard g("ORDREP_THREADS", "3");
    CHECK(thread_budget() == 3);
  }
  {
    EnvGuard g("ORDREP_THREADS", "lots");
    CHECK_THROWS_AS(thread_budget(), std::invalid_argument);
  }
  {
    EnvGuard g("ORDREP_THREADS", nullptr);
    CHECK(thread_budget() >= 1);
  }
}
