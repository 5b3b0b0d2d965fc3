#include <doctest.h>

#include <cmath>
#include <vector>

#include "ordrep/core/rng.hpp"
#include "ordrep/replicate/frank_hall.hpp"
#include "ordrep/replicate/replicate.hpp"
#include "ordrep/svm/binary_svm.hpp"

using namespace ordrep;

namespace {

constexpr auto L = BinaryLabel::lower;
constexpr auto U = BinaryLabel::upper;

ReplicationConfig make(int K, std::size_t p, double h, int s, std::size_t j, bool cumulative = false) {
  return {K, p, h, s, j, cumulative};
}

// One point per class, features (k, 10k, 100k, ...).
Dataset one_per_class(int K, std::size_t p) {
  Matrix m(K, p);
  std::vector<int> labels;
  for (int k = 1; k <= K; ++k) {
    for (std::size_t d = 0; d < p; ++d) m(k - 1, d) = k * std::pow(10.0, static_cast<double>(d));
    labels.push_back(k);
  }
  return Dataset(m, labels, K);
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(make(3, 2, 1.0, 2, 2).validate());
  CHECK_THROWS_AS(make(3, 2, 0.0, 1, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make(3, 2, 1.0, 0, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make(3, 2, 1.0, 3, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make(3, 2, 1.0, 1, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make(1, 2, 1.0, 1, 2).validate(), std::invalid_argument);
  CHECK_NOTHROW(make(3, 2, 1.0, 1, 0).validate());
}

TEST_CASE("toy replication K=3 s=2") {
  Dataset d(Matrix(1, 2, {0.3, 0.7}), {2}, 3);
  auto ext = replicate(d, make(3, 2, 1.5, 2, 2));
  REQUIRE(ext.size() == 2);
  CHECK(ext.features.cols() == 3);
  CHECK(ext.subspace == std::vector<int>{1, 2});
  CHECK(ext.labels == std::vector<BinaryLabel>{U, L});
  CHECK(ext.features(0, 2) == 0.0);
  CHECK(ext.features(1, 2) == 1.5);
  CHECK(ext.features(1, 0) == 0.3);
  CHECK(ext.origin == std::vector<std::size_t>{0, 0});
}

TEST_CASE("extreme classes lose far-boundary replicas with s=1") {
  Dataset d(Matrix(1, 1, {0.2}), {1}, 3);
  auto ext = replicate(d, make(3, 1, 1.0, 1, 1));
  REQUIRE(ext.size() == 1);
  CHECK(ext.labels[0] == L);
  CHECK(ext.subspace[0] == 1);
  CHECK(ext.features(0, 1) == 0.0);
}

TEST_CASE("K=5 s=4 replicates every example four times") {
  Rng rng(1);
  std::vector<int> labels;
  Matrix m(0, 2);
  for (int i = 0; i < 50; ++i) {
    const int k = 1 + static_cast<int>(rng.below(5));
    labels.push_back(k);
    const double row[] = {rng.uniform(), rng.uniform()};
    m.append_row(row);
  }
  for (int k = 1; k <= 5; ++k) labels[static_cast<std::size_t>(k - 1)] = k;
  Dataset d(m, labels, 5);
  CHECK(replicate(d, make(5, 2, 1.0, 4, 2)).size() == 4 * 50);
}

TEST_CASE("decode examples") {
  const BinaryLabel a[] = {L, L};
  const BinaryLabel b[] = {U, L};
  const BinaryLabel c[] = {U, U, U};
  const BinaryLabel nonmono[] = {L, U, L};
  CHECK(decode(a, 3) == 1);
  CHECK(decode(b, 3) == 2);
  CHECK(decode(c, 4) == 4);
  CHECK(decode(nonmono, 4) == 2);
  CHECK_THROWS_AS(decode(a, 4), std::invalid_argument);
}

TEST_CASE("query replicas") {
  const double x[] = {0.25, -1.0};
  auto basic = make_query_replicas(x, make(3, 2, 2.0, 1, 2));
  REQUIRE(basic.rows() == 2);
  CHECK(std::vector<double>(basic.row(0).begin(), basic.row(0).end()) == std::vector<double>{0.25, -1.0, 0.0});
  CHECK(std::vector<double>(basic.row(1).begin(), basic.row(1).end()) == std::vector<double>{0.25, -1.0, 2.0});

  auto binary = make_query_replicas(x, make(2, 2, 1.0, 1, 2));
  REQUIRE(binary.rows() == 1);
  CHECK(std::vector<double>(binary.row(0).begin(), binary.row(0).end()) == std::vector<double>{0.25, -1.0});

  auto indep = make_query_replicas(x, make(3, 2, 3.0, 1, 0));
  CHECK(std::vector<double>(indep.row(0).begin(), indep.row(0).end()) ==
        std::vector<double>{0.25, -1.0, 0.0, 0.0, 0.0});
  CHECK(std::vector<double>(indep.row(1).begin(), indep.row(1).end()) ==
        std::vector<double>{0.0, 0.0, 0.25, -1.0, 3.0});

  const double wrong[] = {1.0};
  CHECK_THROWS_AS(make_query_replicas(wrong, make(3, 2, 1.0, 1, 2)), std::invalid_argument);
}

TEST_CASE("cumulative e-block") {
  auto cfg = make(5, 1, 2.0, 1, 1, true);
  CHECK(e_block(1, cfg) == std::vector<double>{0, 0, 0});
  CHECK(e_block(2, cfg) == std::vector<double>{2, 0, 0});
  CHECK(e_block(4, cfg) == std::vector<double>{2, 2, 2});
  cfg.cumulative_e = false;
  CHECK(e_block(4, cfg) == std::vector<double>{0, 0, 2});
}

TEST_CASE("layout invariants over all small configurations") {
  for (int K = 2; K <= 6; ++K) {
    for (std::size_t p = 1; p <= 3; ++p) {
      const auto data = one_per_class(K, p);
      for (int s = 1; s <= K - 1; ++s) {
        for (std::size_t j = 0; j <= p; ++j) {
          const double h = 0.5 + j;
          const auto cfg = make(K, p, h, s, j);
          const auto ext = replicate(data, cfg);
          const std::size_t D = j + (p - j) * (K - 1) + (K - 2);
          REQUIRE(ext.features.cols() == D);
          for (std::size_t r = 0; r < ext.size(); ++r) {
            const int q = ext.subspace[r];
            const int k = data.label(ext.origin[r]);
            CHECK((ext.labels[r] == L) == (k <= q));
            CHECK(q >= std::max(1, k - s));
            CHECK(q <= std::min(K - 1, k + s - 1));
            auto row = ext.features.row(r);
            auto x = data.row(ext.origin[r]);
            for (std::size_t d = 0; d < j; ++d) CHECK(row[d] == x[d]);
            for (int slot = 1; slot <= K - 1; ++slot) {
              for (std::size_t d = 0; d < p - j; ++d) {
                const double v = row[j + (p - j) * (slot - 1) + d];
                CHECK(v == (slot == q ? x[j + d] : 0.0));
              }
            }
            for (int e = 1; e <= K - 2; ++e) {
              CHECK(row[D - (K - 2) + (e - 1)] == (e == q - 1 ? h : 0.0));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("free parameter count matches a linear model on the extension") {
  Rng rng(2);
  for (int K = 3; K <= 5; ++K) {
    for (std::size_t p = 1; p <= 3; ++p) {
      for (std::size_t j = 1; j <= p; ++j) {
        const auto cfg = make(K, p, 1.0, K - 1, j);
        const std::size_t formula = (p - 1 - (j - 1)) * (K - 1) + (K - 1) + j - 1;
        CHECK(cfg.free_parameter_count() == formula);

        Matrix m(0, p);
        std::vector<int> labels;
        for (int i = 0; i < 12 * K; ++i) {
          std::vector<double> row(p);
          for (auto& v : row) v = rng.uniform();
          m.append_row(row);
          labels.push_back(1 + i % K);
        }
        const auto ext = replicate(Dataset(m, labels, K), cfg);
        auto model = train_binary_svm(ext.features, ext.labels, 1.0, Kernel::linear());
        // weights plus bias, less one for the overall scale
        CHECK(model.primal_weights().size() + 1 - 1 == formula);
      }
    }
  }
}

TEST_CASE("frank-hall helpers") {
  Dataset d(Matrix(4, 1, {1, 2, 3, 4}), {1, 2, 3, 3}, 3);
  CHECK(frank_hall_labels(d, 1) == std::vector<BinaryLabel>{L, U, U, U});
  CHECK(frank_hall_labels(d, 2) == std::vector<BinaryLabel>{L, L, U, U});

  const double p[] = {0.9, 0.2};
  const auto m = frank_hall_masses(p);
  CHECK(m[0] == doctest::Approx(0.1));
  CHECK(m[1] == doctest::Approx(0.7));
  CHECK(m[2] == doctest::Approx(0.2));
  CHECK(argmax_class(m) == 2);

  const double low[] = {0.0, 0.0};
  CHECK(argmax_class(frank_hall_masses(low)) == 1);
  const double high[] = {1.0, 1.0};
  CHECK(argmax_class(frank_hall_masses(high)) == 3);

  // p_2 > p_1 makes the middle mass negative: clamp then renormalize
  const double crossing[] = {0.3, 0.6};
  const auto c = frank_hall_masses(crossing);
  CHECK(c[1] == 0.0);
  CHECK(c[0] == doctest::Approx(0.7 / 1.3));
  CHECK(c[2] == doctest::Approx(0.6 / 1.3));

  const double tie[] = {0.5, 0.5, 0.25, 0.25};
  CHECK(argmax_class(tie) == 1);
}
