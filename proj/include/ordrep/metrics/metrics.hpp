#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace ordrep {

class DegenerateRanking : public std::domain_error {
 public:
  DegenerateRanking() : std::domain_error("degenerate ranking") {}
};

double mer(std::span<const int> pred, std::span<const int> truth);
double mae(std::span<const int> pred, std::span<const int> truth);
double mse(std::span<const int> pred, std::span<const int> truth);

// l^s(f, k) = min(|f - k|, s)
int loss_ls(int f, int k, int s);
double empirical_risk_s(std::span<const int> pred, std::span<const int> truth, int s);

struct PairCounts {
  std::uint64_t concordant = 0;
  std::uint64_t discordant = 0;
  std::uint64_t extra_x = 0;  // tied in x only
  std::uint64_t extra_y = 0;  // tied in y only
  std::uint64_t ignored = 0;  // tied in both

  std::uint64_t total() const { return concordant + discordant + extra_x + extra_y + ignored; }
};

// Exhaustive classification of all n(n-1)/2 unordered pairs.
PairCounts count_pairs(std::span<const double> x, std::span<const double> y);
PairCounts count_pairs(std::span<const int> x, std::span<const int> y);

// Both throw DegenerateRanking when (c+d+e_x)(c+d+e_y) == 0.
double kendall_tau_b(const PairCounts& pc);
double oc_coefficient(const PairCounts& pc);
double kendall_tau_b(std::span<const int> x, std::span<const int> y);
double oc_coefficient(std::span<const int> x, std::span<const int> y);

// Pearson correlation of mid-ranks. Throws DegenerateRanking if either
// argument is constant.
double spearman(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const int> x, std::span<const int> y);

struct EvaluationReport {
  double mer = 0.0;
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  // NaN when the predictions or the truth are constant.
  double spearman = 0.0;
  double kendall_tau_b = 0.0;
  double o_c = 0.0;
  std::size_t n = 0;
};

EvaluationReport evaluate(std::span<const int> pred, std::span<const int> truth);

}  // namespace ordrep
