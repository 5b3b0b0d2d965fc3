#include "ordrep/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <vector>

namespace ordrep {
namespace {

void check_lengths(std::size_t a, std::size_t b, std::size_t min_len) {
  if (a != b) throw std::invalid_argument("prediction and truth lengths differ");
  if (a < min_len) throw std::invalid_argument("need at least " + std::to_string(min_len) + " examples");
}

std::vector<double> as_double(std::span<const int> v) { return {v.begin(), v.end()}; }

template <typename T>
PairCounts count_pairs_impl(std::span<const T> x, std::span<const T> y) {
  check_lengths(x.size(), y.size(), 2);
  PairCounts pc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool tx = x[i] == x[j], ty = y[i] == y[j];
      if (tx && ty) {
        ++pc.ignored;
      } else if (tx) {
        ++pc.extra_x;
      } else if (ty) {
        ++pc.extra_y;
      } else if ((x[i] < x[j]) == (y[i] < y[j])) {
        ++pc.concordant;
      } else {
        ++pc.discordant;
      }
    }
  }
  return pc;
}

double pair_denominator(const PairCounts& pc) {
  const double a = static_cast<double>(pc.concordant + pc.discordant + pc.extra_x);
  const double b = static_cast<double>(pc.concordant + pc.discordant + pc.extra_y);
  if (a == 0.0 || b == 0.0) throw DegenerateRanking();
  // one sqrt keeps q exact when a == b, so perfect rankings give exactly +-1
  return std::sqrt(a * b);
}

std::vector<double> mid_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double mer(std::span<const int> pred, std::span<const int> truth) {
  check_lengths(pred.size(), truth.size(), 1);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) wrong += pred[i] != truth[i] ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(pred.size());
}

double mae(std::span<const int> pred, std::span<const int> truth) {
  check_lengths(pred.size(), truth.size(), 1);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) total += std::abs(pred[i] - truth[i]);
  return total / static_cast<double>(pred.size());
}

double mse(std::span<const int> pred, std::span<const int> truth) {
  check_lengths(pred.size(), truth.size(), 1);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - truth[i];
    total += d * d;
  }
  return total / static_cast<double>(pred.size());
}

int loss_ls(int f, int k, int s) {
  if (s < 1) throw std::invalid_argument("loss cap s must be at least 1");
  return std::min(std::abs(f - k), s);
}

double empirical_risk_s(std::span<const int> pred, std::span<const int> truth, int s) {
  check_lengths(pred.size(), truth.size(), 1);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) total += loss_ls(pred[i], truth[i], s);
  return total / static_cast<double>(pred.size());
}

PairCounts count_pairs(std::span<const double> x, std::span<const double> y) { return count_pairs_impl(x, y); }
PairCounts count_pairs(std::span<const int> x, std::span<const int> y) { return count_pairs_impl(x, y); }

double kendall_tau_b(const PairCounts& pc) {
  const double q = pair_denominator(pc);
  return std::clamp((static_cast<double>(pc.concordant) - static_cast<double>(pc.discordant)) / q, -1.0, 1.0);
}

double oc_coefficient(const PairCounts& pc) {
  const double q = pair_denominator(pc);
  return std::clamp(-1.0 + 2.0 * static_cast<double>(pc.concordant) / q, -1.0, 1.0);
}

double kendall_tau_b(std::span<const int> x, std::span<const int> y) { return kendall_tau_b(count_pairs(x, y)); }
double oc_coefficient(std::span<const int> x, std::span<const int> y) { return oc_coefficient(count_pairs(x, y)); }

double spearman(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size(), 2);
  const auto rx = mid_ranks(x), ry = mid_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateRanking();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const int> x, std::span<const int> y) {
  const auto dx = as_double(x), dy = as_double(y);
  return spearman(std::span<const double>(dx), std::span<const double>(dy));
}

EvaluationReport evaluate(std::span<const int> pred, std::span<const int> truth) {
  EvaluationReport r;
  r.n = pred.size();
  r.mer = mer(pred, truth);
  r.mae = mae(pred, truth);
  r.mse = mse(pred, truth);
  r.rmse = std::sqrt(r.mse);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  r.spearman = r.kendall_tau_b = r.o_c = nan;
  if (pred.size() < 2) return r;
  try {
    r.spearman = spearman(pred, truth);
  } catch (const DegenerateRanking&) {
  }
  const auto pc = count_pairs(pred, truth);
  try {
    r.kendall_tau_b = kendall_tau_b(pc);
    r.o_c = oc_coefficient(pc);
  } catch (const DegenerateRanking&) {
  }
  return r;
}

}  // namespace ordrep
