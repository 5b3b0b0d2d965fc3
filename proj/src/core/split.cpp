#include "ordrep/core/split.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ordrep/core/rng.hpp"

namespace ordrep {

SplitPlan split_random(std::size_t n, std::size_t n_train, std::uint64_t seed) {
  if (n_train < 1 || n_train >= n) {
    throw std::invalid_argument("split_random: n_train must be in [1, n)");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  // Partial Fisher-Yates: the first n_train slots form a uniform subset.
  for (std::size_t i = 0; i < n_train; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(perm[i], perm[j]);
  }
  SplitPlan plan;
  plan.seed = seed;
  plan.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  plan.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  std::sort(plan.train.begin(), plan.train.end());
  std::sort(plan.test.begin(), plan.test.end());
  return plan;
}

std::vector<SplitPlan> loocv_folds(std::size_t n) {
  if (n < 2) throw std::invalid_argument("loocv_folds: need at least 2 examples");
  std::vector<SplitPlan> folds(n);
  for (std::size_t i = 0; i < n; ++i) {
    folds[i].test = {i};
    folds[i].train.reserve(n - 1);
    for (std::size_t t = 0; t < n; ++t) {
      if (t != i) folds[i].train.push_back(t);
    }
  }
  return folds;
}

}  // namespace ordrep
