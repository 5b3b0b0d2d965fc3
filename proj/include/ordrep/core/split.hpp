#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ordrep {

struct SplitPlan {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
};

// Uniformly random train subset of size n_train out of n examples; the
// complement is the test set. Both index lists are sorted.
SplitPlan split_random(std::size_t n, std::size_t n_train, std::uint64_t seed);

// Leave-one-out folds: fold i tests on {i} and trains on the rest.
std::vector<SplitPlan> loocv_folds(std::size_t n);

}  // namespace ordrep
