#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ordrep/core/dataset.hpp"

namespace ordrep {

enum class SyntheticSpace { r2, r4 };

std::string space_name(SyntheticSpace s);
SyntheticSpace parse_space(const std::string& name);

// Points uniform in the unit hypercube, labeled by which threshold interval
// score(x) + eps falls in, eps ~ N(0, sigma^2).
//
// `thresholds` holds the K-1 finite cuts b_1 < ... < b_{K-1}; b_0 = -inf and
// b_K = +inf are implicit. A value equal to b_r goes to class r.
struct SyntheticSpec {
  SyntheticSpace space = SyntheticSpace::r2;
  int num_classes = 5;
  std::size_t n = 1000;
  double sigma = 0.125;
  std::vector<double> thresholds;
  std::uint64_t seed = 1;

  void validate() const;

  // The four reference configurations: (r2|r4) x (5|10 classes), with their
  // default sizes (1000 in R^2, 2000 in R^4).
  static SyntheticSpec preset(SyntheticSpace space, int num_classes);
};

double synthetic_score(SyntheticSpace space, std::span<const double> x);

// 1-based interval index of v among the finite thresholds.
int threshold_label(double v, std::span<const double> thresholds);

struct SyntheticData {
  Dataset data;
  std::vector<int> noiseless;  // labels with eps = 0

  double corruption_rate() const;
};

SyntheticData generate(const SyntheticSpec& spec);

}  // namespace ordrep
