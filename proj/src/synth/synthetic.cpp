#include "ordrep/synth/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ordrep/core/rng.hpp"

namespace ordrep {

std::string space_name(SyntheticSpace s) { return s == SyntheticSpace::r2 ? "r2" : "r4"; }

SyntheticSpace parse_space(const std::string& name) {
  if (name == "r2") return SyntheticSpace::r2;
  if (name == "r4") return SyntheticSpace::r4;
  throw std::invalid_argument("unknown synthetic space '" + name + "' (expected r2 or r4)");
}

void SyntheticSpec::validate() const {
  if (num_classes < 2) throw std::invalid_argument("synthetic data needs at least 2 classes");
  if (thresholds.size() != static_cast<std::size_t>(num_classes - 1)) {
    throw std::invalid_argument("need K-1 thresholds");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!std::isfinite(thresholds[i])) throw std::invalid_argument("thresholds must be finite");
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      throw std::invalid_argument("thresholds must be strictly increasing");
    }
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("noise sigma must be nonnegative");
  if (n < 1) throw std::invalid_argument("synthetic data needs at least one point");
}

SyntheticSpec SyntheticSpec::preset(SyntheticSpace space, int num_classes) {
  SyntheticSpec s;
  s.space = space;
  s.num_classes = num_classes;
  if (space == SyntheticSpace::r2) {
    s.n = 1000;
    if (num_classes == 5) {
      s.thresholds = {-1, -0.1, 0.25, 1};
      s.sigma = 0.125;
    } else if (num_classes == 10) {
      s.thresholds = {-1.75, -1, -0.5, -0.1, 0.1, 0.25, 0.75, 1, 1.75};
      s.sigma = 0.125 / 2;
    }
  } else {
    s.n = 2000;
    if (num_classes == 5) {
      s.thresholds = {-2.5, -0.5, 0.5, 3};
      s.sigma = 0.25;
    } else if (num_classes == 10) {
      s.thresholds = {-5, -2.5, -1, -0.4, 0.1, 0.5, 1.1, 3, 6};
      s.sigma = 0.125;
    }
  }
  if (s.thresholds.empty()) {
    throw std::invalid_argument("no preset for " + std::to_string(num_classes) + " classes (expected 5 or 10)");
  }
  return s;
}

double synthetic_score(SyntheticSpace space, std::span<const double> x) {
  if (space == SyntheticSpace::r2) {
    if (x.size() != 2) throw std::invalid_argument("r2 score needs 2 coordinates");
    return 10.0 * (x[0] - 0.5) * (x[1] - 0.5);
  }
  if (x.size() != 4) throw std::invalid_argument("r4 score needs 4 coordinates");
  double prod = 1000.0;
  for (double v : x) prod *= v - 0.5;
  return prod;
}

int threshold_label(double v, std::span<const double> thresholds) {
  // First r with v <= b_r.
  const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), v);
  return 1 + static_cast<int>(it - thresholds.begin());
}

double SyntheticData::corruption_rate() const {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < noiseless.size(); ++i) wrong += noiseless[i] != data.label(i) ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(noiseless.size());
}

SyntheticData generate(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t dim = spec.space == SyntheticSpace::r2 ? 2 : 4;
  Rng rng(spec.seed);
  Matrix x(spec.n, dim);
  std::vector<int> labels, noiseless;
  labels.reserve(spec.n);
  noiseless.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    auto row = x.row(i);
    for (double& v : row) v = rng.uniform();
    const double score = synthetic_score(spec.space, row);
    const double eps = spec.sigma * rng.normal();
    noiseless.push_back(threshold_label(score, spec.thresholds));
    labels.push_back(threshold_label(score + eps, spec.thresholds));
  }
  return {Dataset(std::move(x), std::move(labels), spec.num_classes), std::move(noiseless)};
}

}  // namespace ordrep
