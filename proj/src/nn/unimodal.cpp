#include "ordrep/nn/unimodal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ordrep {
namespace {

void check(double p, int num_classes) {
  if (num_classes < 2) throw std::invalid_argument("unimodal model needs K >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial parameter must lie in [0, 1]");
}

}  // namespace

std::vector<double> binomial_posteriors(double p, int num_classes) {
  check(p, num_classes);
  const int n = num_classes - 1;
  std::vector<double> post(static_cast<std::size_t>(num_classes), 0.0);
  if (p == 0.0) {
    post.front() = 1.0;
    return post;
  }
  if (p == 1.0) {
    post.back() = 1.0;
    return post;
  }
  // P(C_{k+1}) = P(C_k) * (n - k + 1)/k * p/(1-p), k counted from 1.
  // Starting from (1-p)^n underflows for large n and p near 1, so run the
  // recursion from whichever end is larger and rescale.
  const double ratio = p / (1.0 - p);
  if (p <= 0.5) {
    post[0] = std::pow(1.0 - p, n);
    for (int k = 1; k <= n; ++k) post[k] = post[k - 1] * (n - k + 1) / k * ratio;
  } else {
    post[n] = std::pow(p, n);
    for (int k = n; k >= 1; --k) post[k - 1] = post[k] * k / (n - k + 1) / ratio;
  }
  return post;
}

double unimodal_error(double p, int true_class, int num_classes) {
  if (true_class < 1 || true_class > num_classes) throw std::invalid_argument("class out of range");
  const auto post = binomial_posteriors(p, num_classes);
  double err = 0.0;
  for (int k = 1; k <= num_classes; ++k) {
    const double d = post[k - 1] - (k == true_class ? 1.0 : 0.0);
    err += d * d;
  }
  return err;
}

double unimodal_target(int true_class, int num_classes) {
  if (num_classes < 2) throw std::invalid_argument("unimodal model needs K >= 2");
  if (true_class < 1 || true_class > num_classes) throw std::invalid_argument("class out of range");
  return static_cast<double>(true_class - 1) / (num_classes - 1);
}

int predict_unimodal(double p, int num_classes) {
  check(p, num_classes);
  // K p within rounding of an integer is a tie point; snap so the upper
  // class wins regardless of how m/K was rounded.
  const double kp = num_classes * p;
  const double nearest = std::round(kp);
  const int mode = static_cast<int>(std::abs(kp - nearest) <= 1e-12 * num_classes ? nearest : std::floor(kp));
  return 1 + std::min(mode, num_classes - 1);
}

int round_unimodal(double p, int num_classes) {
  check(p, num_classes);
  return static_cast<int>(std::round(1.0 + (num_classes - 1) * p));
}

}  // namespace ordrep
