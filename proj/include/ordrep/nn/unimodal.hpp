#pragma once

#include <vector>

namespace ordrep {

// Posterior over K classes under the binomial model B(K-1, p), computed by
// the ratio recursion from P(C_1) = (1-p)^(K-1). p = 0 and p = 1 give
// one-hot vectors.
std::vector<double> binomial_posteriors(double p, int num_classes);

// Squared distance between the posterior vector and the one-hot truth.
double unimodal_error(double p, int true_class, int num_classes);

// Regression target (c - 1)/(K - 1).
double unimodal_target(int true_class, int num_classes);

// Class with the largest binomial posterior. The mode of B(K-1, p) is
// floor(K p); when K p is an integer the two contiguous modes tie and the
// upper one is returned.
int predict_unimodal(double p, int num_classes);

// 1 + (K-1) p rounded to the nearest integer, halves away from zero.
int round_unimodal(double p, int num_classes);

}  // namespace ordrep
