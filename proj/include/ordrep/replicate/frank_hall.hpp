#pragma once

#include <span>
#include <vector>

#include "ordrep/core/dataset.hpp"
#include "ordrep/replicate/replicate.hpp"

namespace ordrep {

// Binary labels of the Frank-Hall problem for boundary i (test "class > i"):
// classes 1..i are `lower`, i+1..K are `upper`.
std::vector<BinaryLabel> frank_hall_labels(const Dataset& data, int boundary);

// Class masses from the K-1 estimates p_i = Pr(C > i):
//   P(1) = 1 - p_1,  P(k) = p_{k-1} - p_k,  P(K) = p_{K-1}.
// Negative masses are clamped to zero and the vector renormalized; if every
// mass clamps to zero the result is uniform.
std::vector<double> frank_hall_masses(std::span<const double> p_greater);

// 1-based index of the largest entry; ties go to the smaller class.
int argmax_class(std::span<const double> masses);

}  // namespace ordrep
