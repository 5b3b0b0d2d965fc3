#pragma once

#include <span>
#include <vector>

namespace ordrep {

// Equal-frequency discretization of a continuous target into labels 1..K.
// Sorted positions are cut at ceil(i*n/K), i = 1..K-1; every run of equal
// values takes the bin of its first element in sort order.
std::vector<int> equal_frequency_bins(std::span<const double> values, int num_classes);

}  // namespace ordrep
