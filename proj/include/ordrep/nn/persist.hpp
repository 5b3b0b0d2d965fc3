#pragma once

#include <iosfwd>
#include <variant>

#include "ordrep/nn/learners.hpp"

namespace ordrep {

// Plain-text network files, first line `ordrep-nn v1`:
//
//   ordrep-nn v1
//   model cnn|pnn|onn|unn
//   classes K
//   dim p
//   h <offset>|-      s <width>|-      j <prefix>|-      cumulative 0|1|-
//   networks <count>
//   network <index>
//   inputs <n> passthrough <m>
//   hidden <layers> <units...>
//   outputs <n> <activation>
//   layer <l> <rows> <cols>
//   w <row weights...>            (rows lines, 17 significant digits)
//   b <biases...>
//   ...repeated per layer and network
inline constexpr const char* kNNFormatHeader = "ordrep-nn v1";

using NNModel = std::variant<ClassifierNN, FrankHallNN, OrdinalNN, UnimodalNN>;

void save_nn_model(std::ostream& out, const NNModel& model);
NNModel load_nn_model(std::istream& in);

}  // namespace ordrep
