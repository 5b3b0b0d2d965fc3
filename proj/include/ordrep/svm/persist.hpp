#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "ordrep/svm/ensembles.hpp"
#include "ordrep/svm/ordinal_svm.hpp"

namespace ordrep {

// Plain-text model files, first line `ordrep-svm v1`:
//
//   ordrep-svm v1
//   model osvm|csvm|psvm
//   classes K
//   dim p
//   kernel linear|poly <degree>
//   C <cost>
//   h <offset>|-      s <width>|-      j <prefix>|-      cumulative 0|1|-
//   machines <count>
//   machine <tag...>          (osvm: 0; psvm: boundary i; csvm: class pair a b)
//   bias <b>
//   support <n> <cols>
//   <coef> <x_1> ... <x_cols>     (n rows, 17 significant digits)
//   ...repeated per machine
inline constexpr const char* kSvmFormatHeader = "ordrep-svm v1";

using SvmModel = std::variant<OrdinalSVMModel, OneVsOneSVM, FrankHallSVM>;

void save_svm_model(std::ostream& out, const SvmModel& model);
SvmModel load_svm_model(std::istream& in);

}  // namespace ordrep
