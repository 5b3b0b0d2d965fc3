#pragma once

#include <string>
#include <vector>

#include "ordrep/core/matrix.hpp"

namespace ordrep {

// Raw abalone table: 8 predictors and the ring count.
struct AbaloneData {
  Matrix features;
  std::vector<double> rings;
};

struct AbaloneOptions {
  // Continuous columns are divided by this. 0 means auto-detect: divide by
  // 200 only when the lengths look like raw millimetres (the distributed UCI
  // file already carries the /200 scaling).
  double continuous_divisor = 0.0;
};

// Reads the UCI layout `Sex,Length,Diameter,Height,Whole,Shucked,Viscera,Shell,Rings`
// with or without a header row. Sex is encoded M=1, F=0, I=-1. Rows with
// missing fields ('?' or empty) are dropped.
AbaloneData load_abalone(const std::string& path, AbaloneOptions options = {});

}  // namespace ordrep
