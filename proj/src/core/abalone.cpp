#include "ordrep/core/abalone.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "ordrep/core/csv.hpp"

namespace ordrep {
namespace {

constexpr std::size_t kPredictors = 8;

bool missing(std::string_view f) { return f.empty() || f == "?"; }

}  // namespace

AbaloneData load_abalone(const std::string& path, AbaloneOptions options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open abalone file '" + path + "'");

  Matrix raw(0, kPredictors);
  std::vector<double> rings;
  std::string line;
  std::vector<double> row(kPredictors);
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (first) {
      first = false;
      // Header row: the sex column of a data row is a single letter.
      if (fields[0].size() > 1) continue;
    }
    if (fields.size() != kPredictors + 1) {
      throw std::runtime_error("abalone row has " + std::to_string(fields.size()) + " fields, expected 9");
    }
    if (std::any_of(fields.begin(), fields.end(), missing)) continue;
    if (fields[0] == "M") {
      row[0] = 1.0;
    } else if (fields[0] == "F") {
      row[0] = 0.0;
    } else if (fields[0] == "I") {
      row[0] = -1.0;
    } else {
      throw std::runtime_error("unknown abalone sex code '" + std::string(fields[0]) + "'");
    }
    for (std::size_t d = 1; d < kPredictors; ++d) row[d] = parse_double(fields[d]);
    raw.append_row(row);
    rings.push_back(parse_double(fields[kPredictors]));
  }
  if (rings.empty()) throw std::runtime_error("abalone file has no complete rows");

  double divisor = options.continuous_divisor;
  if (divisor == 0.0) {
    double max_length = 0.0;
    for (std::size_t i = 0; i < raw.rows(); ++i) max_length = std::max(max_length, raw(i, 1));
    divisor = max_length > 10.0 ? 200.0 : 1.0;
  }
  if (divisor != 1.0) {
    for (std::size_t i = 0; i < raw.rows(); ++i) {
      for (std::size_t d = 1; d < kPredictors; ++d) raw(i, d) /= divisor;
    }
  }
  return {std::move(raw), std::move(rings)};
}

}  // namespace ordrep
