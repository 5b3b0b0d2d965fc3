#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordrep/core/dataset.hpp"

namespace ordrep {

// CSV dataset format: header `f1,...,fp,label[,extra...]`, comma separated,
// 1-based integer labels. Columns after `label` are ignored on read.
//
// If num_classes is not given, K is taken as max(2, largest label).
Dataset read_dataset_csv(std::istream& in, std::optional<int> num_classes = std::nullopt);
Dataset read_dataset_csv(const std::string& path, std::optional<int> num_classes = std::nullopt);

struct ExtraColumn {
  std::string name;
  std::vector<double> values;
};

void write_dataset_csv(std::ostream& out, const Dataset& data,
                       std::span<const ExtraColumn> extra = {});
void write_dataset_csv(const std::string& path, const Dataset& data,
                       std::span<const ExtraColumn> extra = {});

// Shortest round-trip decimal representation.
std::string format_double(double v);
// Fixed significant digits, used by the model file formats.
std::string format_double(double v, int significant_digits);

double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

}  // namespace ordrep
