#include "ordrep/core/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ordrep {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

long long parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_double(double v, int significant_digits) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant_digits);
  return std::string(buf, ptr);
}

Dataset read_dataset_csv(std::istream& in, std::optional<int> num_classes) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset CSV is empty");
  const auto header = split_fields(line);
  const auto label_it = std::find(header.begin(), header.end(), std::string_view("label"));
  if (label_it == header.end()) throw std::runtime_error("dataset CSV header has no 'label' column");
  const auto label_col = static_cast<std::size_t>(label_it - header.begin());
  if (label_col == 0) throw std::runtime_error("dataset CSV has no feature columns");

  Matrix features(0, label_col);
  std::vector<int> labels;
  std::vector<double> row(label_col);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() < header.size()) {
      throw std::runtime_error("dataset CSV line " + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " fields");
    }
    try {
      for (std::size_t d = 0; d < label_col; ++d) row[d] = parse_double(fields[d]);
      labels.push_back(static_cast<int>(parse_int(fields[label_col])));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("dataset CSV line " + std::to_string(line_no) + ": " + e.what());
    }
    features.append_row(row);
  }
  int k = 2;
  if (num_classes) {
    k = *num_classes;
  } else {
    for (int y : labels) k = std::max(k, y);
  }
  return Dataset(std::move(features), std::move(labels), k);
}

Dataset read_dataset_csv(const std::string& path, std::optional<int> num_classes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
  return read_dataset_csv(in, num_classes);
}

void write_dataset_csv(std::ostream& out, const Dataset& data, std::span<const ExtraColumn> extra) {
  for (const auto& col : extra) {
    if (col.values.size() != data.size()) throw std::invalid_argument("extra column length mismatch");
  }
  for (std::size_t d = 0; d < data.dim(); ++d) out << 'f' << (d + 1) << ',';
  out << "label";
  for (const auto& col : extra) out << ',' << col.name;
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) out << format_double(v) << ',';
    out << data.label(i);
    for (const auto& col : extra) out << ',' << format_double(col.values[i]);
    out << '\n';
  }
}

void write_dataset_csv(const std::string& path, const Dataset& data, std::span<const ExtraColumn> extra) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file '" + path + "'");
  write_dataset_csv(out, data, extra);
  if (!out) throw std::runtime_error("error writing dataset file '" + path + "'");
}

}  // namespace ordrep
