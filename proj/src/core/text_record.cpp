#include "ordrep/core/text_record.hpp"

#include <sstream>
#include <stdexcept>

#include "ordrep/core/csv.hpp"

namespace ordrep {

std::vector<std::string> RecordReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    std::istringstream ss(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (!tokens.empty()) return tokens;
  }
  throw std::runtime_error("model file truncated after line " + std::to_string(line_));
}

std::vector<std::string> RecordReader::expect(const std::string& key, std::size_t min_values) {
  auto tokens = next();
  if (tokens.front() != key) {
    throw std::runtime_error("model file line " + std::to_string(line_) + ": expected '" + key + "', found '" +
                             tokens.front() + "'");
  }
  tokens.erase(tokens.begin());
  if (tokens.size() < min_values) {
    throw std::runtime_error("model file line " + std::to_string(line_) + ": '" + key + "' needs " +
                             std::to_string(min_values) + " values");
  }
  return tokens;
}

double RecordReader::expect_double(const std::string& key) { return parse_double(expect(key, 1)[0]); }

long long RecordReader::expect_int(const std::string& key) { return parse_int(expect(key, 1)[0]); }

}  // namespace ordrep
