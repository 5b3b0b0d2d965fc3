#pragma once

#include <istream>
#include <string>
#include <vector>

namespace ordrep {

// Line-oriented reader for the `key value...` model formats.
class RecordReader {
 public:
  explicit RecordReader(std::istream& in) : in_(in) {}

  // Next non-empty line split on whitespace; throws at end of input.
  std::vector<std::string> next();
  // Next record, which must start with `key`; returns the remaining tokens.
  std::vector<std::string> expect(const std::string& key, std::size_t min_values = 0);

  double expect_double(const std::string& key);
  long long expect_int(const std::string& key);

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace ordrep
