#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "motifsketch/error.hpp"

namespace motifsketch::detail {

// Iterates over the lines of an in-memory text, tracking 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : rest_(text) {}

  bool next() {
    if (done_) return false;
    const auto pos = rest_.find('\n');
    current_ = rest_.substr(0, pos);
    if (!current_.empty() && current_.back() == '\r') current_.remove_suffix(1);
    ++line_;
    if (pos == std::string_view::npos) {
      done_ = true;
      rest_ = {};
      return !current_.empty();
    }
    rest_.remove_prefix(pos + 1);
    return true;
  }

  std::string_view current() const { return current_; }
  std::size_t line_number() const { return line_; }

 private:
  std::string_view rest_;
  std::string_view current_;
  std::size_t line_ = 0;
  bool done_ = false;
};

inline std::string_view strip_comment(std::string_view line) {
  const auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view field, std::size_t line, std::string_view what) {
  Int value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw FormatError("invalid " + std::string(what) + " '" + std::string(field) + "'", line);
  }
  return value;
}

}  // namespace motifsketch::detail
