#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace motifsketch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: pattern files, edge streams, state dumps.
class InputError : public Error {
 public:
  using Error::Error;
};

// Lexical problem in a text input. `line` is 1-based; 0 when not applicable.
class FormatError : public InputError {
 public:
  FormatError(const std::string& what, std::size_t line)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid parameters: too few colors, incompatible algorithm and group,
// merging sketches with different configurations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A brute-force routine was asked to work on an input above its size guard.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace motifsketch
