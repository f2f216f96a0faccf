#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epiccbr {

// Error taxonomy mirrors the CLI exit codes:
//   InputError -> 2, ArtifactError -> 3, NumericError -> 4.

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure in a dataset or config file; carries file and 1-based line.
class ParseError : public InputError {
 public:
  ParseError(std::string file, std::size_t line, const std::string& msg)
      : InputError(file + ":" + std::to_string(line) + ": " + msg),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// Mismatch between persisted artifacts (checkpoints, mined tables) and the
// data or config they are used with.
class ArtifactError : public std::runtime_error {
 public:
  explicit ArtifactError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure: degenerate statistics, divergence, non-finite losses.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace epiccbr
