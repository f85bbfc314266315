#pragma once

#include <stdexcept>
#include <string>

namespace pinlab {

// Precondition violations (bad arguments, bad flags) use std::invalid_argument.
// The two types below cover the environment and the data.

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is malformed or unusable (bad corpus/model line, empty corpus).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  static DataError at_line(const std::string& what, std::size_t line) {
    return DataError("line " + std::to_string(line) + ": " + what);
  }
};

}  // namespace pinlab
