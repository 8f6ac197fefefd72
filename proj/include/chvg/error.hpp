#pragma once

#include <stdexcept>
#include <string>

namespace chvg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or precondition on caller-supplied parameters
/// (unknown scheme, n = 0, bad tokenizer settings). Maps to CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Problem with the data itself: unreadable files, undecodable bytes,
/// degenerate inputs for a statistic. Maps to CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public DataError {
 public:
  DecodeError(const std::string& where, std::size_t offset)
      : DataError(where + ": invalid UTF-8 at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace chvg
