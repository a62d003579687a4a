#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sbc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position or length outside the valid range of a sequence.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument or parameter combination.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized data. `offset()` is the byte position where parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace sbc
