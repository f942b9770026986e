#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace contribroles {

// Bad or inconsistent user input (files, flags, scripts). Maps to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed XML or JSON; offset is a byte offset into the parsed buffer.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// An internal invariant did not hold. Maps to exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace contribroles
