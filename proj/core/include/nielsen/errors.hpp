#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nielsen {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input value or a violated call precondition.
struct ArgumentError : Error {
  using Error::Error;
};

// A hard size cap was exceeded; the message names the cap that tripped.
struct CapacityError : Error {
  using Error::Error;
};

// Operation applied outside its mathematical domain (e.g. a cyclic tower
// of a non-solvable group).
struct DomainError : Error {
  using Error::Error;
};

// Group-spec text rejected; position is the byte offset of the offending token.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// Cache file rejected or unreadable.
struct CacheError : Error {
  enum class Kind { io, magic, version, crc, fingerprint, layout, mismatch };
  CacheError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
  Kind kind;
};

}  // namespace nielsen
