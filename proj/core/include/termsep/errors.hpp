#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace termsep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position()` is a byte offset into the parsed text
/// (for line-oriented formats, the offset within the offending line).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : Error(render(what, position, line)), detail_(what), position_(position), line_(line) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  /// The message without its location prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  static std::string render(const std::string& what, std::size_t position, std::size_t line) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(position + 1) + ": " + what;
    return out;
  }

  std::string detail_;
  std::size_t position_;
  std::size_t line_;
};

/// A path that does not address a subterm of the given term.
class PathError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its contract.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured assignment budget.
class LimitExceeded : public Error {
public:
  using Error::Error;
};

/// A construction produced a result that failed its own verification.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace termsep
