#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pwsnf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: syntax, undeclared symbols, violated preconditions. CLI exit 2.
struct InputError : Error {
  using Error::Error;
};

struct ParseError : InputError {
  ParseError(const std::string& msg, std::size_t token, std::size_t column)
      : InputError(msg), token(token), column(column) {}
  std::size_t token;   // 1-based token index
  std::size_t column;  // 1-based character column
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

// A value that exists but cannot be represented exactly (e.g. cos of a non-integer multiple of pi).
struct NotExact : Error {
  using Error::Error;
};

// Step or term budget exceeded. CLI exit 3.
struct ResourceError : Error {
  using Error::Error;
};

}  // namespace pwsnf
