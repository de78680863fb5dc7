#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vanish {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundExceeded : GroupError {
  using GroupError::GroupError;
};
struct InvalidGenerator : GroupError {
  using GroupError::GroupError;
};
struct NotNormal : GroupError {
  using GroupError::GroupError;
};
struct NotCoprime : GroupError {
  using GroupError::GroupError;
};
struct SearchExhausted : GroupError {
  using GroupError::GroupError;
};
struct BadParams : GroupError {
  using GroupError::GroupError;
};
struct ActionNotHomomorphism : GroupError {
  using GroupError::GroupError;
};
struct FactorCountMismatch : GroupError {
  using GroupError::GroupError;
};
struct NotHallPair : GroupError {
  using GroupError::GroupError;
};
struct SplittingIncomplete : GroupError {
  using GroupError::GroupError;
};
struct LiftInconsistent : GroupError {
  using GroupError::GroupError;
};

// Parse failure with position info; `expected` lists what would have been
// accepted at that point.
struct ParseError : GroupError {
  std::size_t line;
  std::size_t column;
  std::string expected;

  ParseError(std::size_t line_, std::size_t column_, std::string expected_)
      : GroupError("parse error at " + std::to_string(line_) + ":" +
                   std::to_string(column_) + ", expected " + expected_),
        line(line_), column(column_), expected(std::move(expected_)) {}
};

}  // namespace vanish
