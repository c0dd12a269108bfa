// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace tprobe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No s-t path exists under the weights in effect.
struct UnreachableError : Error {
  using Error::Error;
};

// Edge id outside the range of the weight vector / graph.
struct InvalidEdgeError : Error {
  using Error::Error;
};

// Edge probe against a demand realization or vice versa.
struct WrongModelError : Error {
  using Error::Error;
};

struct InvalidConfigError : Error {
  using Error::Error;
};

// Some edge has sum_i lambda_i^e * lambda_i == 0, so its basic-demand
// weight is undefined.
struct ZeroBasicWeightError : Error {
  using Error::Error;
};

struct BudgetExceededError : Error {
  using Error::Error;
};

struct InvalidPathError : Error {
  using Error::Error;
};

// The containment index of a sparse cover has no entry for a query; this
// indicates a cover-construction bug, not bad input.
struct NoCoverSetError : Error {
  using Error::Error;
};

struct NoValidPairsError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  ParseError(const std::string& msg, int line_no)
      : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct DuplicateEdgeIdError : ParseError {
  using ParseError::ParseError;
};

struct NegativeWeightError : ParseError {
  using ParseError::ParseError;
};

}  // namespace tprobe
