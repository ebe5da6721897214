#pragma once

#include <stdexcept>
#include <string>

namespace balancekit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input digraph has no diagonal scaling that balances it (not strongly connected).
struct NotBalanceable : Error {
  using Error::Error;
};

// No off-diagonal non-zero entries; the objective is an empty sum.
struct EmptyMatrix : Error {
  using Error::Error;
};

// A scaled entry or sum left the finite binary64 range.
struct OverflowError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line(line) {}
  std::size_t line;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// All truncated weights are zero; sampling probabilities are undefined.
struct DegenerateWeights : Error {
  using Error::Error;
};

struct CapExhausted : Error {
  using Error::Error;
};

struct InvalidCycle : Error {
  using Error::Error;
};

}  // namespace balancekit
