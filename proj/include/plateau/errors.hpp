#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace plateau {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Malformed textual input (ANF/TT strings, support/permutation files). */
struct ParseError : Error {
  using Error::Error;
};

/* A documented operation precondition or theorem condition failed. */
struct PreconditionError : Error {
  using Error::Error;
};

/* Inverse transform hit a point whose reconstructed value is not +-1. */
struct NotBooleanSpectrum : PreconditionError {
  NotBooleanSpectrum(std::uint32_t point, const std::string& what)
      : PreconditionError(what), witness(point) {}
  std::uint32_t witness;
};

/* Spectral construction failed: the dual is not at bent distance to the
   sequence profile at `witness`; `distance` is the offending Hamming
   distance between the dual and that profile column. */
struct NotPlateaued : PreconditionError {
  NotPlateaued(std::uint32_t point, long dist, const std::string& what)
      : PreconditionError(what), witness(point), distance(dist) {}
  std::uint32_t witness;
  long distance;
};

/* A bounded search ran out of budget; the result is inconclusive. */
struct BudgetExceeded : Error {
  using Error::Error;
};

}  // namespace plateau
