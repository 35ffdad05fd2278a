#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace plateau {

/* Everything indexes F2^n with x_1 as the most significant bit:
   |x| = sum_j x_{n-j} 2^j.  Lexicographic order on vectors equals
   numeric order on indices. */

constexpr int kMaxVars = 24;

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

/* A point of F2^n, stored as its integer index. */
struct BitVector {
  int n = 0;
  std::uint32_t bits = 0;

  BitVector() = default;
  BitVector(int n_, std::uint32_t bits_) : n(n_), bits(bits_) {}

  /* x_i, 1-based; x_1 is the MSB. */
  int coord(int i) const { return (bits >> (n - i)) & 1u; }

  int weight() const { return std::popcount(bits); }
  bool is_zero() const { return bits == 0; }

  friend BitVector operator+(BitVector a, BitVector b) {
    return BitVector(a.n, a.bits ^ b.bits);
  }
  friend bool operator==(BitVector a, BitVector b) {
    return a.n == b.n && a.bits == b.bits;
  }
  friend bool operator!=(BitVector a, BitVector b) { return !(a == b); }
  friend bool operator<(BitVector a, BitVector b) { return a.bits < b.bits; }
};

inline void check_var_count(int n) {
  if (n < 1 || n > kMaxVars)
    throw PreconditionError("variable count " + std::to_string(n) +
                            " outside [1, " + std::to_string(kMaxVars) + "]");
}

inline BitVector vector_from_index(std::uint32_t i, int n) {
  check_var_count(n);
  if (i >= (1u << n))
    throw PreconditionError("index " + std::to_string(i) +
                            " out of range for n=" + std::to_string(n));
  return BitVector(n, i);
}

inline std::uint32_t lex_index(BitVector x) { return x.bits; }

inline int dot(BitVector a, BitVector b) { return parity(a.bits & b.bits); }

inline std::string to_binary_string(BitVector x) {
  std::string s(x.n, '0');
  for (int i = 1; i <= x.n; ++i)
    if (x.coord(i)) s[i - 1] = '1';
  return s;
}

inline BitVector bitvector_from_string(const std::string& s) {
  int n = static_cast<int>(s.size());
  check_var_count(n);
  std::uint32_t bits = 0;
  for (char ch : s) {
    if (ch != '0' && ch != '1')
      throw ParseError("binary string contains '" + std::string(1, ch) + "'");
    bits = (bits << 1) | static_cast<std::uint32_t>(ch - '0');
  }
  return BitVector(n, bits);
}

/* Rank of a list of vectors over F2 (row elimination on the raw masks). */
inline int rank_of(const std::vector<std::uint32_t>& vecs) {
  std::vector<std::uint32_t> basis;  // one entry per pivot, decreasing pivots
  for (std::uint32_t v : vecs) {
    for (std::uint32_t b : basis)
      if (std::uint32_t hi = 1u << (31 - std::countl_zero(b)); v & hi) v ^= b;
    if (v) basis.push_back(v);
  }
  return static_cast<int>(basis.size());
}

/* Reduce `v` against an incrementally built basis; returns the residue.
   Appending nonzero residues keeps `basis` a triangular spanning set. */
inline std::uint32_t reduce_against(std::uint32_t v,
                                    const std::vector<std::uint32_t>& basis) {
  for (std::uint32_t b : basis) {
    std::uint32_t hi = 1u << (31 - std::countl_zero(b));
    if (v & hi) v ^= b;
  }
  return v;
}

}  // namespace plateau
