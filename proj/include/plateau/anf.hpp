#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bits.hpp"
#include "boolfn.hpp"

namespace plateau {

/* Algebraic normal form: the set of monomials u with lambda_u = 1.
   A monomial is the exponent vector itself (mask 0 = the constant term). */
struct AnfPolynomial {
  int n = 0;
  std::vector<std::uint32_t> monomials;  // sorted, distinct

  bool has(std::uint32_t u) const {
    return std::binary_search(monomials.begin(), monomials.end(), u);
  }

  friend bool operator==(const AnfPolynomial& a, const AnfPolynomial& b) {
    return a.n == b.n && a.monomials == b.monomials;
  }
};

namespace detail {

/* In-place Moebius transform on a packed table; an involution. */
inline void moebius_packed(std::vector<std::uint64_t>& words, int n) {
  static constexpr std::uint64_t low_half[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
      0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
  for (int k = 0; k < n && k < 6; ++k)
    for (auto& w : words) w ^= (w & low_half[k]) << (1u << k);
  for (int k = 6; k < n; ++k) {
    std::size_t stride = 1ull << (k - 6);
    for (std::size_t base = 0; base < words.size(); base += 2 * stride)
      for (std::size_t i = 0; i < stride; ++i)
        words[base + stride + i] ^= words[base + i];
  }
}

}  // namespace detail

inline AnfPolynomial tt_to_anf(const BooleanFunction& f) {
  std::vector<std::uint64_t> words = f.words();
  detail::moebius_packed(words, f.n());
  AnfPolynomial p;
  p.n = f.n();
  for (std::uint32_t u = 0; u < f.size(); ++u)
    if ((words[u >> 6] >> (u & 63)) & 1u) p.monomials.push_back(u);
  return p;
}

inline BooleanFunction anf_to_tt(const AnfPolynomial& p) {
  BooleanFunction f(p.n);
  for (std::uint32_t u : p.monomials) f.flip(u);
  detail::moebius_packed(f.words(), p.n);
  return f;
}

inline int degree(const AnfPolynomial& p) {
  int d = 0;
  for (std::uint32_t u : p.monomials)
    d = std::max(d, std::popcount(u));
  return d;
}

inline int degree(const BooleanFunction& f) { return degree(tt_to_anf(f)); }

}  // namespace plateau
