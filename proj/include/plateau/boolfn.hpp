#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace plateau {

/* Truth table of f : F2^n -> F2, bit-packed 64 entries per word.
   Entry i is f(vector_from_index(i)), i.e. T_f = (f(0..00), f(0..01), ...). */
class BooleanFunction {
 public:
  BooleanFunction() = default;

  explicit BooleanFunction(int n) : n_(n) {
    check_var_count(n);
    words_.assign(word_count(n), 0);
  }

  static BooleanFunction constant(int n, int value) {
    BooleanFunction f(n);
    if (value) {
      for (auto& w : f.words_) w = ~0ull;
      f.mask_tail();
    }
    return f;
  }

  int n() const { return n_; }
  std::uint32_t size() const { return 1u << n_; }

  int get(std::uint32_t idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set(std::uint32_t idx, int v) {
    std::uint64_t mask = 1ull << (idx & 63);
    if (v)
      words_[idx >> 6] |= mask;
    else
      words_[idx >> 6] &= ~mask;
  }
  void flip(std::uint32_t idx) { words_[idx >> 6] ^= 1ull << (idx & 63); }

  int eval(BitVector x) const { return get(x.bits); }

  std::uint64_t weight() const {
    std::uint64_t w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  BooleanFunction& operator^=(const BooleanFunction& o) {
    if (o.n_ != n_) throw PreconditionError("xor of different-arity functions");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend BooleanFunction operator^(BooleanFunction a, const BooleanFunction& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BooleanFunction& a, const BooleanFunction& b) {
    return !(a == b);
  }

  std::uint64_t hamming_distance(const BooleanFunction& o) const {
    if (o.n_ != n_) throw PreconditionError("distance of different arities");
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      d += std::popcount(words_[i] ^ o.words_[i]);
    return d;
  }

 private:
  static std::size_t word_count(int n) {
    return n >= 6 ? (1ull << (n - 6)) : 1;
  }
  void mask_tail() {
    if (n_ < 6) words_[0] &= (1ull << (1u << n_)) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/* The linear function x -> a.x */
inline BooleanFunction linear_function(BitVector a) {
  BooleanFunction f(a.n);
  for (std::uint32_t x = 0; x < f.size(); ++x)
    if (parity(a.bits & x)) f.set(x, 1);
  return f;
}

inline BooleanFunction random_function(int n, std::mt19937_64& rng) {
  BooleanFunction f(n);
  for (auto& w : f.words()) w = rng();
  if (n < 6) f.words()[0] &= (1ull << (1u << n)) - 1;
  return f;
}

/* h(x) = f(xA + b) + c.x + eps.  A must be invertible. */
inline BooleanFunction apply_affine(const BooleanFunction& f,
                                    const BinaryMatrix& a, BitVector b,
                                    BitVector c, int eps) {
  int n = f.n();
  if (a.rows != n || a.cols != n || b.n != n || c.n != n)
    throw PreconditionError("apply_affine: dimension mismatch");
  if (!is_invertible(a)) throw PreconditionError("apply_affine: singular A");
  BooleanFunction h(n);
  for (std::uint32_t x = 0; x < h.size(); ++x) {
    std::uint32_t y = mul_row(BitVector(n, x), a).bits ^ b.bits;
    int v = f.get(y) ^ parity(c.bits & x) ^ eps;
    if (v) h.set(x, 1);
  }
  return h;
}

}  // namespace plateau
