#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace plateau {

/* Binary matrix acting on row vectors: y = x M.  Row i (0-based) is kept
   as a mask with column j (1-based) at bit (cols - j), matching BitVector. */
struct BinaryMatrix {
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> row_bits;

  BinaryMatrix() = default;
  BinaryMatrix(int r, int c) : rows(r), cols(c), row_bits(r, 0) {}

  static BinaryMatrix identity(int n) {
    BinaryMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.row_bits[i] = 1u << (n - 1 - i);
    return m;
  }

  int get(int r, int c) const { return (row_bits[r] >> (cols - 1 - c)) & 1u; }
  void set(int r, int c, int v) {
    std::uint32_t mask = 1u << (cols - 1 - c);
    if (v)
      row_bits[r] |= mask;
    else
      row_bits[r] &= ~mask;
  }

  BitVector row(int r) const { return BitVector(cols, row_bits[r]); }

  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.row_bits == b.row_bits;
  }
};

/* x M: XOR of the rows selected by the coordinates of x. */
inline BitVector mul_row(BitVector x, const BinaryMatrix& m) {
  if (x.n != m.rows) throw PreconditionError("vector/matrix size mismatch");
  std::uint32_t acc = 0;
  for (int i = 0; i < m.rows; ++i)
    if ((x.bits >> (m.rows - 1 - i)) & 1u) acc ^= m.row_bits[i];
  return BitVector(m.cols, acc);
}

inline BinaryMatrix transpose(const BinaryMatrix& m) {
  BinaryMatrix t(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (m.get(r, c)) t.set(c, r, 1);
  return t;
}

inline BinaryMatrix multiply(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols != b.rows) throw PreconditionError("matrix product size mismatch");
  BinaryMatrix out(a.rows, b.cols);
  for (int r = 0; r < a.rows; ++r)
    out.row_bits[r] = mul_row(a.row(r), b).bits;
  return out;
}

inline int matrix_rank(const BinaryMatrix& m) { return rank_of(m.row_bits); }

/* Gauss-Jordan over F2; throws on singular input. */
inline BinaryMatrix matrix_inverse(const BinaryMatrix& m) {
  if (m.rows != m.cols) throw PreconditionError("inverse of non-square matrix");
  int n = m.rows;
  std::vector<std::uint64_t> aug(n);  // row | identity, 2n bits, left at high end
  for (int i = 0; i < n; ++i)
    aug[i] = (static_cast<std::uint64_t>(m.row_bits[i]) << n) |
             (1ull << (n - 1 - i));
  int pivot_row = 0;
  for (int col = 0; col < n && pivot_row < n; ++col) {
    std::uint64_t mask = 1ull << (2 * n - 1 - col);
    int sel = -1;
    for (int r = pivot_row; r < n; ++r)
      if (aug[r] & mask) { sel = r; break; }
    if (sel < 0) throw PreconditionError("singular matrix has no inverse");
    std::swap(aug[pivot_row], aug[sel]);
    for (int r = 0; r < n; ++r)
      if (r != pivot_row && (aug[r] & mask)) aug[r] ^= aug[pivot_row];
    ++pivot_row;
  }
  BinaryMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    inv.row_bits[i] = static_cast<std::uint32_t>(aug[i] & ((1ull << n) - 1));
  return inv;
}

inline bool is_invertible(const BinaryMatrix& m) {
  return m.rows == m.cols && matrix_rank(m) == m.rows;
}

/* Deterministic per seed; rejection sampling keeps the distribution uniform
   over GL(n, F2). */
inline BinaryMatrix random_invertible(int n, std::uint64_t seed) {
  check_var_count(n);
  std::mt19937_64 rng(seed);
  BinaryMatrix m(n, n);
  for (;;) {
    for (int i = 0; i < n; ++i)
      m.row_bits[i] = static_cast<std::uint32_t>(rng()) & ((1u << n) - 1);
    if (matrix_rank(m) == n) return m;
  }
}

inline BinaryMatrix matrix_from_binary(const std::string& rowmajor, int rows,
                                       int cols) {
  if (static_cast<int>(rowmajor.size()) != rows * cols)
    throw ParseError("matrix literal needs " + std::to_string(rows * cols) +
                     " binary digits");
  BinaryMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      char ch = rowmajor[r * cols + c];
      if (ch != '0' && ch != '1') throw ParseError("matrix literal digit");
      m.set(r, c, ch - '0');
    }
  return m;
}

inline std::string to_binary_string(const BinaryMatrix& m) {
  std::string s;
  s.reserve(static_cast<std::size_t>(m.rows) * m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) s.push_back(m.get(r, c) ? '1' : '0');
  return s;
}

}  // namespace plateau
