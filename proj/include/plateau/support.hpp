#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bits.hpp"
#include "boolfn.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "spectrum.hpp"

namespace plateau {

/* S_f = v + EM with E lexicographically ordered and e_0 = 0. */
struct SupportDecomposition {
  BitVector v;
  BinaryMatrix m;
  std::vector<BitVector> e;
};

/* Ordered Walsh support: omega_0 .. omega_{2^{n-s}-1}.  The ordering is
   what identifies the dual with a function on F2^{n-s}; the (v, E, M)
   metadata is kept when the ordering came from such a representation. */
struct WalshSupport {
  int n = 0, s = 0;
  std::vector<BitVector> points;
  std::optional<SupportDecomposition> decomp;
};

namespace detail {

inline int order_from_size(std::size_t size, int n) {
  if (size == 0 || std::popcount(size) != 1)
    throw PreconditionError("support size must be a power of two");
  int log = std::countr_zero(size);
  if (log > n) throw PreconditionError("support larger than the space");
  return n - log;  // s; s = 0 is the degenerate bent/full-support case
}

inline void check_no_duplicates(const std::vector<BitVector>& pts) {
  std::vector<std::uint32_t> idx;
  idx.reserve(pts.size());
  for (BitVector p : pts) idx.push_back(p.bits);
  std::sort(idx.begin(), idx.end());
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1])
      throw PreconditionError("support is a multiset (duplicate point " +
                              std::to_string(idx[i]) + ")");
}

}  // namespace detail

/* The set {omega : W_f(omega) != 0}, in lexicographic order. */
inline std::vector<BitVector> walsh_support(const WalshSpectrum& w) {
  std::vector<BitVector> s;
  for (std::uint32_t u = 0; u < w.values.size(); ++u)
    if (w.values[u] != 0) s.emplace_back(w.n, u);
  return s;
}

inline std::vector<BitVector> walsh_support(const BooleanFunction& f) {
  return walsh_support(wht(f));
}

/* Orders S as v + EM: E = (S + v)M^{-1} sorted lexicographically, which
   puts e_0 = 0 because v is in S. */
inline WalshSupport order_support(const std::vector<BitVector>& s, BitVector v,
                                  const BinaryMatrix& m) {
  if (s.empty()) throw PreconditionError("empty support");
  int n = s.front().n;
  if (v.n != n || m.rows != n || m.cols != n)
    throw PreconditionError("order_support: dimension mismatch");
  if (std::find(s.begin(), s.end(), v) == s.end())
    throw PreconditionError("order_support: v is not a support point");
  detail::check_no_duplicates(s);
  BinaryMatrix minv = matrix_inverse(m);
  std::vector<BitVector> e;
  e.reserve(s.size());
  for (BitVector p : s) e.push_back(mul_row(p + v, minv));
  std::sort(e.begin(), e.end());

  WalshSupport out;
  out.n = n;
  out.s = detail::order_from_size(s.size(), n);
  out.points.reserve(s.size());
  for (BitVector ei : e) out.points.push_back(v + mul_row(ei, m));
  out.decomp = SupportDecomposition{v, m, std::move(e)};
  return out;
}

/* Default representation: v = lexicographically smallest point, M = I. */
inline WalshSupport canonical_order(const std::vector<BitVector>& s) {
  if (s.empty()) throw PreconditionError("empty support");
  BitVector v = *std::min_element(s.begin(), s.end());
  return order_support(s, v, BinaryMatrix::identity(s.front().n));
}

/* Row i of the support is (col_1(x_i), ..., col_n(x_i)) over lex x_i;
   the \wr of the column truth tables. */
inline WalshSupport support_from_columns(
    const std::vector<BooleanFunction>& cols) {
  if (cols.empty()) throw PreconditionError("support needs columns");
  int m = cols.front().n();
  for (const auto& c : cols)
    if (c.n() != m)
      throw PreconditionError("support columns on different variable counts");
  int n = static_cast<int>(cols.size());
  check_var_count(n);
  WalshSupport out;
  out.n = n;
  out.s = n - m;
  if (out.s < 0) throw PreconditionError("more rows than the space can hold");
  std::uint32_t rows = 1u << m;
  out.points.reserve(rows);
  std::vector<std::uint32_t> seen(rows);
  for (std::uint32_t i = 0; i < rows; ++i) {
    std::uint32_t p = 0;
    for (const auto& c : cols) p = (p << 1) | c.get(i);
    out.points.emplace_back(n, p);
    seen[i] = p;
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i] == seen[i - 1]) {
      // report the colliding pair of row indices
      std::uint32_t a = 0, b = 0;
      for (std::uint32_t r = 0; r < rows; ++r)
        if (out.points[r].bits == seen[i]) {
          a = r;
          for (std::uint32_t q = r + 1; q < rows; ++q)
            if (out.points[q].bits == seen[i]) b = q;
          break;
        }
      throw PreconditionError("duplicate support row: rows " +
                              std::to_string(a) + " and " + std::to_string(b) +
                              " coincide");
    }
  // keep (v, E, M) metadata when the natural one is valid
  BitVector v = out.points.front();
  std::vector<BitVector> e;
  e.reserve(rows);
  bool lex = true;
  for (std::uint32_t i = 0; i < rows; ++i) {
    e.push_back(out.points[i] + v);
    if (i > 0 && !(e[i - 1] < e[i])) lex = false;
  }
  if (lex)
    out.decomp = SupportDecomposition{v, BinaryMatrix::identity(n), std::move(e)};
  return out;
}

/* phi_u per the ordered support: phi_u(x_i) = u . omega_i. */
inline BooleanFunction sequence_profile_column(const WalshSupport& sup,
                                               BitVector u) {
  if (u.n != sup.n) throw PreconditionError("profile point arity mismatch");
  int m = sup.n - sup.s;
  BooleanFunction phi(m);
  for (std::uint32_t i = 0; i < sup.points.size(); ++i)
    if (dot(u, sup.points[i])) phi.set(i, 1);
  return phi;
}

/* d_H(g, phi) = 2^{m-1} +- 2^{m/2-1}, i.e. |chi_g . chi_phi| = 2^{m/2}. */
inline bool bent_distance_ok(const BooleanFunction& g,
                             const BooleanFunction& phi) {
  if (g.n() != phi.n())
    throw PreconditionError("bent distance: arity mismatch");
  if (g.n() % 2) throw PreconditionError("bent distance undefined for odd m");
  std::int64_t corr =
      (std::int64_t(1) << g.n()) - 2 * std::int64_t(g.hamming_distance(phi));
  std::int64_t target = std::int64_t(1) << (g.n() / 2);
  return corr == target || corr == -target;
}

/* Dual of a plateaued function, read through an ordered support. */
struct DualFunction {
  BooleanFunction base;  // on n-s variables
  WalshSupport support;
};

inline DualFunction extract_dual(const BooleanFunction& f,
                                 const WalshSupport& sup) {
  WalshSpectrum w = wht(f);
  auto prof = plateaued_profile(w);
  if (!prof) throw PreconditionError("extract_dual: function is not plateaued");
  if (sup.n != f.n() || prof->s != sup.s)
    throw PreconditionError("extract_dual: support shape mismatch");
  for (BitVector p : sup.points)
    if (w.values[p.bits] == 0)
      throw PreconditionError("extract_dual: support mismatch at point " +
                              std::to_string(p.bits));
  if (sup.points.size() != (std::size_t(1) << (f.n() - prof->s)))
    throw PreconditionError("extract_dual: support size mismatch");
  BooleanFunction base(f.n() - prof->s);
  for (std::uint32_t i = 0; i < sup.points.size(); ++i)
    if (w.values[sup.points[i].bits] < 0) base.set(i, 1);
  return DualFunction{std::move(base), sup};
}

}  // namespace plateau
