#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "anf.hpp"
#include "bits.hpp"
#include "boolfn.hpp"
#include "errors.hpp"
#include "spectrum.hpp"

namespace plateau {

/* sigma(x) = (sigma_1(x), ..., sigma_n(x)); not necessarily bijective. */
struct VectorialMap {
  int n = 0;
  std::vector<BooleanFunction> coords;  // coordinate i+1 on n variables

  static VectorialMap identity(int n) {
    VectorialMap p;
    p.n = n;
    for (int i = 1; i <= n; ++i)
      p.coords.push_back(linear_function(BitVector(n, 1u << (n - i))));
    return p;
  }
};

inline std::uint32_t map_image(const VectorialMap& p, std::uint32_t x) {
  std::uint32_t y = 0;
  for (const auto& c : p.coords) y = (y << 1) | c.get(x);
  return y;
}

inline std::vector<std::uint32_t> map_table(const VectorialMap& p) {
  std::vector<std::uint32_t> t(std::size_t(1) << p.n);
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = map_image(p, x);
  return t;
}

inline VectorialMap map_from_table(const std::vector<std::uint32_t>& table,
                                   int n) {
  if (table.size() != (std::size_t(1) << n))
    throw PreconditionError("table size is not 2^n");
  VectorialMap p;
  p.n = n;
  for (int i = 1; i <= n; ++i) {
    BooleanFunction c(n);
    for (std::uint32_t x = 0; x < table.size(); ++x)
      if ((table[x] >> (n - i)) & 1u) c.set(x, 1);
    p.coords.push_back(std::move(c));
  }
  return p;
}

inline bool is_bijective(const VectorialMap& p) {
  std::vector<std::uint8_t> seen(std::size_t(1) << p.n, 0);
  for (std::uint32_t x = 0; x < (1u << p.n); ++x) {
    std::uint32_t y = map_image(p, x);
    if (seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

inline VectorialMap inverse_permutation(const VectorialMap& p) {
  std::vector<std::uint32_t> table = map_table(p);
  std::vector<std::uint32_t> inv(table.size());
  std::vector<std::uint8_t> seen(table.size(), 0);
  for (std::uint32_t x = 0; x < table.size(); ++x) {
    if (seen[table[x]]) throw PreconditionError("map is not a permutation");
    seen[table[x]] = 1;
    inv[table[x]] = x;
  }
  return map_from_table(inv, p.n);
}

/* f(P(x)) pointwise; P need not be bijective. */
inline BooleanFunction compose(const BooleanFunction& f,
                               const VectorialMap& p) {
  if (p.n != f.n() || static_cast<int>(p.coords.size()) != f.n())
    throw PreconditionError("compose: dimension mismatch");
  BooleanFunction h(f.n());
  for (std::uint32_t x = 0; x < h.size(); ++x)
    if (f.get(map_image(p, x))) h.set(x, 1);
  return h;
}

/* f = x_i f1 + x_j f2 + x_i x_j alpha + g with all four parts free of the
   pivot variables; alpha must be affine. */
struct Form27Decomposition {
  int n = 0;
  int i = 1, j = 2;                      // pivot variables, 1-based
  BooleanFunction f1, f2, alpha, g;      // on n-2 variables
};

struct AlphaNotAffine : PreconditionError {
  AlphaNotAffine(int deg, const std::string& what)
      : PreconditionError(what), alpha_degree(deg) {}
  int alpha_degree;
};

namespace detail {

/* Index of the full-space point with x_i = a, x_j = b and the remaining
   variables taken from z in order. */
inline std::uint32_t embed_pivots(std::uint32_t z, int n, int i, int j, int a,
                                  int b) {
  std::uint32_t x = 0;
  int zbit = n - 3;  // next unread coordinate of z, MSB first
  for (int var = 1; var <= n; ++var) {
    int v;
    if (var == i)
      v = a;
    else if (var == j)
      v = b;
    else
      v = (z >> zbit--) & 1;
    x = (x << 1) | static_cast<std::uint32_t>(v);
  }
  return x;
}

}  // namespace detail

inline Form27Decomposition decompose_form27(const BooleanFunction& f, int i,
                                            int j) {
  int n = f.n();
  if (n < 3) throw PreconditionError("decomposition needs n >= 3");
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw PreconditionError("invalid pivot variables");
  Form27Decomposition d;
  d.n = n;
  d.i = i;
  d.j = j;
  BooleanFunction r00(n - 2), r10(n - 2), r01(n - 2), r11(n - 2);
  for (std::uint32_t z = 0; z < (1u << (n - 2)); ++z) {
    if (f.get(detail::embed_pivots(z, n, i, j, 0, 0))) r00.set(z, 1);
    if (f.get(detail::embed_pivots(z, n, i, j, 1, 0))) r10.set(z, 1);
    if (f.get(detail::embed_pivots(z, n, i, j, 0, 1))) r01.set(z, 1);
    if (f.get(detail::embed_pivots(z, n, i, j, 1, 1))) r11.set(z, 1);
  }
  d.g = r00;
  d.f1 = r10 ^ r00;
  d.f2 = r01 ^ r00;
  d.alpha = r11 ^ d.f1 ^ d.f2 ^ r00;
  if (int deg = degree(d.alpha); deg > 1)
    throw AlphaNotAffine(deg, "alpha has degree " + std::to_string(deg) +
                                  ", expected affine");
  return d;
}

inline BooleanFunction reassemble(const Form27Decomposition& d) {
  BooleanFunction f(d.n);
  for (std::uint32_t z = 0; z < (1u << (d.n - 2)); ++z) {
    int f1 = d.f1.get(z), f2 = d.f2.get(z), al = d.alpha.get(z),
        gv = d.g.get(z);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        int v = (a & f1) ^ (b & f2) ^ (a & b & al) ^ gv;
        if (v) f.set(detail::embed_pivots(z, d.n, d.i, d.j, a, b), 1);
      }
  }
  return f;
}

namespace detail {

/* Build the pivot-acting map with the given coordinate formulas; the other
   coordinates stay put. */
template <typename Coord1, typename Coord2>
VectorialMap pivot_map(const Form27Decomposition& d, Coord1&& c1, Coord2&& c2) {
  VectorialMap p = VectorialMap::identity(d.n);
  BooleanFunction s1(d.n), s2(d.n);
  for (std::uint32_t z = 0; z < (1u << (d.n - 2)); ++z) {
    int f1 = d.f1.get(z), f2 = d.f2.get(z), al = d.alpha.get(z);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        std::uint32_t x = embed_pivots(z, d.n, d.i, d.j, a, b);
        if (c1(a, b, f1, f2, al)) s1.set(x, 1);
        if (c2(a, b, f1, f2, al)) s2.set(x, 1);
      }
  }
  p.coords[d.i - 1] = std::move(s1);
  p.coords[d.j - 1] = std::move(s2);
  return p;
}

}  // namespace detail

/* sigma: (x_i, x_j) -> (f1, f2) + (x_i, x_j) [[1, alpha+1], [alpha, 1]]. */
inline VectorialMap sigma_permutation(const Form27Decomposition& d) {
  return detail::pivot_map(
      d,
      [](int a, int b, int f1, int, int al) { return f1 ^ a ^ (b & al); },
      [](int a, int b, int, int f2, int al) {
        return f2 ^ (a & (al ^ 1)) ^ b;
      });
}

/* tau = sigma^{-1}: the affine part is (f1, f2) B with the same involutory
   matrix B, so tau_i = f1 + alpha f2 + x_i + x_j alpha and
   tau_j = (alpha+1) f1 + f2 + x_i (alpha+1) + x_j. */
inline VectorialMap tau_permutation(const Form27Decomposition& d) {
  return detail::pivot_map(
      d,
      [](int a, int b, int f1, int f2, int al) {
        return f1 ^ (al & f2) ^ a ^ (b & al);
      },
      [](int a, int b, int f1, int f2, int al) {
        return ((al ^ 1) & f1) ^ f2 ^ (a & (al ^ 1)) ^ b;
      });
}

/* F = (alpha+1) f1 f2 + (x_i+1) f1 + (x_i+x_j+alpha+1) f2
       + alpha (x_i+1) x_j + g; equals f o sigma^{-1} pointwise. */
inline BooleanFunction hou_langevin_transform(const Form27Decomposition& d) {
  BooleanFunction src = reassemble(d);
  if (!plateaued_profile(src) && !is_bent(src))
    throw PreconditionError(
        "source of the transform is neither plateaued nor bent");
  BooleanFunction out(d.n);
  for (std::uint32_t z = 0; z < (1u << (d.n - 2)); ++z) {
    int f1 = d.f1.get(z), f2 = d.f2.get(z), al = d.alpha.get(z),
        gv = d.g.get(z);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        int v = ((al ^ 1) & f1 & f2) ^ ((a ^ 1) & f1) ^
                ((a ^ b ^ al ^ 1) & f2) ^ (al & (a ^ 1) & b) ^ gv;
        if (v) out.set(detail::embed_pivots(z, d.n, d.i, d.j, a, b), 1);
      }
  }
  return out;
}

/* lp(f) membership: W_{f+g} stays in {0, +-2^{(n+s)/2}}. */
inline bool lp_membership(const BooleanFunction& f, const BooleanFunction& g) {
  auto prof = plateaued_profile(f);
  if (!prof) throw PreconditionError("lp(f) requires a plateaued f");
  if (g.n() != f.n()) throw PreconditionError("arity mismatch");
  WalshSpectrum w = wht(f ^ g);
  const std::int32_t amp = static_cast<std::int32_t>(prof->amplitude);
  for (std::int32_t v : w.values)
    if (v != 0 && v != amp && v != -amp) return false;
  return true;
}

/* Checks every linear combination of sigma's coordinate functions; by the
   composition criterion this decides whether f o sigma^{-1} keeps the
   plateau order. */
inline bool span_subset_lp(const BooleanFunction& f, const VectorialMap& p) {
  auto prof = plateaued_profile(f);
  if (!prof) throw PreconditionError("lp(f) requires a plateaued f");
  if (p.n != f.n()) throw PreconditionError("arity mismatch");
  const std::uint32_t size = f.size();
  std::vector<std::uint32_t> images = map_table(p);
  const std::int32_t amp = static_cast<std::int32_t>(prof->amplitude);
  std::vector<std::int32_t> buf(size);
  for (std::uint32_t v = 0; v < size; ++v) {
    for (std::uint32_t x = 0; x < size; ++x)
      buf[x] = (f.get(x) ^ parity(v & images[x])) ? -1 : 1;
    detail::butterfly(buf);
    for (std::int32_t val : buf)
      if (val != 0 && val != amp && val != -amp) return false;
  }
  return true;
}

}  // namespace plateau
