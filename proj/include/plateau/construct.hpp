#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anf.hpp"
#include "bits.hpp"
#include "boolfn.hpp"
#include "classify.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "spectrum.hpp"
#include "support.hpp"

namespace plateau {

/* A spectrum prescription: amplitude * (-1)^{dual(x_i)} at omega_i, zero
   off the support. */
struct SpectralSpec {
  WalshSupport support;
  BooleanFunction dual;  // on n-s variables
};

struct ProfileDistanceCheck {
  bool ok = true;
  BitVector witness;   // first u with d_H(g, phi_u) off bent distance
  long distance = 0;
};

/* Scans every u in F2^n; agrees point-for-point with the inverse-transform
   gate in build_from_spectrum. */
inline ProfileDistanceCheck bent_distance_to_profile(const WalshSupport& sup,
                                                     const BooleanFunction& g) {
  int m = sup.n - sup.s;
  if (g.n() != m)
    throw PreconditionError("dual arity does not match the support");
  if (m % 2) throw PreconditionError("bent distance needs n-s even");
  const std::int64_t target = std::int64_t(1) << (m / 2);
  for (std::uint32_t u = 0; u < (1u << sup.n); ++u) {
    BooleanFunction phi = sequence_profile_column(sup, BitVector(sup.n, u));
    std::int64_t corr = (std::int64_t(1) << m) -
                        2 * std::int64_t(g.hamming_distance(phi));
    if (corr != target && corr != -target)
      return {false, BitVector(sup.n, u),
              static_cast<long>(g.hamming_distance(phi))};
  }
  return {true, BitVector(sup.n, 0), 0};
}

/* Theorem gate: succeeds exactly when the dual is at bent distance to the
   sequence profile; the thrown witness is the first violating point. */
inline BooleanFunction build_from_spectrum(const SpectralSpec& spec) {
  const WalshSupport& sup = spec.support;
  int m = sup.n - sup.s;
  if (spec.dual.n() != m)
    throw PreconditionError("dual arity does not match the support");
  if (sup.points.size() != (std::size_t(1) << m))
    throw PreconditionError("support size is not 2^{n-s}");
  WalshSpectrum w;
  w.n = sup.n;
  w.values.assign(std::size_t(1) << sup.n, 0);
  const std::int32_t amp = std::int32_t(1) << ((sup.n + sup.s) / 2);
  for (std::uint32_t i = 0; i < sup.points.size(); ++i) {
    std::int32_t& slot = w.values[sup.points[i].bits];
    if (slot != 0) throw PreconditionError("support is a multiset");
    slot = spec.dual.get(i) ? -amp : amp;
  }
  try {
    return inverse_wht(w);
  } catch (const NotBooleanSpectrum& e) {
    BooleanFunction phi =
        sequence_profile_column(sup, BitVector(sup.n, e.witness));
    long dist = static_cast<long>(spec.dual.hamming_distance(phi));
    throw NotPlateaued(
        e.witness, dist,
        "spectrum is not plateaued: dual is not at bent distance to the "
        "profile column at u=" +
            std::to_string(e.witness) + " (d_H = " + std::to_string(dist) +
            ")");
  }
}

/* g(x, y) = x . psi(y) + t(y); x the first k variables, y the last k. */
inline BooleanFunction mm_bent(const std::vector<std::uint32_t>& psi,
                               const BooleanFunction& t) {
  int k = t.n();
  if (psi.size() != (std::size_t(1) << k))
    throw PreconditionError("permutation table size is not 2^k");
  std::vector<std::uint8_t> seen(psi.size(), 0);
  for (std::uint32_t img : psi) {
    if (img >= psi.size() || seen[img])
      throw PreconditionError("psi is not a permutation");
    seen[img] = 1;
  }
  check_var_count(2 * k);
  BooleanFunction g(2 * k);
  for (std::uint32_t x = 0; x < psi.size(); ++x)
    for (std::uint32_t y = 0; y < psi.size(); ++y) {
      int v = parity(x & psi[y]) ^ t.get(y);
      if (v) g.set((x << k) | y, 1);
    }
  return g;
}

/* f^{(i)}(y, x) = phi_i(y) . x + g_i(y) on k + s variables, y the first k.
   Disjoint images E_i give disjoint spectra; a non-affine E_i makes the
   member nontrivial.  The plateau order is 2s - (k+s) = s - k. */
inline std::vector<BooleanFunction> mm_plateaued_family(
    int k, int s, const std::vector<std::vector<std::uint32_t>>& phis,
    const std::vector<BooleanFunction>& gs) {
  if (s <= k) throw PreconditionError("mm family needs s > k");
  check_var_count(k + s);
  if (phis.empty() || phis.size() != gs.size())
    throw PreconditionError("one g per phi required");
  std::vector<std::uint8_t> used(std::size_t(1) << s, 0);
  for (const auto& phi : phis) {
    if (phi.size() != (std::size_t(1) << k))
      throw PreconditionError("phi table size is not 2^k");
    for (std::uint32_t img : phi) {
      if (img >= (1u << s)) throw PreconditionError("phi image out of range");
      if (used[img])
        throw PreconditionError("phi images overlap at " + std::to_string(img));
      used[img] = 1;
    }
  }
  std::vector<BooleanFunction> members;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    if (gs[i].n() != k) throw PreconditionError("g_i arity mismatch");
    BooleanFunction f(k + s);
    for (std::uint32_t y = 0; y < (1u << k); ++y)
      for (std::uint32_t x = 0; x < (1u << s); ++x) {
        int v = parity(phis[i][y] & x) ^ gs[i].get(y);
        if (v) f.set((y << s) | x, 1);
      }
    members.push_back(std::move(f));
  }
  return members;
}

/* S_f = (c + EM) wr T_{t_1} wr ... wr T_{t_s} with E = F2^{n-s}; the t_i
   depend on y only (second half of the first block). */
inline WalshSupport thm41_support(int half, BitVector c, const BinaryMatrix& m,
                                  const std::vector<BooleanFunction>& t_cols) {
  int block = 2 * half;
  int s = static_cast<int>(t_cols.size());
  if (s < 1) throw PreconditionError("at least one nonlinear column required");
  check_var_count(block + s);
  if (c.n != block || m.rows != block || m.cols != block)
    throw PreconditionError("c/M must live on n-s variables");
  if (!is_invertible(m)) throw PreconditionError("M is singular");
  for (const auto& t : t_cols)
    if (t.n() != half)
      throw PreconditionError("column functions must depend on y only");
  WalshSupport sup;
  sup.n = block + s;
  sup.s = s;
  const std::uint32_t ymask = (1u << half) - 1;
  sup.points.reserve(std::size_t(1) << block);
  for (std::uint32_t x = 0; x < (1u << block); ++x) {
    std::uint32_t first = c.bits ^ mul_row(BitVector(block, x), m).bits;
    std::uint32_t p = first;
    std::uint32_t y = x & ymask;
    for (const auto& t : t_cols) p = (p << 1) | t.get(y);
    sup.points.emplace_back(sup.n, p);
  }
  return sup;
}

inline BooleanFunction construct_thm41(
    const std::vector<std::uint32_t>& psi, const BooleanFunction& t,
    BitVector c, const BinaryMatrix& m,
    const std::vector<BooleanFunction>& t_cols) {
  int half = t.n();
  if (psi.size() != (std::size_t(1) << half))
    throw PreconditionError("psi/t size mismatch");
  WalshSupport sup = thm41_support(half, c, m, t_cols);
  BooleanFunction f = build_from_spectrum({sup, mm_bent(psi, t)});
  auto prof = plateaued_profile(f);
  if (!prof || prof->s != sup.s)
    throw Error("internal: theorem construction missed its plateau order");
  return f;
}

/* 0/1 indicator of span(basis) inside F2^m. */
inline BooleanFunction subspace_indicator(const std::vector<BitVector>& basis,
                                          int m) {
  std::vector<std::uint32_t> reduced;
  for (BitVector b : basis) {
    if (b.n != m) throw PreconditionError("basis vector arity mismatch");
    std::uint32_t r = reduce_against(b.bits, reduced);
    if (!r) throw PreconditionError("dependent basis");
    reduced.push_back(r);
  }
  std::vector<std::uint32_t> span{0};
  for (BitVector b : basis) {
    std::size_t cur = span.size();
    for (std::size_t i = 0; i < cur; ++i) span.push_back(span[i] ^ b.bits);
  }
  BooleanFunction ind(m);
  for (std::uint32_t p : span) ind.set(p, 1);
  return ind;
}

namespace detail {

inline std::vector<std::uint32_t> perp_set(const std::vector<BitVector>& basis,
                                           int m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 0; w < (1u << m); ++w) {
    bool ok = true;
    for (BitVector b : basis)
      if (parity(w & b.bits)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(w);
  }
  return out;
}

}  // namespace detail

enum class Thm42Variant { C, D };

struct Thm42Params {
  Thm42Variant variant = Thm42Variant::D;
  std::vector<std::uint32_t> psi;     // permutation of F2^{m/2}
  std::vector<BitVector> e1, e2;      // variant D subspace bases (of F2^{m/2})
  std::vector<BitVector> l;           // variant C subspace basis (of F2^{m/2})
  BitVector c;                        // on m variables
  BinaryMatrix m_mat;                 // m x m invertible
};

/* Semi-bent construction over a dual g(x,y) = x.psi(y) and the indicator
   column mu; the class conditions are checked by enumeration before any
   transform runs. */
inline BooleanFunction construct_thm42(const Thm42Params& p) {
  int half = 0;
  while ((std::size_t(1) << half) < p.psi.size()) ++half;
  if (p.psi.size() != (std::size_t(1) << half))
    throw PreconditionError("psi table size is not a power of two");
  int m = 2 * half;
  check_var_count(m + 1);
  BooleanFunction g = mm_bent(p.psi, BooleanFunction(half));

  BooleanFunction mu(m);
  if (p.variant == Thm42Variant::D) {
    BooleanFunction ind1 = subspace_indicator(p.e1, half);
    BooleanFunction ind2 = subspace_indicator(p.e2, half);
    // psi(E_2) must equal E_1^perp
    std::vector<std::uint32_t> image;
    for (std::uint32_t y = 0; y < (1u << half); ++y)
      if (ind2.get(y)) image.push_back(p.psi[y]);
    std::sort(image.begin(), image.end());
    std::vector<std::uint32_t> perp = detail::perp_set(p.e1, half);
    if (image != perp)
      throw PreconditionError("class condition failed: psi(E2) != E1^perp");
    for (std::uint32_t x = 0; x < (1u << half); ++x)
      for (std::uint32_t y = 0; y < (1u << half); ++y)
        if (ind1.get(x) && ind2.get(y)) mu.set((x << half) | y, 1);
  } else {
    BooleanFunction indl = subspace_indicator(p.l, half);
    std::vector<std::uint32_t> perp = detail::perp_set(p.l, half);
    std::vector<std::uint32_t> inv(p.psi.size());
    for (std::uint32_t y = 0; y < p.psi.size(); ++y) inv[p.psi[y]] = y;
    for (std::uint32_t v = 0; v < (1u << half); ++v) {
      std::vector<BitVector> pre;
      for (std::uint32_t w : perp) pre.emplace_back(half, inv[v ^ w]);
      if (!is_affine_subspace(pre))
        throw PreconditionError(
            "class condition failed: psi^{-1}(v + L^perp) is not affine at "
            "v=" +
            std::to_string(v));
    }
    for (std::uint32_t x = 0; x < (1u << half); ++x)
      if (indl.get(x))
        for (std::uint32_t y = 0; y < (1u << half); ++y)
          mu.set((x << half) | y, 1);
  }

  if (p.c.n != m || p.m_mat.rows != m || p.m_mat.cols != m)
    throw PreconditionError("c/M must live on n-s variables");
  if (!is_invertible(p.m_mat)) throw PreconditionError("M is singular");
  WalshSupport sup;
  sup.n = m + 1;
  sup.s = 1;
  sup.points.reserve(std::size_t(1) << m);
  for (std::uint32_t x = 0; x < (1u << m); ++x) {
    std::uint32_t first = p.c.bits ^ mul_row(BitVector(m, x), p.m_mat).bits;
    sup.points.emplace_back(m + 1, (first << 1) | mu.get(x));
  }
  BooleanFunction f = build_from_spectrum({sup, g});
  auto prof = plateaued_profile(f);
  if (!prof || prof->s != 1)
    throw Error("internal: theorem construction missed its plateau order");
  return f;
}

/* H = (h_1, ..., h_lambda): every nonzero component combination bent. */
struct VectorialBent {
  int m = 0;
  std::vector<BooleanFunction> components;
};

inline void verify_vectorial_bent(const VectorialBent& h) {
  if (h.components.empty()) throw PreconditionError("no components");
  for (const auto& c : h.components)
    if (c.n() != h.m) throw PreconditionError("component arity mismatch");
  for (std::uint32_t mask = 1; mask < (1u << h.components.size()); ++mask) {
    BooleanFunction combo(h.m);
    for (std::size_t i = 0; i < h.components.size(); ++i)
      if ((mask >> i) & 1u) combo ^= h.components[i];
    if (!is_bent(combo))
      throw PreconditionError("component combination " + std::to_string(mask) +
                              " is not bent");
  }
}

inline BooleanFunction construct_thm43(const VectorialBent& h, int dual_index,
                                       const std::vector<BooleanFunction>& ts,
                                       const std::vector<int>& cols,
                                       BitVector c, const BinaryMatrix& m_mat) {
  int lambda = static_cast<int>(h.components.size());
  if (dual_index < 1 || dual_index > lambda)
    throw PreconditionError("dual index out of range");
  if (static_cast<int>(cols.size()) > lambda - 1)
    throw PreconditionError("r must be at most lambda - 1");
  std::vector<int> sorted_cols = cols;
  std::sort(sorted_cols.begin(), sorted_cols.end());
  if (std::adjacent_find(sorted_cols.begin(), sorted_cols.end()) !=
      sorted_cols.end())
    throw PreconditionError("column components must be distinct");
  for (int idx : cols) {
    if (idx < 1 || idx > lambda)
      throw PreconditionError("column component index out of range");
    if (idx == dual_index)
      throw PreconditionError("column component equals the dual component");
  }
  int s = static_cast<int>(ts.size() + cols.size());
  if (s < 1) throw PreconditionError("s = m + r must be positive");
  verify_vectorial_bent(h);
  for (const auto& t : ts) {
    if (t.n() != h.m) throw PreconditionError("t_i arity mismatch");
    if (degree(t) > 1) throw PreconditionError("t_i must be affine");
  }
  check_var_count(h.m + s);
  if (c.n != h.m || m_mat.rows != h.m || m_mat.cols != h.m)
    throw PreconditionError("c/M must live on n-s variables");
  if (!is_invertible(m_mat)) throw PreconditionError("M is singular");

  WalshSupport sup;
  sup.n = h.m + s;
  sup.s = s;
  sup.points.reserve(std::size_t(1) << h.m);
  for (std::uint32_t x = 0; x < (1u << h.m); ++x) {
    std::uint32_t p = c.bits ^ mul_row(BitVector(h.m, x), m_mat).bits;
    for (const auto& t : ts) p = (p << 1) | t.get(x);
    for (int idx : cols) p = (p << 1) | h.components[idx - 1].get(x);
    sup.points.emplace_back(sup.n, p);
  }
  BooleanFunction f =
      build_from_spectrum({sup, h.components[dual_index - 1]});
  auto prof = plateaued_profile(f);
  if (!prof || prof->s != s)
    throw Error("internal: theorem construction missed its plateau order");
  return f;
}

/* Q = the 2^s vectors supported on the last s coordinates, lex order. */
inline std::vector<BitVector> q_partition(int n, int s) {
  if (s < 1 || s >= n) throw PreconditionError("q_partition needs 1 <= s < n");
  std::vector<BitVector> q;
  q.reserve(std::size_t(1) << s);
  for (std::uint32_t i = 0; i < (1u << s); ++i) q.emplace_back(n, i);
  return q;
}

struct PlateauedFamily {
  int n = 0, s = 0;
  std::vector<BooleanFunction> members;
  std::vector<BitVector> shifts;
  WalshSupport base_support;
};

/* Members on the shifted supports q_i + S_f.  The shifts must partition
   F2^n, which holds whenever the base support has the last s coordinates
   given as functions of the first n-s block. */
inline PlateauedFamily disjoint_family(const WalshSupport& base,
                                       const std::vector<BooleanFunction>& duals) {
  int n = base.n, s = base.s;
  std::vector<BitVector> q = q_partition(n, s);
  if (duals.size() != q.size())
    throw PreconditionError("need exactly 2^s duals");
  std::vector<std::uint8_t> covered(std::size_t(1) << n, 0);
  for (BitVector qi : q)
    for (BitVector p : base.points) {
      std::uint32_t w = p.bits ^ qi.bits;
      if (covered[w])
        throw PreconditionError(
            "shifted supports do not partition the space (overlap at " +
            std::to_string(w) + ")");
      covered[w] = 1;
    }

  PlateauedFamily fam;
  fam.n = n;
  fam.s = s;
  fam.base_support = base;
  fam.shifts = q;
  for (std::size_t i = 0; i < q.size(); ++i) {
    WalshSupport shifted = base;
    for (auto& p : shifted.points) p = p + q[i];
    shifted.decomp.reset();
    try {
      fam.members.push_back(build_from_spectrum({shifted, duals[i]}));
    } catch (const NotPlateaued& e) {
      throw NotPlateaued(e.witness, e.distance,
                         "family member " + std::to_string(i) + ": " +
                             e.what());
    }
  }
  return fam;
}

/* Truth-table concatenation over V = {0_s} x F2^n: member i fills the
   block of indices with high bits i.  The result must pass the bent gate. */
inline BooleanFunction concat_bent(const PlateauedFamily& fam) {
  if (fam.members.size() != (std::size_t(1) << fam.s))
    throw PreconditionError("family must have 2^s members");
  for (const auto& f : fam.members)
    if (f.n() != fam.n) throw PreconditionError("member arity mismatch");
  if (fam.s == 0) {
    if (!is_bent(fam.members.front()))
      throw PreconditionError("single member is not bent");
    return fam.members.front();
  }
  int m = fam.n + fam.s;
  check_var_count(m);
  BooleanFunction out(m);
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::uint32_t x = 0; x < (1u << fam.n); ++x)
      if (fam.members[i].get(x))
        out.set(static_cast<std::uint32_t>(i << fam.n) | x, 1);
  WalshSpectrum w = wht(out);
  const std::int32_t amp = std::int32_t(1) << (m / 2);
  for (std::uint32_t u = 0; u < w.values.size(); ++u)
    if (w.values[u] != amp && w.values[u] != -amp)
      throw PreconditionError("concatenation is not bent (witness u=" +
                              std::to_string(u) + ", W=" +
                              std::to_string(w.values[u]) + ")");
  return out;
}

struct DualSearchResult {
  std::uint64_t count = 0;
  bool exhaustive = true;
  std::vector<BooleanFunction> duals;  // filled when listing is requested
};

/* Counts functions of plateaued-dual weight at bent distance to the whole
   sequence profile.  Exhaustive for n-s <= 4 (2^16 candidates); larger
   blocks are sampled with a seeded budget. */
inline DualSearchResult search_valid_duals(const WalshSupport& sup,
                                           bool keep_list = false,
                                           std::uint64_t sample_budget = 0,
                                           std::uint64_t seed = 0) {
  int m = sup.n - sup.s;
  if (m < 2 || m % 2) throw PreconditionError("dual search needs n-s even and positive");
  DualSearchResult res;
  const std::uint64_t w_hi = (1ull << (m - 1)) + (1ull << (m / 2 - 1));
  const std::uint64_t w_lo = (1ull << (m - 1)) - (1ull << (m / 2 - 1));
  if (m <= 4) {
    const std::uint32_t rows = 1u << m;
    std::vector<std::uint32_t> phi_words;
    phi_words.reserve(std::size_t(1) << sup.n);
    for (std::uint32_t u = 0; u < (1u << sup.n); ++u) {
      std::uint32_t w = 0;
      for (std::uint32_t i = 0; i < rows; ++i)
        if (parity(u & sup.points[i].bits)) w |= 1u << i;
      phi_words.push_back(w);
    }
    const int half = 1 << (m / 2 - 1);
    const int mid = 1 << (m - 1);
    for (std::uint32_t cand = 0; cand < (1u << rows); ++cand) {
      int wt = std::popcount(cand);
      if (wt != mid - half && wt != mid + half) continue;
      bool ok = true;
      for (std::uint32_t pw : phi_words) {
        int d = std::popcount(cand ^ pw);
        if (d != mid - half && d != mid + half) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      ++res.count;
      if (keep_list) {
        BooleanFunction g(m);
        for (std::uint32_t i = 0; i < rows; ++i)
          if ((cand >> i) & 1u) g.set(i, 1);
        res.duals.push_back(std::move(g));
      }
    }
    return res;
  }
  if (sample_budget == 0)
    throw PreconditionError(
        "exhaustive dual search infeasible for n-s > 4; provide a sampling "
        "budget");
  res.exhaustive = false;
  std::mt19937_64 rng(seed);
  for (std::uint64_t it = 0; it < sample_budget; ++it) {
    BooleanFunction g = random_function(m, rng);
    std::uint64_t wt = g.weight();
    if (wt != w_hi && wt != w_lo) continue;
    if (bent_distance_to_profile(sup, g).ok) {
      ++res.count;
      if (keep_list) res.duals.push_back(std::move(g));
    }
  }
  return res;
}

}  // namespace plateau
