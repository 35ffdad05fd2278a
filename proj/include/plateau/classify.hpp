#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anf.hpp"
#include "bits.hpp"
#include "boolfn.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "spectrum.hpp"
#include "support.hpp"

namespace plateau {

struct AffineSpaceInfo {
  BitVector offset;
  std::vector<BitVector> basis;
};

/* A set is an affine subspace iff S + v is closed under addition for any
   v in S; checked as |S| = 2^rank with every element inside the span. */
inline std::optional<AffineSpaceInfo> is_affine_subspace(
    const std::vector<BitVector>& s) {
  if (s.empty()) throw PreconditionError("empty set");
  BitVector v = *std::min_element(s.begin(), s.end());
  std::vector<std::uint32_t> basis;
  for (BitVector p : s) {
    std::uint32_t r = reduce_against(p.bits ^ v.bits, basis);
    if (r) basis.push_back(r);
  }
  if (s.size() != (std::size_t(1) << basis.size())) return std::nullopt;
  // distinct elements, all in the span, count = span size => equality
  std::vector<std::uint32_t> seen;
  seen.reserve(s.size());
  for (BitVector p : s) seen.push_back(p.bits);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    return std::nullopt;
  AffineSpaceInfo info;
  info.offset = v;
  for (std::uint32_t b : basis) info.basis.emplace_back(v.n, b);
  return info;
}

/* Rank of S + v for v in S; independent of the choice of v. */
inline int support_rank(const std::vector<BitVector>& s) {
  if (s.empty()) throw PreconditionError("support_rank of empty set");
  std::uint32_t v = s.front().bits;
  std::vector<std::uint32_t> e;
  e.reserve(s.size());
  for (BitVector p : s) e.push_back(p.bits ^ v);
  return rank_of(e);
}

enum class PlateauKind { NotPlateaued, Trivial, Nontrivial };

struct PlateauClass {
  PlateauKind kind = PlateauKind::NotPlateaued;
  int s = 0;

  friend bool operator==(const PlateauClass& a, const PlateauClass& b) {
    return a.kind == b.kind && a.s == b.s;
  }
};

inline PlateauClass classify_plateaued(const BooleanFunction& f) {
  WalshSpectrum w = wht(f);
  auto prof = plateaued_profile(w);
  if (!prof) return {PlateauKind::NotPlateaued, 0};
  auto aff = is_affine_subspace(walsh_support(w));
  return {aff ? PlateauKind::Trivial : PlateauKind::Nontrivial, prof->s};
}

/* #S_f * #R = 2^n (R = nonzero autocorrelation points). */
inline bool is_partially_bent(const BooleanFunction& f) {
  WalshSpectrum w = wht(f);
  std::uint64_t support_size = 0;
  for (std::int32_t v : w.values)
    if (v != 0) ++support_size;
  AutocorrelationSpectrum ac = autocorrelation(f);
  std::uint64_t r = 0;
  for (std::int32_t v : ac.values)
    if (v != 0) ++r;
  return support_size * r == (std::uint64_t(1) << f.n());
}

struct LinearStructureSpace {
  int n = 0;
  std::vector<BitVector> basis;
  int dim = 0;
};

/* Lambda = {a : |Delta_f(a)| = 2^n}, always a linear subspace. */
inline LinearStructureSpace linear_structures(const BooleanFunction& f) {
  AutocorrelationSpectrum ac = autocorrelation(f);
  const std::int32_t full = std::int32_t(1) << f.n();
  LinearStructureSpace out;
  out.n = f.n();
  std::vector<std::uint32_t> basis;
  for (std::uint32_t a = 1; a < ac.values.size(); ++a)
    if (ac.values[a] == full || ac.values[a] == -full)
      if (std::uint32_t r = reduce_against(a, basis); r) basis.push_back(r);
  for (std::uint32_t b : basis) out.basis.emplace_back(f.n(), b);
  out.dim = static_cast<int>(basis.size());
  return out;
}

/* EA-invariant data.  The Walsh and autocorrelation multisets are taken on
   absolute values (signs flip under f -> f + 1); degrees <= 1 collapse to
   one class since all affine functions are EA-equivalent. */
struct EaFingerprint {
  int n = 0;
  int degree = 0;
  std::map<std::int64_t, std::uint32_t> walsh_abs;
  std::map<std::int64_t, std::uint32_t> autocorr_abs;
  int support_rank = 0;
  int lambda_dim = 0;
  PlateauClass plateau;
  bool partially_bent = false;

  friend bool operator==(const EaFingerprint& a, const EaFingerprint& b) {
    return a.n == b.n && a.degree == b.degree && a.walsh_abs == b.walsh_abs &&
           a.autocorr_abs == b.autocorr_abs &&
           a.support_rank == b.support_rank && a.lambda_dim == b.lambda_dim &&
           a.plateau == b.plateau && a.partially_bent == b.partially_bent;
  }
  friend bool operator!=(const EaFingerprint& a, const EaFingerprint& b) {
    return !(a == b);
  }
};

/* Names the first differing field, for inequivalence reports. */
inline std::string fingerprint_difference(const EaFingerprint& a,
                                          const EaFingerprint& b) {
  if (a.n != b.n) return "variable count";
  if (a.degree != b.degree) return "algebraic degree";
  if (a.plateau.s != b.plateau.s || a.walsh_abs != b.walsh_abs)
    return "Walsh value multiset";
  if (!(a.plateau == b.plateau)) return "trivial/nontrivial class";
  if (a.support_rank != b.support_rank) return "support rank";
  if (a.lambda_dim != b.lambda_dim) return "linear structure dimension";
  if (a.autocorr_abs != b.autocorr_abs) return "autocorrelation multiset";
  if (a.partially_bent != b.partially_bent) return "partially bent";
  return "";
}

inline EaFingerprint ea_fingerprint(const BooleanFunction& f) {
  EaFingerprint fp;
  fp.n = f.n();
  int d = degree(f);
  fp.degree = d <= 1 ? 1 : d;
  WalshSpectrum w = wht(f);
  for (std::int32_t v : w.values) ++fp.walsh_abs[v < 0 ? -std::int64_t(v) : v];
  AutocorrelationSpectrum ac = autocorrelation(f);
  for (std::int32_t v : ac.values)
    ++fp.autocorr_abs[v < 0 ? -std::int64_t(v) : v];
  auto sup = walsh_support(w);
  fp.support_rank = support_rank(sup);
  fp.lambda_dim = linear_structures(f).dim;
  auto prof = plateaued_profile(w);
  if (prof) {
    fp.plateau.s = prof->s;
    fp.plateau.kind = is_affine_subspace(sup) ? PlateauKind::Trivial
                                              : PlateauKind::Nontrivial;
  }
  fp.partially_bent = is_partially_bent(f);
  return fp;
}

/* Witness of S_h = c + S_f A^T. */
struct SupportRelation {
  BinaryMatrix a;
  BitVector c;
};

namespace detail {

/* Enumerates all linear parts of support relations between two equal-size
   sets.  For v = min(S_f) fixed, every relation corresponds to a choice of
   v2 in S_h and an injective linear map L with L(S_f + v) = S_h + v2; the
   callback receives B = A^T (so the point map is w -> c + wB) and c.
   Enumeration order is deterministic: v2 ascending, frame images in
   lexicographic DFS order.  Returns false when the budget ran out. */
class RelationSearch {
 public:
  RelationSearch(const std::vector<BitVector>& sf,
                 const std::vector<BitVector>& sh, std::uint64_t budget)
      : budget_(budget) {
    if (sf.empty() || sf.size() != sh.size())
      throw PreconditionError("support relation: size mismatch");
    n_ = sf.front().n;
    if (sh.front().n != n_)
      throw PreconditionError("support relation: arity mismatch");
    sf_ = sf;
    sh_ = sh;
    std::sort(sf_.begin(), sf_.end());
    std::sort(sh_.begin(), sh_.end());
    v_ = sf_.front().bits;
    for (BitVector p : sf_) ef_.push_back(p.bits ^ v_);

    // frame: greedy maximal independent subset, with coordinates of every
    // element of E_f in terms of it
    std::vector<std::uint32_t> basis, basis_coords;
    std::vector<std::uint32_t> elem_coords(ef_.size());
    for (std::size_t idx = 0; idx < ef_.size(); ++idx) {
      std::uint32_t r = ef_[idx], cm = 0;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::uint32_t hi = 1u << (31 - std::countl_zero(basis[b]));
        if (r & hi) {
          r ^= basis[b];
          cm ^= basis_coords[b];
        }
      }
      if (r) {
        int k = static_cast<int>(frame_.size());
        frame_.push_back(ef_[idx]);
        basis.push_back(r);
        basis_coords.push_back(cm | (1u << k));
        elem_coords[idx] = 1u << k;
      } else {
        elem_coords[idx] = cm;
      }
    }
    m_ = static_cast<int>(frame_.size());
    groups_.resize(m_);
    for (std::size_t idx = 0; idx < ef_.size(); ++idx) {
      std::uint32_t cm = elem_coords[idx];
      if (cm == 0) continue;  // the zero element, always maps to zero
      int level = 31 - std::countl_zero(cm);
      groups_[level].push_back(cm);
    }
  }

  int frame_rank() const { return m_; }

  /* callback(B, c) -> bool stop.  Returns true if the space was exhausted
     (callback never asked to stop); throws BudgetExceeded. */
  template <typename Callback>
  bool run(Callback&& cb) {
    if (support_rank(sf_) != support_rank(sh_)) return true;  // rank prunes all
    member_.assign(std::size_t(1) << n_, 0);
    for (BitVector p : sh_) {
      eh_.clear();
      std::uint32_t v2 = p.bits;
      for (BitVector q : sh_) {
        eh_.push_back(q.bits ^ v2);
        member_[q.bits ^ v2] = 1;
      }
      std::sort(eh_.begin(), eh_.end());
      bool stop = dfs(0, v2, cb);
      for (std::uint32_t e : eh_) member_[e] = 0;
      if (stop) return false;
    }
    return true;
  }

 private:
  template <typename Callback>
  bool dfs(int k, std::uint32_t v2, Callback&& cb) {
    if (k == m_) return emit(v2, cb);
    for (std::uint32_t w : eh_) {
      if (budget_ == 0) throw BudgetExceeded("support relation search budget");
      --budget_;
      std::uint32_t residue = reduce_against(w, wbasis_);
      if (residue == 0) continue;  // dependent (or zero)
      bool ok = true;
      for (std::uint32_t cm : groups_[k]) {
        std::uint32_t img = 0;
        for (int j = 0; j <= k; ++j)
          if (cm & (1u << j)) img ^= (j == k) ? w : images_[j];
        if (!member_[img]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      images_.push_back(w);
      wbasis_.push_back(residue);
      bool stop = dfs(k + 1, v2, cb);
      wbasis_.pop_back();
      images_.pop_back();
      if (stop) return true;
    }
    return false;
  }

  template <typename Callback>
  bool emit(std::uint32_t v2, Callback&& cb) {
    // complete frame -> basis of F2^n on both sides, then B = P^{-1} Q
    BinaryMatrix p_rows(n_, n_), q_rows(n_, n_);
    std::vector<std::uint32_t> pb, qb;
    int filled = 0;
    for (int k = 0; k < m_; ++k) {
      p_rows.row_bits[filled] = frame_[k];
      q_rows.row_bits[filled] = images_[k];
      pb.push_back(reduce_against(frame_[k], pb));
      qb.push_back(reduce_against(images_[k], qb));
      ++filled;
    }
    for (std::uint32_t cand = 1u << (n_ - 1); filled < n_ && cand; cand >>= 1) {
      if (reduce_against(cand, pb) == 0) continue;
      for (std::uint32_t img = 1u << (n_ - 1); img; img >>= 1) {
        if (reduce_against(img, qb) == 0) continue;
        p_rows.row_bits[filled] = cand;
        q_rows.row_bits[filled] = img;
        pb.push_back(reduce_against(cand, pb));
        qb.push_back(reduce_against(img, qb));
        ++filled;
        break;
      }
    }
    BinaryMatrix b = multiply(matrix_inverse(p_rows), q_rows);
    BitVector c(n_, v2 ^ mul_row(BitVector(n_, v_), b).bits);
    return cb(b, c);
  }

  int n_ = 0, m_ = 0;
  std::uint64_t budget_;
  std::uint32_t v_ = 0;
  std::vector<BitVector> sf_, sh_;
  std::vector<std::uint32_t> ef_, eh_;
  std::vector<std::uint32_t> frame_;
  std::vector<std::vector<std::uint32_t>> groups_;
  std::vector<std::uint32_t> images_, wbasis_;
  std::vector<std::uint8_t> member_;
};

/* phi_b words form a linear space spanned by the support's column
   functions; solving delta = phi_b (+1) is elimination with tracking. */
struct ProfileSpan {
  int n = 0;
  std::vector<BooleanFunction> basis;        // reduced phi words
  std::vector<std::uint32_t> basis_b;        // tracked b for each basis word

  explicit ProfileSpan(const WalshSupport& sup) : n(sup.n) {
    for (int j = 0; j < n; ++j) {
      BooleanFunction col = sequence_profile_column(sup, BitVector(n, 1u << (n - 1 - j)));
      std::uint32_t b = 1u << (n - 1 - j);
      reduce(col, b);
      if (col.weight() != 0) {
        basis.push_back(col);
        basis_b.push_back(b);
      }
    }
  }

  void reduce(BooleanFunction& w, std::uint32_t& b) const {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      // pivot = lowest set bit index of the basis word
      const auto& words = basis[k].words();
      std::size_t wi = 0;
      while (words[wi] == 0) ++wi;
      std::uint64_t pivot = words[wi] & (~words[wi] + 1);
      if (w.words()[wi] & pivot) {
        w ^= basis[k];
        b ^= basis_b[k];
      }
    }
  }

  /* Find b with phi_b == target; nullopt when target is outside the span. */
  std::optional<std::uint32_t> solve(BooleanFunction target) const {
    std::uint32_t b = 0;
    reduce(target, b);
    if (target.weight() != 0) return std::nullopt;
    return b;
  }
};

}  // namespace detail

constexpr std::uint64_t kDefaultRelationBudget = 50'000'000;

/* First (A, c) with S_h = c + S_f A^T, in deterministic search order;
   nullopt when provably none exists.  Throws BudgetExceeded when the
   search was cut short. */
inline std::optional<SupportRelation> find_support_relation(
    const std::vector<BitVector>& sf, const std::vector<BitVector>& sh,
    std::uint64_t budget = kDefaultRelationBudget) {
  detail::RelationSearch search(sf, sh, budget);
  std::optional<SupportRelation> found;
  search.run([&](const BinaryMatrix& b, BitVector c) {
    found = SupportRelation{transpose(b), c};
    return true;
  });
  return found;
}

/* Theorem linkage: with S_f canonically ordered and S_h ordered through
   z_i = c + omega_i A^T, look for (b, eps) with
   hbar*(x_i) = fbar*(x_i) + phi_b(x_i) + eps for all i. */
inline std::optional<std::pair<BitVector, int>> check_dual_relation(
    const BooleanFunction& f, const BooleanFunction& h,
    const SupportRelation& rel) {
  WalshSpectrum wf = wht(f), wh = wht(h);
  auto pf = plateaued_profile(wf), ph = plateaued_profile(wh);
  if (!pf || !ph || pf->s != ph->s)
    throw PreconditionError("dual relation needs equal-order plateaued inputs");
  auto sf = walsh_support(wf);
  auto sh = walsh_support(wh);
  BinaryMatrix b_mat = transpose(rel.a);

  std::vector<std::uint32_t> mapped;
  mapped.reserve(sf.size());
  for (BitVector p : sf) mapped.push_back(rel.c.bits ^ mul_row(p, b_mat).bits);
  std::vector<std::uint32_t> mapped_sorted = mapped;
  std::sort(mapped_sorted.begin(), mapped_sorted.end());
  std::vector<std::uint32_t> sh_sorted;
  for (BitVector p : sh) sh_sorted.push_back(p.bits);
  if (mapped_sorted != sh_sorted)
    throw PreconditionError("invalid support relation");

  WalshSupport ord = canonical_order(sf);
  int m = ord.n - ord.s;
  BooleanFunction fdual(m), hdual(m);
  for (std::uint32_t i = 0; i < ord.points.size(); ++i) {
    std::uint32_t w = ord.points[i].bits;
    if (wf.values[w] < 0) fdual.set(i, 1);
    std::uint32_t z = rel.c.bits ^ mul_row(ord.points[i], b_mat).bits;
    if (wh.values[z] < 0) hdual.set(i, 1);
  }
  detail::ProfileSpan span(ord);
  BooleanFunction delta = fdual ^ hdual;
  if (auto b = span.solve(delta)) return std::make_pair(BitVector(f.n(), *b), 0);
  BooleanFunction flipped = delta ^ BooleanFunction::constant(m, 1);
  if (auto b = span.solve(flipped))
    return std::make_pair(BitVector(f.n(), *b), 1);
  return std::nullopt;
}

struct EaWitness {
  BinaryMatrix a;
  BitVector b, c;
  int eps = 0;
};

enum class EaStatus { Equivalent, Inequivalent, Inconclusive };

struct EaVerdict {
  EaStatus status = EaStatus::Inconclusive;
  std::optional<EaWitness> witness;
  std::string reason;
  EaFingerprint fp_f, fp_h;
};

/* Fingerprint filter, then exhaustive support-relation + dual-relation
   search.  Equivalent is only reported with a witness that re-applies as
   h(x) = f(xA+b) + c.x + eps; Inequivalent only when the relation space
   was fully enumerated. */
inline EaVerdict ea_equivalent_small(
    const BooleanFunction& f, const BooleanFunction& h,
    std::uint64_t budget = kDefaultRelationBudget) {
  EaVerdict out;
  out.fp_f = ea_fingerprint(f);
  out.fp_h = ea_fingerprint(h);
  if (out.fp_f != out.fp_h) {
    out.status = EaStatus::Inequivalent;
    out.reason = "fingerprints differ: " +
                 fingerprint_difference(out.fp_f, out.fp_h);
    return out;
  }
  if (f == h) {
    int n = f.n();
    out.status = EaStatus::Equivalent;
    out.witness = EaWitness{BinaryMatrix::identity(n), BitVector(n, 0),
                            BitVector(n, 0), 0};
    out.reason = "identical truth tables";
    return out;
  }
  if (out.fp_f.plateau.kind == PlateauKind::NotPlateaued) {
    out.status = EaStatus::Inconclusive;
    out.reason = "fingerprints agree but the inputs are not plateaued";
    return out;
  }

  WalshSpectrum wf = wht(f), wh = wht(h);
  auto sf = walsh_support(wf);
  auto sh = walsh_support(wh);
  WalshSupport ord = canonical_order(sf);
  int m = ord.n - ord.s;
  BooleanFunction fdual(m);
  for (std::uint32_t i = 0; i < ord.points.size(); ++i)
    if (wf.values[ord.points[i].bits] < 0) fdual.set(i, 1);
  detail::ProfileSpan span(ord);
  BooleanFunction ones = BooleanFunction::constant(m, 1);

  std::optional<EaWitness> witness;
  bool exhausted = false;
  try {
    detail::RelationSearch search(sf, sh, budget);
    exhausted = search.run([&](const BinaryMatrix& b_mat, BitVector c) {
      BooleanFunction hdual(m);
      for (std::uint32_t i = 0; i < ord.points.size(); ++i) {
        std::uint32_t z = c.bits ^ mul_row(ord.points[i], b_mat).bits;
        if (wh.values[z] < 0) hdual.set(i, 1);
      }
      BooleanFunction delta = fdual ^ hdual;
      std::optional<std::uint32_t> b = span.solve(delta);
      int eps = 0;
      if (!b) {
        b = span.solve(delta ^ ones);
        eps = 1;
      }
      if (!b) return false;
      EaWitness cand{transpose(b_mat), BitVector(f.n(), *b), c, eps};
      if (apply_affine(f, cand.a, cand.b, cand.c, cand.eps) == h) {
        witness = std::move(cand);
        return true;
      }
      return false;  // cannot happen for a valid dual witness
    });
  } catch (const BudgetExceeded&) {
    out.status = EaStatus::Inconclusive;
    out.reason = "search budget exceeded";
    return out;
  }
  if (witness) {
    out.status = EaStatus::Equivalent;
    out.witness = std::move(witness);
    out.reason = "verified affine witness";
  } else if (exhausted) {
    out.status = EaStatus::Inequivalent;
    out.reason =
        "no (A, c, b, eps) satisfies the support and dual relations";
  } else {
    out.status = EaStatus::Inconclusive;
    out.reason = "search stopped early";
  }
  return out;
}

/* Exhaustive EA test for bent functions on up to 4 variables: enumerate
   GL(m, 2) x b and ask whether g1(xA+b) + g2 is affine. */
inline std::optional<EaWitness> ea_equivalent_bent_exhaustive(
    const BooleanFunction& g1, const BooleanFunction& g2) {
  int n = g1.n();
  if (g2.n() != n) throw PreconditionError("arity mismatch");
  if (n > 4)
    throw PreconditionError("exhaustive bent equivalence limited to n <= 4");
  const std::uint32_t size = 1u << n;
  auto word_of = [size](const BooleanFunction& f) {
    std::uint32_t w = 0;
    for (std::uint32_t x = 0; x < size; ++x)
      if (f.get(x)) w |= 1u << x;
    return w;
  };
  std::uint32_t w1 = word_of(g1), w2 = word_of(g2);

  std::vector<std::uint8_t> affine(std::size_t(1) << size, 0);
  for (std::uint32_t c = 0; c < size; ++c)
    for (int eps = 0; eps < 2; ++eps) {
      std::uint32_t t = 0;
      for (std::uint32_t x = 0; x < size; ++x)
        if (parity(c & x) ^ eps) t |= 1u << x;
      affine[t] = 1;
    }

  std::vector<std::uint32_t> rows(n);
  std::optional<EaWitness> found;
  auto try_matrix = [&]() {
    std::vector<std::uint32_t> img(size);
    for (std::uint32_t x = 0; x < size; ++x) {
      std::uint32_t y = 0;
      for (int i = 0; i < n; ++i)
        if ((x >> (n - 1 - i)) & 1u) y ^= rows[i];
      img[x] = y;
    }
    for (std::uint32_t b = 0; b < size && !found; ++b) {
      std::uint32_t t = 0;
      for (std::uint32_t x = 0; x < size; ++x)
        if ((w1 >> (img[x] ^ b)) & 1u) t |= 1u << x;
      std::uint32_t diff = t ^ w2;
      if (!affine[diff]) continue;
      int eps = diff & 1u;  // value at x = 0
      std::uint32_t c = 0;
      for (int i = 0; i < n; ++i) {
        std::uint32_t unit = 1u << (n - 1 - i);
        if (((diff >> unit) & 1u) ^ eps) c |= unit;
      }
      BinaryMatrix a(n, n);
      a.row_bits = rows;
      found = EaWitness{a, BitVector(n, b), BitVector(n, c), eps};
    }
  };
  // DFS over invertible row choices
  std::vector<std::uint32_t> basis;
  auto rec = [&](auto&& self, int k) -> void {
    if (found) return;
    if (k == n) {
      try_matrix();
      return;
    }
    for (std::uint32_t r = 1; r < size; ++r) {
      if (reduce_against(r, basis) == 0) continue;
      rows[k] = r;
      std::size_t saved = basis.size();
      basis.push_back(reduce_against(r, basis));
      self(self, k + 1);
      basis.resize(saved);
      if (found) return;
    }
  };
  rec(rec, 0);
  if (found && !(apply_affine(g1, found->a, found->b, found->c, found->eps) == g2))
    throw Error("internal: bent witness failed verification");
  return found;
}

}  // namespace plateau
