#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bits.hpp"
#include "boolfn.hpp"
#include "errors.hpp"

namespace plateau {

/* Dense Walsh spectrum: values[|u|] = W_f(u) = sum_x (-1)^{f(x)+u.x}. */
struct WalshSpectrum {
  int n = 0;
  std::vector<std::int32_t> values;
};

/* values[|a|] = Delta_f(a) = sum_x (-1)^{f(x)+f(x+a)}. */
struct AutocorrelationSpectrum {
  int n = 0;
  std::vector<std::int32_t> values;
};

namespace detail {

template <typename Int>
inline void butterfly(std::vector<Int>& a) {
  std::size_t size = a.size();
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t base = 0; base < size; base += 2 * h)
      for (std::size_t i = base; i < base + h; ++i) {
        Int x = a[i], y = a[i + h];
        a[i] = x + y;
        a[i + h] = x - y;
      }
}

}  // namespace detail

inline WalshSpectrum wht(const BooleanFunction& f) {
  WalshSpectrum s;
  s.n = f.n();
  std::vector<std::int32_t> buf(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) buf[x] = f.get(x) ? -1 : 1;
  detail::butterfly(buf);
  s.values = std::move(buf);
  return s;
}

/* Exact integer inverse; every reconstructed value must be +-2^n.  The
   failing point is the witness used by the spectral construction gate. */
inline BooleanFunction inverse_wht(const WalshSpectrum& spec) {
  int n = spec.n;
  std::uint32_t size = 1u << n;
  if (spec.values.size() != size)
    throw PreconditionError("spectrum length does not match n");
  std::vector<std::int64_t> buf(spec.values.begin(), spec.values.end());
  detail::butterfly(buf);
  const std::int64_t full = std::int64_t(1) << n;
  BooleanFunction f(n);
  for (std::uint32_t x = 0; x < size; ++x) {
    if (buf[x] == full) continue;
    if (buf[x] == -full) {
      f.set(x, 1);
      continue;
    }
    throw NotBooleanSpectrum(
        x, "inverse transform is not a Boolean function at point " +
               std::to_string(x) + " (value " + std::to_string(buf[x]) + "/" +
               std::to_string(full) + ")");
  }
  return f;
}

inline AutocorrelationSpectrum autocorrelation(const BooleanFunction& f) {
  // Wiener-Khinchin: Delta = 2^{-n} H(W^2).
  WalshSpectrum w = wht(f);
  std::vector<std::int64_t> buf(w.values.size());
  for (std::size_t i = 0; i < buf.size(); ++i)
    buf[i] = std::int64_t(w.values[i]) * w.values[i];
  detail::butterfly(buf);
  AutocorrelationSpectrum ac;
  ac.n = f.n();
  ac.values.resize(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i)
    ac.values[i] = static_cast<std::int32_t>(buf[i] >> f.n());
  return ac;
}

struct PlateauedProfile {
  int s = 0;
  std::int64_t amplitude = 0;  // 2^{(n+s)/2}
  std::uint32_t count_plus = 0, count_minus = 0, count_zero = 0;
};

/* Detects the three-valued spectrum {0, +-2^{(n+s)/2}} with 1 <= s < n.
   Bent functions (no zero value) and affine functions (s = n) are
   deliberately absent. */
inline std::optional<PlateauedProfile> plateaued_profile(
    const WalshSpectrum& spec) {
  std::int64_t amp = 0;
  std::uint32_t plus = 0, minus = 0, zero = 0;
  for (std::int32_t v : spec.values) {
    if (v == 0) {
      ++zero;
      continue;
    }
    std::int64_t av = v < 0 ? -std::int64_t(v) : v;
    if (amp == 0) amp = av;
    if (av != amp) return std::nullopt;
    if (v > 0)
      ++plus;
    else
      ++minus;
  }
  if (zero == 0 || amp == 0) return std::nullopt;
  if (std::popcount(static_cast<std::uint64_t>(amp)) != 1) return std::nullopt;
  int log_amp = std::countr_zero(static_cast<std::uint64_t>(amp));
  int s = 2 * log_amp - spec.n;
  if (s < 1 || s >= spec.n) return std::nullopt;
  return PlateauedProfile{s, amp, plus, minus, zero};
}

inline std::optional<PlateauedProfile> plateaued_profile(
    const BooleanFunction& f) {
  return plateaued_profile(wht(f));
}

inline bool is_bent(const WalshSpectrum& spec) {
  if (spec.n % 2) return false;
  std::int32_t amp = std::int32_t(1) << (spec.n / 2);
  for (std::int32_t v : spec.values)
    if (v != amp && v != -amp) return false;
  return true;
}

inline bool is_bent(const BooleanFunction& f) { return is_bent(wht(f)); }

/* W_f(u) = 2^{n/2} (-1)^{f*(u)}; the dual of a bent function is bent. */
inline BooleanFunction bent_dual(const BooleanFunction& f) {
  WalshSpectrum w = wht(f);
  if (!is_bent(w)) throw PreconditionError("bent_dual: function is not bent");
  BooleanFunction d(f.n());
  for (std::uint32_t u = 0; u < f.size(); ++u)
    if (w.values[u] < 0) d.set(u, 1);
  return d;
}

}  // namespace plateau
