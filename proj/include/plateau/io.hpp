#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "anf.hpp"
#include "bits.hpp"
#include "boolfn.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "support.hpp"

namespace plateau {

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

inline int hex_value(char c, std::size_t pos) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw ParseError("invalid hex digit '" + std::string(1, c) + "' at offset " +
                   std::to_string(pos));
}

}  // namespace detail

/* `anf:` text: terms '+'-separated, factors '*'-separated, variables
   x1..x24, constant terms 1 and 0.  Repeated terms cancel. */
inline AnfPolynomial parse_anf_text(const std::string& body,
                                    std::optional<int> n_hint = std::nullopt) {
  std::string s = detail::strip_spaces(body);
  if (s.empty()) throw ParseError("empty ANF");
  std::vector<std::vector<int>> term_vars;
  int max_var = 0, const_parity = 0;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('+', pos);
    std::string term = s.substr(pos, next == std::string::npos ? next
                                                               : next - pos);
    if (term.empty())
      throw ParseError("empty term at offset " + std::to_string(pos));
    if (term == "1") {
      const_parity ^= 1;
    } else if (term == "0") {
      // contributes nothing
    } else {
      std::vector<int> vars;
      std::size_t fpos = 0;
      while (fpos <= term.size()) {
        std::size_t fnext = term.find('*', fpos);
        std::string factor =
            term.substr(fpos, fnext == std::string::npos ? fnext : fnext - fpos);
        if (factor.size() < 2 || factor[0] != 'x')
          throw ParseError("bad factor '" + factor + "' at offset " +
                           std::to_string(pos + fpos));
        int idx = 0;
        for (std::size_t k = 1; k < factor.size(); ++k) {
          if (!std::isdigit(static_cast<unsigned char>(factor[k])))
            throw ParseError("bad variable index in '" + factor + "'");
          idx = idx * 10 + (factor[k] - '0');
        }
        if (idx < 1 || idx > kMaxVars)
          throw ParseError("variable index " + std::to_string(idx) +
                           " outside [1, " + std::to_string(kMaxVars) + "]");
        vars.push_back(idx);
        max_var = std::max(max_var, idx);
        if (fnext == std::string::npos) break;
        fpos = fnext + 1;
      }
      term_vars.push_back(std::move(vars));
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  int n = std::max(max_var, n_hint.value_or(0));
  if (n == 0) n = 1;  // a lone constant still needs a domain
  if (n_hint && max_var > *n_hint)
    throw ParseError("ANF mentions x" + std::to_string(max_var) +
                     " but n=" + std::to_string(*n_hint) + " was requested");
  AnfPolynomial p;
  p.n = n;
  std::vector<std::uint32_t> monos;
  if (const_parity) monos.push_back(0);
  for (const auto& vars : term_vars) {
    std::uint32_t mask = 0;
    for (int v : vars) mask |= 1u << (n - v);
    monos.push_back(mask);
  }
  std::sort(monos.begin(), monos.end());
  // XOR semantics: pairs cancel
  for (std::size_t i = 0; i < monos.size();) {
    std::size_t j = i;
    while (j < monos.size() && monos[j] == monos[i]) ++j;
    if ((j - i) % 2) p.monomials.push_back(monos[i]);
    i = j;
  }
  return p;
}

/* `tt:n:HEX` with 2^n bits big-endian; bit of index 0 is the MSB of the
   first hex digit. */
inline BooleanFunction parse_tt_text(const std::string& body) {
  std::size_t colon = body.find(':');
  if (colon == std::string::npos) throw ParseError("tt: missing second colon");
  int n = 0;
  for (char c : body.substr(0, colon)) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("tt: bad variable count");
    n = n * 10 + (c - '0');
  }
  check_var_count(n);
  std::string hex = detail::strip_spaces(body.substr(colon + 1));
  std::size_t bits = std::size_t(1) << n;
  std::size_t digits = (bits + 3) / 4;
  if (hex.size() != digits)
    throw ParseError("tt: expected " + std::to_string(digits) +
                     " hex digits, got " + std::to_string(hex.size()));
  BooleanFunction f(n);
  for (std::size_t d = 0; d < digits; ++d) {
    int v = detail::hex_value(hex[d], d);
    for (int b = 0; b < 4; ++b) {
      std::size_t idx = 4 * d + b;
      if (idx >= bits) break;
      if ((v >> (3 - b)) & 1) f.set(static_cast<std::uint32_t>(idx), 1);
    }
  }
  return f;
}

inline BooleanFunction parse_function(const std::string& text,
                                      std::optional<int> n_hint = std::nullopt) {
  if (text.rfind("anf:", 0) == 0)
    return anf_to_tt(parse_anf_text(text.substr(4), n_hint));
  if (text.rfind("tt:", 0) == 0) {
    BooleanFunction f = parse_tt_text(text.substr(3));
    if (n_hint && *n_hint != f.n())
      throw ParseError("tt: declares n=" + std::to_string(f.n()) +
                       " but n=" + std::to_string(*n_hint) + " was requested");
    return f;
  }
  throw ParseError("function text must start with 'anf:' or 'tt:'");
}

inline std::string to_anf_text(const AnfPolynomial& p) {
  std::vector<std::uint32_t> monos = p.monomials;
  std::stable_sort(monos.begin(), monos.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     int wa = std::popcount(a), wb = std::popcount(b);
                     return wa != wb ? wa < wb : a < b;
                   });
  std::string out = "anf:";
  if (monos.empty()) return out + "0";
  bool first = true;
  for (std::uint32_t u : monos) {
    if (!first) out.push_back('+');
    first = false;
    if (u == 0) {
      out.push_back('1');
      continue;
    }
    bool first_factor = true;
    for (int v = 1; v <= p.n; ++v)
      if ((u >> (p.n - v)) & 1u) {
        if (!first_factor) out.push_back('*');
        first_factor = false;
        out += "x" + std::to_string(v);
      }
  }
  return out;
}

inline std::string to_anf_text(const BooleanFunction& f) {
  return to_anf_text(tt_to_anf(f));
}

inline std::string to_tt_text(const BooleanFunction& f) {
  static const char* digits = "0123456789ABCDEF";
  std::size_t bits = f.size();
  std::string hex((bits + 3) / 4, '0');
  for (std::size_t d = 0; d < hex.size(); ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      std::size_t idx = 4 * d + b;
      if (idx < bits && f.get(static_cast<std::uint32_t>(idx)))
        v |= 1 << (3 - b);
    }
    hex[d] = digits[v];
  }
  return "tt:" + std::to_string(f.n()) + ":" + hex;
}

/* Support file: `n s`, an optional `v=<binary> M=<n*n binary>` line, then
   2^{n-s} binary point lines in the intended order. */
inline WalshSupport parse_support_stream(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("support file: empty");
  std::istringstream head(line);
  int n = 0, s = 0;
  if (!(head >> n >> s)) throw ParseError("support file: expected 'n s'");
  check_var_count(n);
  if (s < 0 || s >= n) throw ParseError("support file: need 0 <= s < n");

  std::optional<BitVector> v;
  std::optional<BinaryMatrix> m;
  std::vector<BitVector> points;
  std::size_t expected = std::size_t(1) << (n - s);
  while (std::getline(in, line)) {
    std::string t = detail::strip_spaces(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("v=", 0) == 0) {
      std::size_t mpos = t.find("M=");
      if (mpos == std::string::npos)
        throw ParseError("support file: header needs both v= and M=");
      std::string vs = t.substr(2, mpos - 2);
      std::string ms = t.substr(mpos + 2);
      if (static_cast<int>(vs.size()) != n)
        throw ParseError("support file: v= needs " + std::to_string(n) +
                         " digits");
      v = bitvector_from_string(vs);
      m = matrix_from_binary(ms, n, n);
      continue;
    }
    if (static_cast<int>(t.size()) != n)
      throw ParseError("support file: point '" + t + "' is not " +
                       std::to_string(n) + " binary digits");
    points.push_back(bitvector_from_string(t));
    if (points.size() > expected)
      throw ParseError("support file: more than 2^{n-s} points");
  }
  if (points.size() != expected)
    throw ParseError("support file: expected " + std::to_string(expected) +
                     " points, got " + std::to_string(points.size()));
  detail::check_no_duplicates(points);

  WalshSupport sup;
  sup.n = n;
  sup.s = s;
  sup.points = points;
  if (v) {
    if (!is_invertible(*m)) throw ParseError("support file: M is singular");
    BinaryMatrix minv = matrix_inverse(*m);
    std::vector<BitVector> e;
    e.reserve(points.size());
    for (BitVector p : points) e.push_back(mul_row(p + *v, minv));
    if (!e.front().is_zero())
      throw ParseError("support file: (omega_0 + v) M^{-1} != 0");
    if (!std::is_sorted(e.begin(), e.end()))
      throw ParseError("support file: declared (v, M) does not order E "
                       "lexicographically");
    sup.decomp = SupportDecomposition{*v, *m, std::move(e)};
  }
  return sup;
}

inline WalshSupport parse_support_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open support file: " + path);
  return parse_support_stream(in);
}

inline void write_support_stream(std::ostream& out, const WalshSupport& sup) {
  out << sup.n << " " << sup.s << "\n";
  if (sup.decomp)
    out << "v=" << to_binary_string(sup.decomp->v)
        << " M=" << to_binary_string(sup.decomp->m) << "\n";
  for (BitVector p : sup.points) out << to_binary_string(p) << "\n";
}

/* Permutation file: 2^k lines, line i holds the image index of i. */
inline std::vector<std::uint32_t> parse_permutation_stream(std::istream& in) {
  std::vector<std::uint32_t> table;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = detail::strip_spaces(line);
    if (t.empty() || t[0] == '#') continue;
    std::uint32_t v = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("permutation file: bad entry '" + t + "'");
      v = v * 10 + static_cast<std::uint32_t>(c - '0');
    }
    table.push_back(v);
  }
  if (table.empty() || (table.size() & (table.size() - 1)))
    throw ParseError("permutation file: need 2^k lines");
  std::vector<std::uint8_t> seen(table.size(), 0);
  for (std::uint32_t v : table) {
    if (v >= table.size() || seen[v])
      throw ParseError("permutation file: not a bijection");
    seen[v] = 1;
  }
  return table;
}

inline std::vector<std::uint32_t> parse_permutation_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open permutation file: " + path);
  return parse_permutation_stream(in);
}

}  // namespace plateau
