#pragma once

// Literals and brute-force oracles shared by the test suites. The oracles
// avoid the trie and table code: membership is prefix search, and the
// odometer is big-integer addition on 64-digit truncations.

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/full_group.hpp"
#include "tfg/odometer.hpp"

namespace tfg::testing {

inline constexpr std::size_t kTruncation = 64;

inline Digits word(int base, std::string_view s) { return digits_from_string(base, s); }

inline ClopenSet set_of(int base, std::initializer_list<std::string_view> words) {
  std::vector<Digits> ws;
  for (auto s : words) ws.push_back(word(base, s));
  return ClopenSet::canonicalize(base, std::move(ws));
}

inline FullGroupElement table(int base,
                              std::initializer_list<std::pair<std::string_view, std::int64_t>> cells) {
  std::vector<Cell> cs;
  for (const auto& [w, n] : cells) cs.push_back(Cell{word(base, w), n});
  return FullGroupElement::from_table(base, std::move(cs));
}

inline Point point(int base, std::string_view pre, std::string_view per) {
  return Point(base, word(base, pre), word(base, per));
}

/// Some listed word of `a` is a prefix of x.
inline bool member(const ClopenSet& a, const Digits& x) {
  for (const Digits& w : a.words())
    if (w.size() <= x.size() && std::equal(w.begin(), w.end(), x.begin())) return true;
  return false;
}

/// Indicator of `a` on every depth-k word.
inline std::vector<bool> indicator(const ClopenSet& a, std::size_t k) {
  std::vector<bool> out;
  for (const Digits& x : all_words(a.base(), k)) out.push_back(member(a, x));
  return out;
}

inline BigInt truncated_value(int base, const Digits& d) {
  BigInt v = 0;
  BigInt scale = 1;
  for (Digit x : d) {
    v += scale * x;
    scale *= base;
  }
  return v;
}

inline Digits truncated_digits(int base, BigInt v, std::size_t len) {
  const BigInt modulus = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(len));
  v %= modulus;
  if (v < 0) v += modulus;
  Digits out(len);
  for (auto& d : out) {
    d = static_cast<Digit>(static_cast<int>(v % base));
    v /= base;
  }
  return out;
}

/// First `len` digits of x + n, by addition modulo p^len.
inline Digits truncated_add(int base, const Digits& x, std::int64_t n, std::size_t len) {
  Digits head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len));
  return truncated_digits(base, truncated_value(base, head) + n, len);
}

/// First kTruncation digits of g(x), found by prefix search in g's table.
inline Digits brute_apply(const FullGroupElement& g, const Point& x) {
  const Digits head = x.prefix(kTruncation);
  for (const Cell& c : g.cells())
    if (std::equal(c.word.begin(), c.word.end(), head.begin()))
      return truncated_add(g.base(), head, c.power, kTruncation);
  return {};
}

/// Depth-k action of g through brute force on the points w.0^inf.
inline std::vector<Digits> brute_cylinder_action(const FullGroupElement& g, std::size_t k) {
  std::vector<Digits> out;
  for (const Digits& w : all_words(g.base(), k)) {
    Digits img = brute_apply(g, Point(g.base(), w, Digits{0}));
    img.resize(k);
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace tfg::testing
