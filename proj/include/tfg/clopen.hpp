#pragma once

// Clopen subsets of the Cantor space {0,...,p-1}^N, kept as canonical
// finite unions of cylinders.
//
// A word w = (w_0, ..., w_{k-1}) names the cylinder [w] of all sequences
// whose first k coordinates are w. Digits are stored least-significant
// first, so w_i is coordinate x_i and the p-adic value of w is
// sum w_i p^i.
//
// Canonical form is the reduced trie: words are pairwise non-nested and no
// node carries all p of its children (such families are merged into the
// parent). Two sets are equal as point sets iff their word lists are equal.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfg {

using Digit = std::uint8_t;
using Digits = std::vector<Digit>;

inline constexpr int kMaxBase = 36;

/// Throws Representation unless 2 <= p <= kMaxBase.
void check_base(int base);

/// A finite word over {0,...,p-1}, least-significant digit first.
struct Word {
  int base = 2;
  Digits digits;

  friend bool operator==(const Word&, const Word&) = default;
};

/// Digit characters are 0-9 then a-z. The empty word renders as "ε".
std::string digits_to_string(const Digits& digits);
Digits digits_from_string(int base, std::string_view text);

bool is_prefix(const Digits& prefix, const Digits& word) noexcept;

/// All p^k words of length k, in lexicographic order.
std::vector<Digits> all_words(int base, std::size_t k);

class ClopenSet {
 public:
  /// The empty set.
  explicit ClopenSet(int base);

  static ClopenSet empty(int base) { return ClopenSet(base); }
  static ClopenSet full(int base);
  static ClopenSet cylinder(int base, Digits word);

  /// Union of the given cylinders, in canonical form.
  static ClopenSet canonicalize(int base, std::vector<Digits> words);
  /// Throws Representation if a word's base differs from `base`.
  static ClopenSet canonicalize(int base, std::span<const Word> words);

  int base() const noexcept { return base_; }
  /// Sorted lexicographically; pairwise non-nested.
  const std::vector<Digits>& words() const noexcept { return words_; }

  bool is_empty() const noexcept { return words_.empty(); }
  bool is_full() const noexcept {
    return words_.size() == 1 && words_.front().empty();
  }
  /// Length of the longest word (0 for the empty and the full set).
  std::size_t depth() const noexcept;

  /// True iff the cylinder [w] lies inside this set.
  bool contains_cylinder(const Digits& w) const noexcept;
  /// True iff the cylinder [w] meets this set.
  bool meets_cylinder(const Digits& w) const noexcept;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  ClopenSet(int base, std::vector<Digits> canonical_words)
      : base_(base), words_(std::move(canonical_words)) {}

  int base_;
  std::vector<Digits> words_;

  friend ClopenSet set_union(const ClopenSet&, const ClopenSet&);
  friend ClopenSet intersection(const ClopenSet&, const ClopenSet&);
  friend ClopenSet difference(const ClopenSet&, const ClopenSet&);
  friend ClopenSet complement(const ClopenSet&);
};

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b);
ClopenSet intersection(const ClopenSet& a, const ClopenSet& b);
ClopenSet difference(const ClopenSet& a, const ClopenSet& b);
ClopenSet complement(const ClopenSet& a);

bool is_subset(const ClopenSet& a, const ClopenSet& b);
inline bool is_empty(const ClopenSet& a) { return a.is_empty(); }

/// All depth-k words whose cylinders lie inside `a`, sorted.
/// Throws Depth when k is smaller than a.depth().
std::vector<Digits> refine_to_depth(const ClopenSet& a, std::size_t k);

/// Image of `a` under the coordinatewise map d -> (p-1) - d.
ClopenSet digit_flip(const ClopenSet& a);
Digits digit_flip(int base, const Digits& w);

}  // namespace tfg
