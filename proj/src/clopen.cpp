#include "tfg/clopen.hpp"

#include <algorithm>

#include "tfg/error.hpp"

namespace tfg {

namespace {

using WordSpan = std::span<const Digits>;

enum class NodeKind { Empty, Full, Split };

// All words in `s` share the first `off` digits.
NodeKind classify(WordSpan s, std::size_t off) {
  if (s.empty()) return NodeKind::Empty;
  if (s.front().size() == off) return NodeKind::Full;
  return NodeKind::Split;
}

// Sub-span of words whose digit at `off` equals d. `s` must be Split.
WordSpan child(WordSpan s, std::size_t off, Digit d) {
  auto lo = std::partition_point(s.begin(), s.end(),
                                 [&](const Digits& w) { return w[off] < d; });
  auto hi = std::partition_point(lo, s.end(),
                                 [&](const Digits& w) { return w[off] <= d; });
  return {lo, hi};
}

// Collapses the last p emitted words into their parent when they are exactly
// the p children of `prefix`.
void merge_full_family(std::vector<Digits>& out, std::size_t start,
                       const Digits& prefix, int base) {
  const std::size_t p = static_cast<std::size_t>(base);
  if (out.size() - start != p) return;
  for (std::size_t i = start; i < out.size(); ++i)
    if (out[i].size() != prefix.size() + 1) return;
  out.resize(start);
  out.push_back(prefix);
}

void copy_words(WordSpan s, std::vector<Digits>& out) {
  out.insert(out.end(), s.begin(), s.end());
}

void complement_rec(WordSpan s, std::size_t off, Digits& prefix, int base,
                    std::vector<Digits>& out) {
  switch (classify(s, off)) {
    case NodeKind::Full: return;
    case NodeKind::Empty: out.push_back(prefix); return;
    case NodeKind::Split: break;
  }
  const std::size_t start = out.size();
  for (int d = 0; d < base; ++d) {
    prefix.push_back(static_cast<Digit>(d));
    complement_rec(child(s, off, static_cast<Digit>(d)), off + 1, prefix,
                   base, out);
    prefix.pop_back();
  }
  merge_full_family(out, start, prefix, base);
}

enum class BinaryOp { Union, Intersect, Difference };

void combine_rec(BinaryOp op, WordSpan a, WordSpan b, std::size_t off,
                 Digits& prefix, int base, std::vector<Digits>& out) {
  const NodeKind ka = classify(a, off);
  const NodeKind kb = classify(b, off);
  switch (op) {
    case BinaryOp::Union:
      if (ka == NodeKind::Full || kb == NodeKind::Full) {
        out.push_back(prefix);
        return;
      }
      if (ka == NodeKind::Empty) return copy_words(b, out);
      if (kb == NodeKind::Empty) return copy_words(a, out);
      break;
    case BinaryOp::Intersect:
      if (ka == NodeKind::Empty || kb == NodeKind::Empty) return;
      if (ka == NodeKind::Full) return copy_words(b, out);
      if (kb == NodeKind::Full) return copy_words(a, out);
      break;
    case BinaryOp::Difference:
      if (ka == NodeKind::Empty || kb == NodeKind::Full) return;
      if (kb == NodeKind::Empty) return copy_words(a, out);
      if (ka == NodeKind::Full) return complement_rec(b, off, prefix, base, out);
      break;
  }
  const std::size_t start = out.size();
  for (int d = 0; d < base; ++d) {
    const auto digit = static_cast<Digit>(d);
    prefix.push_back(digit);
    combine_rec(op, child(a, off, digit), child(b, off, digit), off + 1, prefix,
                base, out);
    prefix.pop_back();
  }
  merge_full_family(out, start, prefix, base);
}

// Input: sorted, non-nested words. Output: the same union with complete
// sibling families merged.
void reduce_rec(WordSpan s, std::size_t off, Digits& prefix, int base,
                std::vector<Digits>& out) {
  switch (classify(s, off)) {
    case NodeKind::Empty: return;
    case NodeKind::Full: out.push_back(prefix); return;
    case NodeKind::Split: break;
  }
  const std::size_t start = out.size();
  for (int d = 0; d < base; ++d) {
    const auto digit = static_cast<Digit>(d);
    WordSpan c = child(s, off, digit);
    if (c.empty()) continue;
    prefix.push_back(digit);
    reduce_rec(c, off + 1, prefix, base, out);
    prefix.pop_back();
  }
  merge_full_family(out, start, prefix, base);
}

void require_same_base(const ClopenSet& a, const ClopenSet& b) {
  if (a.base() != b.base())
    fail(ErrorCode::Representation,
         "clopen sets over different bases (" + std::to_string(a.base()) +
             " and " + std::to_string(b.base()) + ")");
}

}  // namespace

void check_base(int base) {
  if (base < 2 || base > kMaxBase)
    fail(ErrorCode::Representation,
         "base must lie in [2, " + std::to_string(kMaxBase) + "], got " +
             std::to_string(base));
}

std::string digits_to_string(const Digits& digits) {
  if (digits.empty()) return "ε";
  std::string s;
  s.reserve(digits.size());
  for (Digit d : digits)
    s.push_back(d < 10 ? static_cast<char>('0' + d)
                       : static_cast<char>('a' + (d - 10)));
  return s;
}

Digits digits_from_string(int base, std::string_view text) {
  check_base(base);
  Digits out;
  if (text == "ε") return out;
  out.reserve(text.size());
  for (char c : text) {
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
    if (v < 0 || v >= base)
      fail(ErrorCode::Representation, std::string("invalid digit '") + c +
                                           "' for base " +
                                           std::to_string(base));
    out.push_back(static_cast<Digit>(v));
  }
  return out;
}

bool is_prefix(const Digits& prefix, const Digits& word) noexcept {
  return prefix.size() <= word.size() &&
         std::equal(prefix.begin(), prefix.end(), word.begin());
}

std::vector<Digits> all_words(int base, std::size_t k) {
  std::vector<Digits> out{Digits{}};
  for (std::size_t level = 0; level < k; ++level) {
    std::vector<Digits> next;
    next.reserve(out.size() * static_cast<std::size_t>(base));
    for (const Digits& w : out)
      for (int d = 0; d < base; ++d) {
        next.push_back(w);
        next.back().push_back(static_cast<Digit>(d));
      }
    out = std::move(next);
  }
  return out;
}

ClopenSet::ClopenSet(int base) : base_(base) { check_base(base); }

ClopenSet ClopenSet::full(int base) {
  check_base(base);
  return ClopenSet(base, std::vector<Digits>{Digits{}});
}

ClopenSet ClopenSet::cylinder(int base, Digits word) {
  std::vector<Digits> words;
  words.push_back(std::move(word));
  return canonicalize(base, std::move(words));
}

ClopenSet ClopenSet::canonicalize(int base, std::vector<Digits> words) {
  check_base(base);
  for (const Digits& w : words)
    for (Digit d : w)
      if (d >= base)
        fail(ErrorCode::Representation,
             "digit " + std::to_string(d) + " out of range for base " +
                 std::to_string(base));
  std::sort(words.begin(), words.end());
  // Sorted order puts a prefix directly before its extensions.
  std::vector<Digits> kept;
  kept.reserve(words.size());
  for (Digits& w : words) {
    if (!kept.empty() && is_prefix(kept.back(), w)) continue;
    kept.push_back(std::move(w));
  }
  std::vector<Digits> out;
  Digits prefix;
  reduce_rec(kept, 0, prefix, base, out);
  return ClopenSet(base, std::move(out));
}

ClopenSet ClopenSet::canonicalize(int base, std::span<const Word> words) {
  std::vector<Digits> raw;
  raw.reserve(words.size());
  for (const Word& w : words) {
    if (w.base != base)
      fail(ErrorCode::Representation,
           "word " + digits_to_string(w.digits) + " has base " +
               std::to_string(w.base) + ", expected " + std::to_string(base));
    raw.push_back(w.digits);
  }
  return canonicalize(base, std::move(raw));
}

std::size_t ClopenSet::depth() const noexcept {
  std::size_t d = 0;
  for (const Digits& w : words_) d = std::max(d, w.size());
  return d;
}

bool ClopenSet::contains_cylinder(const Digits& w) const noexcept {
  // The only candidate is the greatest word <= w.
  auto it = std::upper_bound(words_.begin(), words_.end(), w);
  return it != words_.begin() && is_prefix(*std::prev(it), w);
}

bool ClopenSet::meets_cylinder(const Digits& w) const noexcept {
  if (contains_cylinder(w)) return true;
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  return it != words_.end() && is_prefix(w, *it);
}

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b) {
  require_same_base(a, b);
  std::vector<Digits> out;
  Digits prefix;
  combine_rec(BinaryOp::Union, a.words_, b.words_, 0, prefix, a.base_, out);
  return ClopenSet(a.base_, std::move(out));
}

ClopenSet intersection(const ClopenSet& a, const ClopenSet& b) {
  require_same_base(a, b);
  std::vector<Digits> out;
  Digits prefix;
  combine_rec(BinaryOp::Intersect, a.words_, b.words_, 0, prefix, a.base_,
              out);
  return ClopenSet(a.base_, std::move(out));
}

ClopenSet difference(const ClopenSet& a, const ClopenSet& b) {
  require_same_base(a, b);
  std::vector<Digits> out;
  Digits prefix;
  combine_rec(BinaryOp::Difference, a.words_, b.words_, 0, prefix, a.base_,
              out);
  return ClopenSet(a.base_, std::move(out));
}

ClopenSet complement(const ClopenSet& a) {
  std::vector<Digits> out;
  Digits prefix;
  complement_rec(a.words_, 0, prefix, a.base_, out);
  return ClopenSet(a.base_, std::move(out));
}

bool is_subset(const ClopenSet& a, const ClopenSet& b) {
  return difference(a, b).is_empty();
}

std::vector<Digits> refine_to_depth(const ClopenSet& a, std::size_t k) {
  if (a.depth() > k)
    fail(ErrorCode::Depth, "cannot refine a set of depth " +
                               std::to_string(a.depth()) + " to depth " +
                               std::to_string(k));
  std::vector<Digits> out;
  for (const Digits& w : a.words()) {
    for (Digits& tail : all_words(a.base(), k - w.size())) {
      Digits full = w;
      full.insert(full.end(), tail.begin(), tail.end());
      out.push_back(std::move(full));
    }
  }
  return out;
}

Digits digit_flip(int base, const Digits& w) {
  Digits out(w.size());
  std::transform(w.begin(), w.end(), out.begin(), [base](Digit d) {
    return static_cast<Digit>(base - 1 - d);
  });
  return out;
}

ClopenSet digit_flip(const ClopenSet& a) {
  std::vector<Digits> words;
  words.reserve(a.words().size());
  for (const Digits& w : a.words()) words.push_back(digit_flip(a.base(), w));
  return ClopenSet::canonicalize(a.base(), std::move(words));
}

}  // namespace tfg
