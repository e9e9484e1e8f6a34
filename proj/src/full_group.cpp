#include "tfg/full_group.hpp"

#include <algorithm>
#include <limits>

#include "tfg/error.hpp"

namespace tfg {

namespace {

using CellSpan = std::span<const Cell>;

bool word_less(const Cell& a, const Cell& b) { return a.word < b.word; }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    fail(ErrorCode::Representation, "odometer power overflows 64 bits");
  return r;
}

std::int64_t checked_negate(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::Representation, "odometer power overflows 64 bits");
  return -a;
}

CellSpan child(CellSpan s, std::size_t off, Digit d) {
  auto lo = std::partition_point(s.begin(), s.end(),
                                 [&](const Cell& c) { return c.word[off] < d; });
  auto hi = std::partition_point(lo, s.end(),
                                 [&](const Cell& c) { return c.word[off] <= d; });
  return {lo, hi};
}

void merge_rec(CellSpan s, std::size_t off, Digits& prefix, int base,
               std::vector<Cell>& out) {
  if (s.empty()) return;
  if (s.front().word.size() == off) {
    out.push_back(s.front());
    return;
  }
  const std::size_t start = out.size();
  for (int d = 0; d < base; ++d) {
    const auto digit = static_cast<Digit>(d);
    prefix.push_back(digit);
    merge_rec(child(s, off, digit), off + 1, prefix, base, out);
    prefix.pop_back();
  }
  if (out.size() - start != static_cast<std::size_t>(base)) return;
  const std::int64_t power = out[start].power;
  for (std::size_t i = start; i < out.size(); ++i)
    if (out[i].word.size() != off + 1 || out[i].power != power) return;
  out.resize(start);
  out.push_back(Cell{prefix, power});
}

// Throws unless `words` (sorted) are non-nested and cover X.
void require_partition(int base, const std::vector<Digits>& words,
                       const char* what) {
  for (std::size_t i = 1; i < words.size(); ++i)
    if (is_prefix(words[i - 1], words[i]))
      fail(ErrorCode::Representation,
           std::string(what) + " cells overlap at " +
               digits_to_string(words[i - 1]) + " and " +
               digits_to_string(words[i]));
  if (!ClopenSet::canonicalize(base, words).is_full())
    fail(ErrorCode::Representation, std::string(what) + " cells do not cover X");
}

// Index of the cell whose word is a prefix of w, if any.
const Cell* cell_containing(const std::vector<Cell>& cells, const Digits& w) {
  auto it = std::upper_bound(cells.begin(), cells.end(), w,
                             [](const Digits& x, const Cell& c) { return x < c.word; });
  if (it == cells.begin()) return nullptr;
  const Cell& c = *std::prev(it);
  return is_prefix(c.word, w) ? &c : nullptr;
}

// Cells whose words extend w.
CellSpan cells_below(const std::vector<Cell>& cells, const Digits& w) {
  auto lo = std::lower_bound(cells.begin(), cells.end(), w,
                             [](const Cell& c, const Digits& x) { return c.word < x; });
  auto hi = lo;
  while (hi != cells.end() && is_prefix(w, hi->word)) ++hi;
  return {lo, hi};
}

void require_same_base(int a, int b) {
  if (a != b)
    fail(ErrorCode::Representation, "elements over different bases (" +
                                        std::to_string(a) + " and " +
                                        std::to_string(b) + ")");
}

}  // namespace

FullGroupElement FullGroupElement::identity(int base) { return shift(base, 0); }

FullGroupElement FullGroupElement::shift(int base, std::int64_t n) {
  check_base(base);
  return FullGroupElement(base, {Cell{Digits{}, n}});
}

FullGroupElement FullGroupElement::normalized(int base, std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end(), word_less);
  std::vector<Cell> out;
  out.reserve(cells.size());
  Digits prefix;
  merge_rec(cells, 0, prefix, base, out);
  return FullGroupElement(base, std::move(out));
}

FullGroupElement FullGroupElement::from_table(int base, std::vector<Cell> cells) {
  check_base(base);
  const OdometerSystem sys(base);
  std::vector<Digits> words, images;
  words.reserve(cells.size());
  images.reserve(cells.size());
  for (const Cell& c : cells) {
    for (Digit d : c.word)
      if (d >= base)
        fail(ErrorCode::Representation,
             "digit " + std::to_string(d) + " out of range for base " +
                 std::to_string(base));
    words.push_back(c.word);
    images.push_back(sys.cylinder_image(c.power, c.word));
  }
  std::sort(words.begin(), words.end());
  std::sort(images.begin(), images.end());
  require_partition(base, words, "table");
  require_partition(base, images, "image");
  return normalized(base, std::move(cells));
}

std::size_t FullGroupElement::depth() const noexcept {
  std::size_t d = 0;
  for (const Cell& c : cells_) d = std::max(d, c.word.size());
  return d;
}

bool FullGroupElement::is_identity() const noexcept {
  return cells_.size() == 1 && cells_.front().power == 0;
}

std::optional<std::int64_t> FullGroupElement::power_on(const Digits& w) const {
  if (const Cell* c = cell_containing(cells_, w)) return c->power;
  return std::nullopt;
}

std::int64_t FullGroupElement::power_at(const Point& x) const {
  if (x.base() != base_)
    fail(ErrorCode::Representation, "point base differs from element base");
  return *power_on(x.prefix(depth()));
}

Point FullGroupElement::operator()(const Point& x) const {
  return system().apply_power(power_at(x), x);
}

FullGroupElement compose(const FullGroupElement& g, const FullGroupElement& h) {
  require_same_base(g.base_, h.base_);
  const OdometerSystem sys(g.base_);
  std::vector<Cell> out;
  for (const Cell& hc : h.cells_) {
    const Digits target = sys.cylinder_image(hc.power, hc.word);
    if (const Cell* gc = cell_containing(g.cells_, target)) {
      out.push_back(Cell{hc.word, checked_add(hc.power, gc->power)});
      continue;
    }
    // g is finer than h(hc) here; pull g's cells back through sigma^power.
    for (const Cell& gc : cells_below(g.cells_, target))
      out.push_back(Cell{sys.cylinder_image(checked_negate(hc.power), gc.word),
                         checked_add(hc.power, gc.power)});
  }
  return FullGroupElement::normalized(g.base_, std::move(out));
}

FullGroupElement invert(const FullGroupElement& g) {
  const OdometerSystem sys(g.base_);
  std::vector<Cell> out;
  out.reserve(g.cells_.size());
  for (const Cell& c : g.cells_)
    out.push_back(Cell{sys.cylinder_image(c.power, c.word), checked_negate(c.power)});
  return FullGroupElement::normalized(g.base_, std::move(out));
}

namespace {

// Pieces of the cylinder [w] on which g acts by a single power.
std::vector<Cell> pieces_of(const FullGroupElement& g, const Digits& w) {
  if (auto n = g.power_on(w)) return {Cell{w, *n}};
  const auto below = cells_below(g.cells(), w);
  return {below.begin(), below.end()};
}

}  // namespace

FullGroupElement conjugate(const FullGroupElement& h, const FullGroupElement& g) {
  require_same_base(h.base(), g.base());
  // h g h^-1 is the identity off h(supp g); only g's moved cells are traced.
  const OdometerSystem sys(g.base());
  std::vector<Cell> out;
  std::vector<Digits> moved;
  for (const Cell& gc : g.cells()) {
    if (gc.power == 0) continue;
    for (const Cell& q : pieces_of(h, gc.word)) {
      const Digits landed = sys.cylinder_image(gc.power, q.word);
      for (const Cell& r : pieces_of(h, landed)) {
        const Digits source = sys.cylinder_image(checked_negate(gc.power), r.word);
        Digits target = sys.cylinder_image(q.power, source);
        const std::int64_t power =
            checked_add(checked_add(checked_negate(q.power), gc.power), r.power);
        moved.push_back(target);
        out.push_back(Cell{std::move(target), power});
      }
    }
  }
  const ClopenSet rest = complement(ClopenSet::canonicalize(g.base(), std::move(moved)));
  for (const Digits& w : rest.words()) out.push_back(Cell{w, 0});
  return FullGroupElement::normalized(g.base(), std::move(out));
}

ClopenSet support(const FullGroupElement& g) {
  std::vector<Digits> moved;
  for (const Cell& c : g.cells())
    if (c.power != 0) moved.push_back(c.word);
  return ClopenSet::canonicalize(g.base(), std::move(moved));
}

ClopenSet image(const FullGroupElement& g, const ClopenSet& a) {
  require_same_base(g.base(), a.base());
  const OdometerSystem sys(g.base());
  std::vector<Digits> out;
  for (const Digits& u : a.words()) {
    if (auto n = g.power_on(u)) {
      out.push_back(sys.cylinder_image(*n, u));
      continue;
    }
    for (const Cell& c : cells_below(g.cells(), u))
      out.push_back(sys.cylinder_image(c.power, c.word));
  }
  return ClopenSet::canonicalize(g.base(), std::move(out));
}

bool is_involution(const FullGroupElement& g) {
  return !g.is_identity() && compose(g, g).is_identity();
}

std::optional<int> order_upto(const FullGroupElement& g, int limit) {
  FullGroupElement power = g;
  for (int k = 1; k <= limit; ++k) {
    if (power.is_identity()) return k;
    power = compose(g, power);
  }
  return std::nullopt;
}

FullGroupElement pair_swap(int base, const Digits& w1, const Digits& w2) {
  check_base(base);
  if (w1.size() != w2.size() || w1 == w2)
    fail(ErrorCode::Precondition,
         "pair swap needs two distinct words of equal length, got " +
             digits_to_string(w1) + " and " + digits_to_string(w2));
  // (w2 - w1) mod p^k, digit by digit.
  Digits diff(w1.size());
  int borrow = 0;
  for (std::size_t i = 0; i < w1.size(); ++i) {
    int d = static_cast<int>(w2[i]) - static_cast<int>(w1[i]) - borrow;
    borrow = d < 0 ? 1 : 0;
    diff[i] = static_cast<Digit>(d + borrow * base);
  }
  const std::int64_t n = word_value(base, diff);
  std::vector<Cell> cells{Cell{w1, n}, Cell{w2, -n}};
  const ClopenSet rest = complement(ClopenSet::canonicalize(base, {w1, w2}));
  for (const Digits& w : rest.words()) cells.push_back(Cell{w, 0});
  return FullGroupElement::normalized(base, std::move(cells));
}

FullGroupElement make_involution(const ClopenSet& a) {
  if (a.is_empty())
    fail(ErrorCode::Precondition, "cannot build an involution supported in the empty set");
  for (std::size_t k = a.depth();; ++k) {
    const auto words = refine_to_depth(a, k);
    if (words.size() >= 2) return pair_swap(a.base(), words[0], words[1]);
  }
}

std::vector<FullGroupElement> involutions_covering(const ClopenSet& a,
                                                   std::size_t depth) {
  const auto words = refine_to_depth(a, depth);
  if (words.size() < 2)
    fail(ErrorCode::Precondition,
         "need at least two depth-" + std::to_string(depth) +
             " cylinders inside the set, found " + std::to_string(words.size()));
  std::vector<FullGroupElement> out;
  out.reserve(words.size() * (words.size() - 1) / 2);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      out.push_back(pair_swap(a.base(), words[i], words[j]));
  return out;
}

FullGroupElement restrict(const FullGroupElement& g, const ClopenSet& v) {
  require_same_base(g.base_, v.base());
  if (image(g, v) != v)
    fail(ErrorCode::Invariance, "element does not map the set onto itself");
  std::vector<Cell> out;
  for (const Cell& c : g.cells_) {
    if (c.power == 0) {
      out.push_back(c);
      continue;
    }
    const ClopenSet cyl = ClopenSet::cylinder(g.base_, c.word);
    const ClopenSet moved = intersection(cyl, v);
    const ClopenSet fixed = difference(cyl, v);
    for (const Digits& w : moved.words()) out.push_back(Cell{w, c.power});
    for (const Digits& w : fixed.words()) out.push_back(Cell{w, 0});
  }
  return FullGroupElement::normalized(g.base_, std::move(out));
}

FullGroupElement digit_flip(const FullGroupElement& g) {
  std::vector<Cell> out;
  out.reserve(g.cells_.size());
  for (const Cell& c : g.cells_)
    out.push_back(Cell{digit_flip(g.base_, c.word), checked_negate(c.power)});
  return FullGroupElement::normalized(g.base_, std::move(out));
}

SupportExpression express_by_involution_supports(const ClopenSet& a) {
  if (a.is_empty())
    fail(ErrorCode::Precondition, "the empty set is the empty union; nothing to express");
  const int p = a.base();
  auto leaf = [p](const Digits& w1, const Digits& w2) {
    SupportExpression e;
    e.kind = SupportExpression::Kind::Support;
    e.involution.push_back(pair_swap(p, w1, w2));
    return e;
  };

  std::size_t k = std::max<std::size_t>(a.depth(), 1);
  auto words = refine_to_depth(a, k);
  if (words.size() == 2) return leaf(words[0], words[1]);

  // Each cylinder needs two other cylinders of its depth.
  while (checked_power(p, k) < 3) ++k;
  words = refine_to_depth(a, k);
  if (words.size() == 2) return leaf(words[0], words[1]);

  const auto everything = all_words(p, k);
  std::vector<SupportExpression> pieces;
  for (const Digits& w1 : words) {
    std::vector<const Digits*> others;
    for (const Digits& w : everything) {
      if (w != w1) others.push_back(&w);
      if (others.size() == 2) break;
    }
    SupportExpression cyl;
    cyl.kind = SupportExpression::Kind::Intersection;
    cyl.children.push_back(leaf(w1, *others[0]));
    cyl.children.push_back(leaf(w1, *others[1]));
    pieces.push_back(std::move(cyl));
  }
  if (pieces.size() == 1) return std::move(pieces.front());
  SupportExpression u;
  u.kind = SupportExpression::Kind::Union;
  u.children = std::move(pieces);
  return u;
}

ClopenSet evaluate(const SupportExpression& e, int base) {
  switch (e.kind) {
    case SupportExpression::Kind::Support:
      if (e.involution.size() != 1)
        fail(ErrorCode::InvalidArgument, "support leaf without an involution");
      return support(e.involution.front());
    case SupportExpression::Kind::Union: {
      ClopenSet acc = ClopenSet::empty(base);
      for (const auto& c : e.children) acc = set_union(acc, evaluate(c, base));
      return acc;
    }
    case SupportExpression::Kind::Intersection: {
      ClopenSet acc = ClopenSet::full(base);
      for (const auto& c : e.children) acc = intersection(acc, evaluate(c, base));
      return acc;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown expression node");
}

SubgroupDescriptor SubgroupDescriptor::w(FullGroupElement pi) {
  if (!is_involution(pi))
    fail(ErrorCode::Precondition, "W_pi needs an involution");
  return {WOf{std::move(pi)}};
}

bool SubgroupDescriptor::contains(const FullGroupElement& g) const {
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GammaOf>) {
          return is_subset(support(g), k.set);
        } else if constexpr (std::is_same_v<K, WOf>) {
          return is_subset(support(g), support(k.involution));
        } else {
          return image(g, k.set) == k.set;
        }
      },
      kind_);
}

}  // namespace tfg
