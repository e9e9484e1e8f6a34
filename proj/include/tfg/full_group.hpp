#pragma once

// Elements of the topological full group of the base-p odometer, as finite
// tables: a partition of X into cylinders, each acting by a fixed power of
// the odometer.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/odometer.hpp"

namespace tfg {

/// "Act as sigma^power on [word]".
struct Cell {
  Digits word;
  std::int64_t power = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

class FullGroupElement {
 public:
  static FullGroupElement identity(int base);
  /// sigma^n on all of X.
  static FullGroupElement shift(int base, std::int64_t n);

  /// Validates that the cells and their images both partition X, then merges
  /// sibling cells with equal powers. Throws Representation otherwise.
  static FullGroupElement from_table(int base, std::vector<Cell> cells);

  int base() const noexcept { return base_; }
  OdometerSystem system() const { return OdometerSystem(base_); }
  /// Sorted by word; the words form the canonical partition.
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t depth() const noexcept;
  bool is_identity() const noexcept;

  /// Power used on the cell containing [w], if [w] lies inside one cell.
  std::optional<std::int64_t> power_on(const Digits& w) const;
  std::int64_t power_at(const Point& x) const;
  Point operator()(const Point& x) const;

  friend bool operator==(const FullGroupElement&, const FullGroupElement&) = default;

 private:
  FullGroupElement(int base, std::vector<Cell> cells)
      : base_(base), cells_(std::move(cells)) {}

  // Sorts and merges; the caller guarantees a bijective partition.
  static FullGroupElement normalized(int base, std::vector<Cell> cells);

  int base_;
  std::vector<Cell> cells_;

  friend FullGroupElement compose(const FullGroupElement&, const FullGroupElement&);
  friend FullGroupElement invert(const FullGroupElement&);
  friend FullGroupElement conjugate(const FullGroupElement&, const FullGroupElement&);
  friend FullGroupElement pair_swap(int, const Digits&, const Digits&);
  friend FullGroupElement restrict(const FullGroupElement&, const ClopenSet&);
  friend FullGroupElement digit_flip(const FullGroupElement&);
};

/// x -> g(h(x)).
FullGroupElement compose(const FullGroupElement& g, const FullGroupElement& h);
FullGroupElement invert(const FullGroupElement& g);
/// h g h^-1
FullGroupElement conjugate(const FullGroupElement& h, const FullGroupElement& g);

/// The clopen set of moved points (equal to its regular-open support, since
/// the odometer acts freely).
ClopenSet support(const FullGroupElement& g);

/// Image of a clopen set under g.
ClopenSet image(const FullGroupElement& g, const ClopenSet& a);

/// Order exactly 2; the identity is not an involution.
bool is_involution(const FullGroupElement& g);
std::optional<int> order_upto(const FullGroupElement& g, int limit);

/// The involution exchanging the distinct same-depth cylinders [w1] and [w2]
/// by sigma^n and sigma^-n with n = value(w2) - value(w1) mod p^k.
FullGroupElement pair_swap(int base, const Digits& w1, const Digits& w2);

/// A nontrivial involution supported in `a`: the swap of the two
/// lexicographically smallest cylinders of `a` at the least depth offering
/// two. Throws Precondition when `a` is empty.
FullGroupElement make_involution(const ClopenSet& a);

/// Every pair swap of distinct depth-`depth` cylinders inside `a`. Their
/// supports cover `a`. Throws Depth when depth < a.depth() and Precondition
/// when fewer than two cylinders are available.
std::vector<FullGroupElement> involutions_covering(const ClopenSet& a,
                                                   std::size_t depth);

/// g on `v`, identity elsewhere. Throws Invariance unless g(v) = v.
FullGroupElement restrict(const FullGroupElement& g, const ClopenSet& v);

/// Conjugate by the coordinatewise flip d -> (p-1) - d; sigma^n becomes
/// sigma^-n.
FullGroupElement digit_flip(const FullGroupElement& g);

/// A union/intersection expression whose leaves are involution supports.
struct SupportExpression {
  enum class Kind { Support, Union, Intersection };

  Kind kind = Kind::Support;
  std::vector<FullGroupElement> involution;  // one entry for Support leaves
  std::vector<SupportExpression> children;
};

/// Writes `a` (nonempty) as a union of intersections of involution supports.
/// A single cylinder [w1] is supp(w1<->w2) n supp(w1<->w3).
SupportExpression express_by_involution_supports(const ClopenSet& a);
ClopenSet evaluate(const SupportExpression& e, int base);

/// Subgroups named by the criterion machinery: Gamma_V, W_pi = Gamma_spr(pi)
/// and R_V = <Gamma_V, Gamma_{X-V}>.
class SubgroupDescriptor {
 public:
  struct GammaOf { ClopenSet set; };
  struct WOf { FullGroupElement involution; };
  struct ROf { ClopenSet set; };

  static SubgroupDescriptor gamma(ClopenSet v) { return {GammaOf{std::move(v)}}; }
  static SubgroupDescriptor w(FullGroupElement pi);
  static SubgroupDescriptor r(ClopenSet v) { return {ROf{std::move(v)}}; }

  bool contains(const FullGroupElement& g) const;
  const std::variant<GammaOf, WOf, ROf>& kind() const noexcept { return kind_; }

 private:
  SubgroupDescriptor(std::variant<GammaOf, WOf, ROf> k) : kind_(std::move(k)) {}
  std::variant<GammaOf, WOf, ROf> kind_;
};

}  // namespace tfg
