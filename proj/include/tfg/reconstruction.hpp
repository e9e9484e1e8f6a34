#pragma once

// Spatial realization of a black-box isomorphism between two full groups.
//
// The engine only ever calls alpha.apply / alpha.inverse_apply. Lambda on a
// clopen V is recovered as the union of the supports of alpha(pi) over the
// pair-swap involutions pi supported in V; the resulting cylinder map is then
// checked to be a Boolean isomorphism that conjugates alpha(g) to g.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/full_group.hpp"
#include "tfg/odometer.hpp"

namespace tfg {

struct IsomorphismOracle {
  int domain_base = 2;
  int codomain_base = 2;
  std::function<FullGroupElement(const FullGroupElement&)> apply;
  std::function<FullGroupElement(const FullGroupElement&)> inverse_apply;
};

/// Images of every depth-d cylinder of the domain.
class BooleanMap {
 public:
  BooleanMap(int domain_base, int codomain_base, std::size_t depth,
             std::map<Digits, ClopenSet> images);

  int domain_base() const noexcept { return domain_base_; }
  int codomain_base() const noexcept { return codomain_base_; }
  std::size_t depth() const noexcept { return depth_; }
  const std::map<Digits, ClopenSet>& images() const noexcept { return images_; }

  /// Image of one depth-d cylinder.
  const ClopenSet& at(const Digits& w) const;
  /// Image of a clopen set of depth <= d.
  ClopenSet apply(const ClopenSet& a) const;

  friend bool operator==(const BooleanMap&, const BooleanMap&) = default;

 private:
  int domain_base_;
  int codomain_base_;
  std::size_t depth_;
  std::map<Digits, ClopenSet> images_;
};

/// Nonempty images, pairwise disjoint, covering the codomain. Returns the
/// first violation found.
std::optional<std::string> boolean_map_violation(const BooleanMap& map);

/// Union of supp(alpha(pi)) over the pair swaps of depth `depth` inside v.
/// The result must not change at depth + 1 (OracleInconsistency otherwise);
/// an oracle that fails or returns a non-involution raises
/// NotSpatiallyConsistent.
ClopenSet lambda_of_clopen(const IsomorphismOracle& alpha, const ClopenSet& v,
                           std::size_t depth);

/// Throws NotSpatiallyConsistent when the images are not a Boolean
/// isomorphism at this depth or disagree with the depth + 1 refinement.
BooleanMap reconstruct_boolean_map(const IsomorphismOracle& alpha,
                                   std::size_t depth);

struct CheckReport {
  bool ok = true;
  std::string detail;
};

/// spr(alpha(pi)) = Lambda(spr(pi)), and alpha maps `samples` random members
/// of W_pi into W_alpha(pi).
CheckReport verify_w_pi_correspondence(const IsomorphismOracle& alpha,
                                       const FullGroupElement& pi,
                                       std::size_t samples, std::uint64_t seed);

/// alpha(g) o Lambda = Lambda o g on cylinders. Tests deeper than the map are
/// handled by reconstructing a finer map through alpha and checking it
/// refines `map`.
CheckReport verify_conjugacy(const IsomorphismOracle& alpha, const BooleanMap& map,
                             const std::vector<FullGroupElement>& tests);

/// For each (x, g), the images of x and g(x) under Lambda (extracted as
/// nested cylinder intersections) lie in one codomain orbit, offset by the
/// power alpha(g) uses at Lambda(x). Throws Resolution when an image point
/// cannot be pinned down.
CheckReport verify_orbit_equivalence(
    const IsomorphismOracle& alpha, const BooleanMap& map,
    const std::vector<std::pair<Point, FullGroupElement>>& pairs);

/// Digits of Lambda(x) obtained by shrinking cylinders around x; exposed for
/// tests. Throws Resolution on failure.
Digits image_point_digits(const IsomorphismOracle& alpha, const Point& x,
                          std::size_t digits);

/// Number of image digits the engine extracts for a base.
std::size_t image_resolution(int base);

/// The eventually periodic point with the shortest description matching all
/// of `digits`, with the period seen at least twice.
std::optional<Point> guess_point(int base, const Digits& digits);

}  // namespace tfg
