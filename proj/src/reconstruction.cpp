#include "tfg/reconstruction.hpp"

#include <algorithm>
#include <exception>

#include "tfg/error.hpp"
#include "tfg/random.hpp"
#include "tfg/toolkit.hpp"

namespace tfg {

namespace {

FullGroupElement call_oracle(const IsomorphismOracle& alpha,
                             const FullGroupElement& g) {
  if (!alpha.apply) fail(ErrorCode::InvalidArgument, "oracle has no apply function");
  FullGroupElement out = [&] {
    try {
      return alpha.apply(g);
    } catch (const std::exception& e) {
      fail(ErrorCode::NotSpatiallyConsistent,
           std::string("oracle failed on a query: ") + e.what());
    }
  }();
  if (out.base() != alpha.codomain_base)
    fail(ErrorCode::NotSpatiallyConsistent,
         "oracle returned an element over base " + std::to_string(out.base()) +
             ", expected " + std::to_string(alpha.codomain_base));
  return out;
}

ClopenSet support_union(const IsomorphismOracle& alpha, const ClopenSet& v,
                        std::size_t depth) {
  ClopenSet acc = ClopenSet::empty(alpha.codomain_base);
  for (const FullGroupElement& pi : involutions_covering(v, depth)) {
    const FullGroupElement img = call_oracle(alpha, pi);
    if (!is_involution(img))
      fail(ErrorCode::NotSpatiallyConsistent,
           "oracle maps an involution to an element of a different order");
    acc = set_union(acc, support(img));
  }
  return acc;
}

Digits common_prefix(const ClopenSet& s) {
  const auto& words = s.words();
  Digits out = words.front();
  for (const Digits& w : words) {
    std::size_t i = 0;
    while (i < out.size() && i < w.size() && out[i] == w[i]) ++i;
    out.resize(i);
  }
  return out;
}

// Deepest cylinder the engine may query for this base: pair swaps two levels
// further down must keep their powers (and sums of a few of them) in 64 bits.
std::size_t max_query_depth(int base) {
  std::size_t e = 0;
  std::int64_t r = 1;
  while (!__builtin_mul_overflow(r, static_cast<std::int64_t>(base), &r)) ++e;
  return e - 4;
}

std::string describe(const Digits& w) { return "[" + digits_to_string(w) + "]"; }

}  // namespace

BooleanMap::BooleanMap(int domain_base, int codomain_base, std::size_t depth,
                       std::map<Digits, ClopenSet> images)
    : domain_base_(domain_base),
      codomain_base_(codomain_base),
      depth_(depth),
      images_(std::move(images)) {
  check_base(domain_base);
  check_base(codomain_base);
  const auto words = all_words(domain_base, depth);
  if (images_.size() != words.size())
    fail(ErrorCode::Representation,
         "boolean map at depth " + std::to_string(depth) + " needs " +
             std::to_string(words.size()) + " images, got " +
             std::to_string(images_.size()));
  for (const Digits& w : words) {
    auto it = images_.find(w);
    if (it == images_.end())
      fail(ErrorCode::Representation, "boolean map has no image for " + describe(w));
    if (it->second.base() != codomain_base)
      fail(ErrorCode::Representation, "image of " + describe(w) + " has the wrong base");
  }
}

const ClopenSet& BooleanMap::at(const Digits& w) const {
  auto it = images_.find(w);
  if (it == images_.end())
    fail(ErrorCode::Depth, "no image for cylinder " + describe(w) + " at depth " +
                               std::to_string(depth_));
  return it->second;
}

ClopenSet BooleanMap::apply(const ClopenSet& a) const {
  if (a.base() != domain_base_)
    fail(ErrorCode::Representation, "set base differs from the map's domain");
  ClopenSet acc = ClopenSet::empty(codomain_base_);
  for (const Digits& w : refine_to_depth(a, depth_)) acc = set_union(acc, at(w));
  return acc;
}

std::optional<std::string> boolean_map_violation(const BooleanMap& map) {
  ClopenSet covered = ClopenSet::empty(map.codomain_base());
  for (const auto& [w, img] : map.images()) {
    if (img.is_empty()) return "image of " + describe(w) + " is empty";
    if (!intersection(covered, img).is_empty())
      return "image of " + describe(w) + " overlaps an earlier image";
    covered = set_union(covered, img);
  }
  if (!covered.is_full()) return std::string("images do not cover the codomain");
  return std::nullopt;
}

ClopenSet lambda_of_clopen(const IsomorphismOracle& alpha, const ClopenSet& v,
                           std::size_t depth) {
  if (v.base() != alpha.domain_base)
    fail(ErrorCode::Representation, "set base differs from the oracle's domain");
  if (v.is_empty()) return ClopenSet::empty(alpha.codomain_base);
  ClopenSet coarse = support_union(alpha, v, depth);
  if (support_union(alpha, v, depth + 1) != coarse)
    fail(ErrorCode::OracleInconsistency,
         "Lambda(V) changes between depth " + std::to_string(depth) + " and " +
             std::to_string(depth + 1));
  return coarse;
}

BooleanMap reconstruct_boolean_map(const IsomorphismOracle& alpha,
                                   std::size_t depth) {
  if (depth < 1) fail(ErrorCode::Precondition, "reconstruction depth must be at least 1");
  const int p = alpha.domain_base;
  auto lambda = [&](const Digits& w, std::size_t k) {
    try {
      return lambda_of_clopen(alpha, ClopenSet::cylinder(p, w), k);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OracleInconsistency)
        fail(ErrorCode::NotSpatiallyConsistent, e.what());
      throw;
    }
  };

  std::map<Digits, ClopenSet> images;
  for (Digits& w : all_words(p, depth)) {
    ClopenSet img = lambda(w, depth + 1);
    images.emplace(std::move(w), std::move(img));
  }
  BooleanMap map(p, alpha.codomain_base, depth, std::move(images));
  if (auto why = boolean_map_violation(map))
    fail(ErrorCode::NotSpatiallyConsistent, "not a Boolean isomorphism: " + *why);

  for (const auto& [w, img] : map.images()) {
    ClopenSet refined = ClopenSet::empty(alpha.codomain_base);
    for (int d = 0; d < p; ++d) {
      Digits c = w;
      c.push_back(static_cast<Digit>(d));
      refined = set_union(refined, lambda(c, depth + 2));
    }
    if (refined != img)
      fail(ErrorCode::NotSpatiallyConsistent,
           "image of " + describe(w) + " disagrees with its refinement");
  }
  return map;
}

CheckReport verify_w_pi_correspondence(const IsomorphismOracle& alpha,
                                       const FullGroupElement& pi,
                                       std::size_t samples, std::uint64_t seed) {
  if (!is_involution(pi))
    fail(ErrorCode::Precondition, "W_pi correspondence needs an involution");
  try {
    const ClopenSet spr = support(pi);
    const FullGroupElement image_pi = call_oracle(alpha, pi);
    const ClopenSet image_spr = support(image_pi);
    const ClopenSet lam = lambda_of_clopen(alpha, spr, spr.depth() + 1);
    if (image_spr != lam)
      return {false, "spr(alpha(pi)) differs from Lambda(spr(pi))"};
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const FullGroupElement g = random_element_inside(spr, 2, rng);
      if (!in_gamma(call_oracle(alpha, g), image_spr))
        return {false, "sample " + std::to_string(i) +
                           ": alpha(g) leaves W_alpha(pi) for g in W_pi"};
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Precondition || e.code() == ErrorCode::Representation)
      throw;
    return {false, e.what()};
  }
  return {};
}

CheckReport verify_conjugacy(const IsomorphismOracle& alpha, const BooleanMap& map,
                             const std::vector<FullGroupElement>& tests) {
  if (auto why = boolean_map_violation(map)) return {false, *why};
  std::size_t depth = map.depth();
  for (const auto& g : tests) depth = std::max(depth, g.depth());

  try {
    const BooleanMap fine =
        depth == map.depth() ? map : reconstruct_boolean_map(alpha, depth);
    if (depth != map.depth())
      for (const auto& [w, img] : map.images())
        if (fine.apply(ClopenSet::cylinder(map.domain_base(), w)) != img)
          return {false, "map disagrees with the oracle on " + describe(w)};

    const OdometerSystem sys(map.domain_base());
    for (std::size_t t = 0; t < tests.size(); ++t) {
      const FullGroupElement& g = tests[t];
      const FullGroupElement image_g = call_oracle(alpha, g);
      for (const auto& [w, img] : fine.images()) {
        const Digits target = sys.cylinder_image(*g.power_on(w), w);
        if (image(image_g, img) != fine.at(target))
          return {false, "test " + std::to_string(t) + ": alpha(g) Lambda" +
                             describe(w) + " != Lambda g" + describe(w)};
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Representation) throw;
    return {false, e.what()};
  }
  return {};
}

std::size_t image_resolution(int base) {
  return std::min<std::size_t>(48, max_query_depth(base) - 4);
}

Digits image_point_digits(const IsomorphismOracle& alpha, const Point& x,
                          std::size_t digits) {
  if (x.base() != alpha.domain_base)
    fail(ErrorCode::Representation, "point base differs from the oracle's domain");
  const std::size_t limit = max_query_depth(alpha.domain_base);
  Digits pinned;
  // Successive images must nest, which stands in for the per-level
  // depth + 1 stability check of lambda_of_clopen.
  for (std::size_t d = 1; d <= limit; ++d) {
    const ClopenSet s =
        support_union(alpha, ClopenSet::cylinder(x.base(), x.prefix(d)), d + 1);
    if (s.is_empty())
      fail(ErrorCode::Resolution, "image of a cylinder around the point is empty");
    Digits common = common_prefix(s);
    if (!is_prefix(pinned, common))
      fail(ErrorCode::Resolution, "image cylinders are not nested");
    pinned = std::move(common);
    if (pinned.size() >= digits) {
      pinned.resize(digits);
      return pinned;
    }
  }
  fail(ErrorCode::Resolution,
       "image point not pinned to " + std::to_string(digits) + " digits by depth " +
           std::to_string(limit));
}

std::optional<Point> guess_point(int base, const Digits& digits) {
  const std::size_t m = digits.size();
  for (std::size_t total = 1; total <= m; ++total) {
    for (std::size_t per = 1; per <= total; ++per) {
      const std::size_t pre = total - per;
      if (pre + 2 * per > m) continue;
      bool ok = true;
      for (std::size_t i = pre + per; i < m && ok; ++i) ok = digits[i] == digits[i - per];
      if (!ok) continue;
      return Point(base, Digits(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(pre)),
                   Digits(digits.begin() + static_cast<std::ptrdiff_t>(pre),
                          digits.begin() + static_cast<std::ptrdiff_t>(pre + per)));
    }
  }
  return std::nullopt;
}

CheckReport verify_orbit_equivalence(
    const IsomorphismOracle& alpha, const BooleanMap& map,
    const std::vector<std::pair<Point, FullGroupElement>>& pairs) {
  if (auto why = boolean_map_violation(map)) return {false, *why};
  const int q = alpha.codomain_base;
  const std::size_t m = image_resolution(q);
  const OdometerSystem codomain(q);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, g] = pairs[i];
    const Point y = g(x);
    const std::string tag = "pair " + std::to_string(i) + ": ";

    const Digits image_x = image_point_digits(alpha, x, m);
    const Digits image_y = image_point_digits(alpha, y, m);
    for (const auto& [pt, img] : {std::pair{&x, &image_x}, std::pair{&y, &image_y}}) {
      const ClopenSet& cell = map.at(pt->prefix(map.depth()));
      if (cell.depth() > m)
        fail(ErrorCode::Resolution, "map images are deeper than the image resolution");
      if (!cell.contains_cylinder(*img))
        return {false, tag + "map sends the point's cylinder elsewhere"};
    }

    const FullGroupElement image_g = call_oracle(alpha, g);
    if (image_g.depth() > m)
      fail(ErrorCode::Resolution, "alpha(g) is deeper than the image resolution");
    const std::int64_t k = *image_g.power_on(image_x);
    if (codomain.cylinder_image(k, image_x) != image_y)
      return {false, tag + "Lambda(g x) != alpha(g) Lambda(x)"};

    const auto px = guess_point(q, image_x);
    const auto py = guess_point(q, image_y);
    if (!px || !py)
      fail(ErrorCode::Resolution, tag + "image point has no short eventual period");
    const auto offset = codomain.same_orbit(*px, *py);
    if (!offset) return {false, tag + "images lie in different orbits"};
    if (*offset != k)
      return {false, tag + "orbit offset " + std::to_string(*offset) +
                         " differs from alpha(g)'s power " + std::to_string(k)};
  }
  return {};
}

}  // namespace tfg
