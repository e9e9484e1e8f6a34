// Acceptance run: one PASS/FAIL line per criterion, thresholds pinned below.
// Each suite pairs the library's verdict with a brute-force check that uses
// prefix search and truncated big-integer arithmetic instead of the trie and
// table code.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "support.hpp"
#include "tfg/error.hpp"
#include "tfg/oracle_spec.hpp"
#include "tfg/random.hpp"
#include "tfg/reconstruction.hpp"
#include "tfg/toolkit.hpp"

using namespace tfg;
using namespace tfg::testing;

namespace {

// Pinned thresholds.
constexpr int kAlgebraSets = 1000;
constexpr std::size_t kAlgebraDepth = 10;
constexpr double kAlgebraSeconds = 5.0;
constexpr int kInvolutionSetsPerBase = 200;
constexpr int kExpressionSets = 100;
constexpr std::size_t kExpressionDepth = 5;
constexpr int kCommutantCases = 100;
constexpr int kCriterionCases = 200;
constexpr std::size_t kExhaustiveDepthBase2 = 6;
constexpr std::size_t kExhaustiveDepthBase3 = 4;
constexpr int kSpecsPerKind = 20;
constexpr std::size_t kConjugatorDepth = 5;
constexpr std::size_t kMaxCompositeLength = 3;
constexpr std::size_t kMaxReconstructDepth = 5;
constexpr std::size_t kConjugacyMapDepth = 3;
constexpr int kRandomConjugacyTests = 10;
constexpr int kOrbitPairs = 20;
constexpr double kRunSeconds = 10.0;
constexpr int kMeasureDepth = 12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string note;
  int failures = 0;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) note = what;
    pass = false;
  }
};

bool report(int id, const char* name, const Outcome& o, const std::string& summary) {
  std::printf("%s %d %s: %s", o.pass ? "PASS" : "FAIL", id, name, summary.c_str());
  if (!o.pass) std::printf(" [%d failures; first: %s]", o.failures, o.note.c_str());
  std::printf("\n");
  std::fflush(stdout);
  return o.pass;
}

std::size_t exhaustive_depth(int base) {
  return base == 2 ? kExhaustiveDepthBase2 : kExhaustiveDepthBase3;
}

Digits random_digits(int base, std::size_t len, Rng& rng) {
  Digits d(len);
  for (auto& x : d) x = static_cast<Digit>(uniform_below(rng, static_cast<std::uint64_t>(base)));
  return d;
}

Digits padded(Digits d) {
  d.resize(kTruncation, 0);
  return d;
}

// g on a kTruncation-digit head: prefix search, then addition mod p^len.
Digits brute_apply_digits(const FullGroupElement& g, const Digits& x) {
  for (const Cell& c : g.cells())
    if (std::equal(c.word.begin(), c.word.end(), x.begin()))
      return truncated_add(g.base(), x, c.power, x.size());
  return {};
}

// The hidden spatial map of a spec on a truncated point.
Digits brute_hidden(const OracleSpec& spec, Digits x) {
  return std::visit(
      [&](const auto& k) -> Digits {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, InnerSpec>) {
          return brute_apply_digits(k.conjugator, x);
        } else if constexpr (std::is_same_v<K, DigitwiseSpec>) {
          for (auto& d : x) d = static_cast<Digit>(k.base - 1 - d);
          return x;
        } else {
          for (auto it = k.parts.rbegin(); it != k.parts.rend(); ++it) x = brute_hidden(*it, x);
          return x;
        }
      },
      spec.kind);
}

const char* kind_name(std::size_t index) {
  static const char* names[] = {"inner", "digitwise", "composite"};
  return names[index];
}

OracleSpec random_spec(std::size_t kind, int base, Rng& rng) {
  if (kind == 0) return OracleSpec{InnerSpec{random_element(base, kConjugatorDepth, rng)}};
  if (kind == 1) return OracleSpec{DigitwiseSpec{base}};
  const auto length = 1 + uniform_below(rng, kMaxCompositeLength);
  CompositeSpec c;
  for (std::uint64_t i = 0; i < length; ++i) {
    if (uniform_below(rng, 2) == 0)
      c.parts.push_back(OracleSpec{DigitwiseSpec{base}});
    else
      c.parts.push_back(OracleSpec{InnerSpec{random_element(base, 3, rng)}});
  }
  return OracleSpec{c};
}

// ---------------------------------------------------------------------------

bool boolean_algebra() {
  Outcome o;
  Rng rng(1001);
  const auto start = Clock::now();
  for (int i = 0; i < kAlgebraSets; ++i) {
    const int base = i % 2 == 0 ? 2 : 3;
    const auto a = random_clopen(base, kAlgebraDepth, rng);
    const auto b = random_clopen(base, kAlgebraDepth, rng);
    const auto c = random_clopen(base, kAlgebraDepth, rng);
    const auto x = ClopenSet::full(base);
    const std::string tag = "set " + std::to_string(i);
    o.expect(set_union(set_union(a, b), c) == set_union(a, set_union(b, c)), tag + " union assoc");
    o.expect(intersection(intersection(a, b), c) == intersection(a, intersection(b, c)),
             tag + " intersection assoc");
    o.expect(set_union(a, b) == set_union(b, a), tag + " union comm");
    o.expect(intersection(a, b) == intersection(b, a), tag + " intersection comm");
    o.expect(intersection(a, set_union(b, c)) ==
                 set_union(intersection(a, b), intersection(a, c)),
             tag + " distributivity");
    o.expect(set_union(a, intersection(b, c)) ==
                 intersection(set_union(a, b), set_union(a, c)),
             tag + " dual distributivity");
    o.expect(complement(set_union(a, b)) == intersection(complement(a), complement(b)),
             tag + " de morgan");
    o.expect(complement(intersection(a, b)) == set_union(complement(a), complement(b)),
             tag + " dual de morgan");
    o.expect(set_union(a, complement(a)) == x, tag + " excluded middle");
    o.expect(intersection(a, complement(a)).is_empty(), tag + " non-contradiction");

    // Pointwise semantics by prefix search.
    const auto u = set_union(a, b);
    const auto n = intersection(a, b);
    const auto ca = complement(a);
    for (int s = 0; s < 8; ++s) {
      const Digits p = random_digits(base, kAlgebraDepth + 2, rng);
      const bool in_a = member(a, p);
      const bool in_b = member(b, p);
      o.expect(member(u, p) == (in_a || in_b), tag + " union pointwise");
      o.expect(member(n, p) == (in_a && in_b), tag + " intersection pointwise");
      o.expect(member(ca, p) == !in_a, tag + " complement pointwise");
    }
  }
  const double t = seconds_since(start);
  o.expect(t < kAlgebraSeconds, "took " + std::to_string(t) + " s");
  return report(1, "boolean algebra laws", o,
                std::to_string(kAlgebraSets) + " sets, depth <= " +
                    std::to_string(kAlgebraDepth) + ", " + std::to_string(t) + " s (limit " +
                    std::to_string(kAlgebraSeconds) + " s)");
}

bool many_involutions() {
  Outcome o;
  Rng rng(1002);
  for (int base : {2, 3}) {
    for (int i = 0; i < kInvolutionSetsPerBase; ++i) {
      const auto a = random_nonempty_clopen(base, 6, rng);
      const auto pi = make_involution(a);
      const std::string tag = "base " + std::to_string(base) + " set " + std::to_string(i);
      o.expect(compose(pi, pi).is_identity(), tag + " pi^2 != id");
      o.expect(!pi.is_identity(), tag + " pi == id");
      o.expect(is_subset(support(pi), a), tag + " support escapes A");
      // Brute force: pi^2 fixes points, and points outside A are fixed.
      bool moved_inside = false;
      for (int s = 0; s < 16; ++s) {
        const Digits x = padded(random_digits(base, 8, rng));
        const Digits y = brute_apply_digits(pi, x);
        o.expect(brute_apply_digits(pi, y) == x, tag + " brute pi^2 != id");
        if (!member(a, x)) o.expect(y == x, tag + " brute moves a point outside A");
        moved_inside = moved_inside || y != x;
      }
      for (const Digits& w : a.words()) {
        const Digits x = padded(w);
        moved_inside = moved_inside || brute_apply_digits(pi, x) != x;
      }
      o.expect(moved_inside, tag + " brute found no moved point");
    }
  }
  return report(2, "many involutions", o,
                std::to_string(kInvolutionSetsPerBase) + " sets per base, bases 2 and 3");
}

bool generation() {
  Outcome o;
  Rng rng(1003);
  std::function<bool(const SupportExpression&)> leaves_are_involutions =
      [&](const SupportExpression& e) {
        if (e.kind == SupportExpression::Kind::Support)
          return e.involution.size() == 1 && is_involution(e.involution[0]) &&
                 !e.involution[0].is_identity();
        return std::all_of(e.children.begin(), e.children.end(), leaves_are_involutions);
      };
  for (int i = 0; i < kExpressionSets; ++i) {
    const int base = i % 2 == 0 ? 2 : 3;
    const auto a = random_nonempty_clopen(base, kExpressionDepth, rng);
    const auto e = express_by_involution_supports(a);
    const auto value = evaluate(e, base);
    const std::string tag = "set " + std::to_string(i);
    o.expect(value == a, tag + " evaluates to a different set");
    o.expect(leaves_are_involutions(e), tag + " has a leaf that is not an involution");
    o.expect(indicator(value, kExpressionDepth + 1) == indicator(a, kExpressionDepth + 1),
             tag + " indicator mismatch");
  }
  return report(3, "generation by involution supports", o,
                std::to_string(kExpressionSets) + " sets, depth <= " +
                    std::to_string(kExpressionDepth));
}

bool commutant() {
  Outcome o;
  Rng rng(1004);
  int negatives = 0;
  for (int i = 0; i < kCommutantCases; ++i) {
    const int base = i % 2 == 0 ? 2 : 3;
    const auto v = random_nonempty_clopen(base, 3, rng);
    // Mix elements that avoid V with arbitrary ones.
    const auto g = i % 4 < 2 ? random_element_inside(complement(v).is_empty()
                                                         ? ClopenSet::full(base)
                                                         : complement(v),
                                                     1, rng)
                             : random_element(base, 3, rng);
    const auto r = commutant_check(g, v);
    bool commutes = true;
    for (const auto& rho : pair_swaps_inside(v, exhaustive_depth(base)))
      if (compose(rho, g) != compose(g, rho)) {
        commutes = false;
        break;
      }
    const std::string tag = "case " + std::to_string(i);
    o.expect(r.in_commutant == commutes, tag + " disagrees with exhaustive commuting");
    o.expect(r.witness.has_value() == !r.in_commutant, tag + " witness presence");
    if (!r.witness) continue;
    ++negatives;
    const auto& w = *r.witness;
    o.expect(witness_is_valid(g, v, w), tag + " witness rejected");
    o.expect(is_subset(support(w.rho), v), tag + " rho outside Gamma_V");
    const Digits x = w.point.prefix(kTruncation);
    const Digits left = brute_apply_digits(w.rho, brute_apply_digits(g, x));
    const Digits right = brute_apply_digits(g, brute_apply_digits(w.rho, x));
    o.expect(left == w.left.prefix(kTruncation), tag + " left evaluation");
    o.expect(right == w.right.prefix(kTruncation), tag + " right evaluation");
    o.expect(left != right, tag + " evaluations agree");
  }
  return report(4, "commutant check", o,
                std::to_string(kCommutantCases) + " cases, " + std::to_string(negatives) +
                    " witnesses, generators to depth " +
                    std::to_string(kExhaustiveDepthBase2) + " (base 2) / " +
                    std::to_string(kExhaustiveDepthBase3) + " (base 3)");
}

bool criterion() {
  Outcome o;
  Rng rng(1005);
  int tested = 0;
  std::size_t samples_checked = 0;
  for (int attempt = 0; tested < kCriterionCases && attempt < 100 * kCriterionCases; ++attempt) {
    const int base = attempt % 2 == 0 ? 2 : 3;
    const auto v = random_nonempty_clopen(base, 2, rng);
    const auto pi = random_involution(base, 3, rng);
    if (image(pi, v) == v) continue;
    ++tested;
    const std::string tag = "case " + std::to_string(tested);
    const auto d = criterion_decompose(pi, v);
    const auto violation = decomposition_violation(pi, v, d);
    o.expect(!violation, tag + " " + violation.value_or(""));
    // Invariants recomputed from the definitions.
    const auto spr = support(pi);
    const auto xv = complement(v);
    o.expect(d.a == intersection(intersection(v, image(pi, v)), spr), tag + " A");
    o.expect(d.b == intersection(intersection(v, image(pi, xv)), spr), tag + " B");
    o.expect(is_subset(d.a, d.o) && is_subset(d.o, v), tag + " A <= O <= V");
    o.expect(intersection(d.o, d.b).is_empty(), tag + " O meets B");
    o.expect(image(pi, d.o) == d.o, tag + " O not invariant");
    o.expect(is_subset(support(d.rho1), v), tag + " rho1 outside Gamma_V");
    o.expect(is_subset(support(d.rho2), xv), tag + " rho2 outside Gamma_{X-V}");
    o.expect(d.h == compose(pi, compose(d.rho1, d.rho2)), tag + " h != pi rho1 rho2");

    const auto samples = criterion_samples(d.h, v, exhaustive_depth(base));
    samples_checked += samples.size();
    o.expect(criterion_conditions_hold(d.h, v, samples), tag + " conditions fail");
    // Conditions by the conjugation support law: supp(h^-1 g h) = h^-1(supp g).
    const auto wh = support(d.h);
    const auto h_inv = invert(d.h);
    for (const auto& g : samples) {
      const auto sg = support(g);
      const auto moved = image(h_inv, sg);
      o.expect(support(compose(h_inv, compose(g, d.h))) == moved, tag + " support law");
      if (is_subset(sg, intersection(v, wh)))
        o.expect(is_subset(moved, xv), tag + " condition (i)");
      else if (is_subset(sg, intersection(xv, wh)))
        o.expect(is_subset(moved, v), tag + " condition (ii)");
    }
  }
  o.expect(tested == kCriterionCases, "only " + std::to_string(tested) + " cases drawn");
  return report(5, "clopen-ness criterion", o,
                std::to_string(tested) + " involutions outside R, " +
                    std::to_string(samples_checked) + " sample generators");
}

bool reconstruction() {
  Outcome o;
  Rng rng(1006);
  double slowest = 0;
  for (std::size_t kind = 0; kind < 3; ++kind) {
    for (int i = 0; i < kSpecsPerKind; ++i) {
      const int base = i % 2 == 0 ? 2 : 3;
      const auto spec = random_spec(kind, base, rng);
      const auto alpha = spec.oracle();
      const std::string tag = std::string(kind_name(kind)) + " " + std::to_string(i);
      const auto start = Clock::now();
      try {
        for (std::size_t depth = 1; depth <= kMaxReconstructDepth; ++depth) {
          const auto m = reconstruct_boolean_map(alpha, depth);
          for (const auto& [w, img] : m.images()) {
            o.expect(img == spec.hidden_image(ClopenSet::cylinder(base, w)),
                     tag + " depth " + std::to_string(depth) + " image");
            for (const Digits& tail : all_words(base, 2)) {
              Digits x = w;
              x.insert(x.end(), tail.begin(), tail.end());
              o.expect(member(img, brute_hidden(spec, padded(x))),
                       tag + " brute image at depth " + std::to_string(depth));
            }
          }
        }
        const auto map = reconstruct_boolean_map(alpha, kConjugacyMapDepth);
        std::vector<FullGroupElement> tests{FullGroupElement::shift(base, 1),
                                            FullGroupElement::shift(base, -1)};
        for (int t = 0; t < kRandomConjugacyTests; ++t)
          tests.push_back(random_element(base, kConjugacyMapDepth, rng));
        const auto conj = verify_conjugacy(alpha, map, tests);
        o.expect(conj.ok, tag + " conjugacy: " + conj.detail);
        std::vector<std::pair<Point, FullGroupElement>> pairs;
        for (int t = 0; t < kOrbitPairs; ++t)
          pairs.emplace_back(random_point(base, 3, 3, rng), random_element(base, 3, rng));
        const auto oe = verify_orbit_equivalence(alpha, map, pairs);
        o.expect(oe.ok, tag + " orbit equivalence: " + oe.detail);
      } catch (const Error& e) {
        o.expect(false, tag + " threw " + e.what());
      }
      const double t = seconds_since(start);
      slowest = std::max(slowest, t);
      o.expect(t < kRunSeconds, tag + " took " + std::to_string(t) + " s");
    }
  }
  return report(6, "reconstruction", o,
                std::to_string(kSpecsPerKind) + " specs per kind, depths 1-" +
                    std::to_string(kMaxReconstructDepth) + ", slowest run " +
                    std::to_string(slowest) + " s (limit " + std::to_string(kRunSeconds) +
                    " s)");
}

// Code of the error f raises; nothing when it returns normally.
std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

bool negative_controls() {
  Outcome o;
  Rng rng(1007);
  // Corrupted maps: swap the images of two cylinders.
  int corrupted = 0;
  for (int i = 0; i < 10; ++i) {
    const int base = i % 2 == 0 ? 2 : 3;
    const auto spec = random_spec(static_cast<std::size_t>(i % 3), base, rng);
    const auto alpha = spec.oracle();
    const auto map = reconstruct_boolean_map(alpha, 2);
    auto images = map.images();
    auto first = images.begin();
    auto second = std::next(first, static_cast<std::ptrdiff_t>(
                                       1 + uniform_below(rng, images.size() - 1)));
    std::swap(first->second, second->second);
    const BooleanMap bad(base, base, 2, images);
    const auto r = verify_conjugacy(
        alpha, bad, {FullGroupElement::shift(base, 1), FullGroupElement::shift(base, -1)});
    o.expect(!r.ok, "corrupted map " + std::to_string(i) + " passed");
    ++corrupted;
  }
  // A non-homomorphism: every nontrivial element goes to sigma.
  IsomorphismOracle junk{2, 2,
                         [](const FullGroupElement& g) {
                           return g.is_identity() ? g : FullGroupElement::shift(2, 1);
                         },
                         [](const FullGroupElement& g) { return g; }};
  o.expect(code_of([&] { reconstruct_boolean_map(junk, 2); }) ==
               ErrorCode::NotSpatiallyConsistent,
           "non-homomorphism not reported");
  // Cross-base stub: base-2 pair swaps read as base-3 pair swaps.
  auto relabel = [](const FullGroupElement& g) {
    if (!is_involution(g)) return FullGroupElement::identity(3);
    std::vector<Cell> moved;
    for (const Cell& c : g.cells())
      if (c.power != 0) moved.push_back(c);
    if (moved.size() != 2) return FullGroupElement::identity(3);
    return pair_swap(3, moved[0].word, moved[1].word);
  };
  const IsomorphismOracle stub{2, 3, relabel, nullptr};
  for (std::size_t d = 1; d <= 3; ++d) {
    o.expect(code_of([&] { reconstruct_boolean_map(stub, d); }) ==
                 ErrorCode::NotSpatiallyConsistent,
             "cross-base stub not rejected at depth " + std::to_string(d));
  }
  return report(7, "negative controls", o,
                std::to_string(corrupted) +
                    " corrupted maps, one non-homomorphism, one cross-base stub");
}

bool measure_ranges() {
  Outcome o;
  auto dyadic_values = [](int base) {
    std::set<Rational> values;
    BigInt scale = 1;
    for (int n = 0; n <= kMeasureDepth; ++n) {
      for (BigInt k = 0; k <= scale; ++k) values.insert(Rational(k, scale));
      scale *= base;
    }
    return values;
  };
  const auto twos = dyadic_values(2);
  const auto threes = dyadic_values(3);
  std::vector<Rational> common;
  std::set_intersection(twos.begin(), twos.end(), threes.begin(), threes.end(),
                        std::back_inserter(common));
  o.expect(common == std::vector<Rational>{Rational(0), Rational(1)},
           std::to_string(common.size()) + " common values");
  // The library's measures land in the enumerated ranges.
  Rng rng(1008);
  for (int base : {2, 3}) {
    const OdometerSystem s(base);
    const auto& range = base == 2 ? twos : threes;
    for (int i = 0; i < 200; ++i) {
      const auto a = random_clopen(base, base == 2 ? 12 : 7, rng);
      o.expect(range.count(s.measure_value(a)) == 1, "measure outside the enumerated range");
    }
  }
  return report(8, "cross-base measure certificate", o,
                std::to_string(twos.size()) + " base-2 and " + std::to_string(threes.size()) +
                    " base-3 values to depth " + std::to_string(kMeasureDepth) + ", common " +
                    std::to_string(common.size()));
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria{
      boolean_algebra, many_involutions, generation,       commutant,
      criterion,       reconstruction,   negative_controls, measure_ranges};
  int failed = 0;
  for (const auto& c : criteria) {
    try {
      if (!c()) ++failed;
    } catch (const std::exception& e) {
      std::printf("FAIL criterion threw: %s\n", e.what());
      ++failed;
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
