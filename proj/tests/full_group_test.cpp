#include <doctest.h>

#include "support.hpp"
#include "tfg/error.hpp"
#include "tfg/random.hpp"

using namespace tfg;
using namespace tfg::testing;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// Evaluates g at the point w.0^inf for every depth-k word and compares with
// the brute-force table lookup.
void check_against_brute(const FullGroupElement& g, std::size_t k) {
  for (const Digits& w : all_words(g.base(), k)) {
    const Point x(g.base(), w, Digits{0});
    CHECK(g(x).prefix(kTruncation) == brute_apply(g, x));
  }
}

}  // namespace

TEST_SUITE("full_group") {

TEST_CASE("tables are validated and canonical") {
  const auto pi = table(2, {{"0", 1}, {"1", -1}});
  CHECK(pi.cells().size() == 2);
  CHECK(table(2, {{"00", 3}, {"01", 3}, {"1", 3}}) == FullGroupElement::shift(2, 3));
  CHECK(code_of([] { table(2, {{"0", 1}}); }) == ErrorCode::Representation);
  CHECK(code_of([] { table(2, {{"0", 1}, {"1", 0}}); }) == ErrorCode::Representation);
  CHECK(code_of([] { table(2, {{"0", 0}, {"0", 0}, {"1", 0}}); }) ==
        ErrorCode::Representation);
  CHECK(FullGroupElement::identity(3).is_identity());
}

TEST_CASE("compose examples") {
  const auto s = FullGroupElement::shift(2, 1);
  const auto s_inv = FullGroupElement::shift(2, -1);
  CHECK(compose(s, s_inv).is_identity());
  const auto g = table(2, {{"00", 2}, {"01", -2}, {"1", 0}});
  CHECK(compose(g, FullGroupElement::identity(2)) == g);
  const auto pi = table(2, {{"0", 1}, {"1", -1}});
  const auto square = compose(pi, pi);
  CHECK(square.is_identity());
  for (const Digits& w : all_words(2, 3)) {
    const Point x(2, w, Digits{1});
    CHECK(square(x) == x);
  }
}

TEST_CASE("compose is x -> g(h(x))") {
  Rng rng(11);
  for (int base : {2, 3}) {
    for (int i = 0; i < 60; ++i) {
      const auto g = random_element(base, 4, rng);
      const auto h = random_element(base, 4, rng);
      const auto gh = compose(g, h);
      for (int j = 0; j < 5; ++j) {
        const Point x = random_point(base, 5, 3, rng);
        CHECK(gh(x) == g(h(x)));
      }
    }
  }
}

TEST_CASE("elements act as their tables say") {
  Rng rng(12);
  for (int i = 0; i < 30; ++i) check_against_brute(random_element(2, 5, rng), 6);
  for (int i = 0; i < 10; ++i) check_against_brute(random_element(3, 3, rng), 4);
}

TEST_CASE("invert") {
  CHECK(invert(FullGroupElement::identity(2)).is_identity());
  CHECK(invert(FullGroupElement::shift(2, 1)) == FullGroupElement::shift(2, -1));
  const auto g = table(2, {{"00", 2}, {"01", -2}, {"1", 0}});
  CHECK(compose(g, invert(g)).is_identity());
  const auto round_trip = compose(invert(g), g);
  for (const Digits& w : all_words(2, 4)) {
    const Point x(2, w, Digits{0});
    CHECK(round_trip(x) == x);
  }
  const auto h = table(2, {{"00", 1}, {"10", 1}, {"01", 1}, {"11", -3}});
  CHECK(compose(h, invert(h)).is_identity());
}

TEST_CASE("group laws on random elements") {
  Rng rng(13);
  for (int base : {2, 3}) {
    const std::size_t depth = base == 2 ? 8 : 5;
    for (int i = 0; i < 60; ++i) {
      const auto f = random_element(base, depth, rng);
      const auto g = random_element(base, depth, rng);
      const auto h = random_element(base, depth, rng);
      CHECK(compose(f, compose(g, h)) == compose(compose(f, g), h));
      CHECK(compose(f, FullGroupElement::identity(base)) == f);
      CHECK(compose(FullGroupElement::identity(base), f) == f);
      CHECK(compose(f, invert(f)).is_identity());
      CHECK(compose(invert(f), f).is_identity());
    }
  }
}

TEST_CASE("support") {
  CHECK(support(FullGroupElement::identity(2)).is_empty());
  CHECK(support(table(2, {{"0", 2}, {"1", 0}})) == set_of(2, {"0"}));
  const auto g = table(2, {{"00", 2}, {"01", -2}, {"1", 0}});
  CHECK(support(g) == set_of(2, {"0"}));
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    const Point x = random_point(2, 6, 4, rng);
    CHECK((g(x) != x) == contains(support(g), x));
  }
}

TEST_CASE("support laws") {
  Rng rng(15);
  for (int base : {2, 3}) {
    for (int i = 0; i < 60; ++i) {
      const auto g = random_element(base, 5, rng);
      const auto h = random_element(base, 5, rng);
      CHECK(is_subset(support(compose(g, h)), set_union(support(g), support(h))));
      CHECK(support(invert(g)) == support(g));
      CHECK(support(conjugate(h, g)) == image(h, support(g)));
      CHECK(image(g, support(g)) == support(g));
    }
  }
}

TEST_CASE("conjugate is h g h^-1") {
  Rng rng(18);
  for (int base : {2, 3}) {
    for (int i = 0; i < 60; ++i) {
      const auto h = random_element(base, 5, rng);
      const auto g = i % 2 == 0 ? random_element(base, 4, rng)
                                : random_involution(base, 6, rng);
      const auto c = conjugate(h, g);
      CHECK(c == compose(h, compose(g, invert(h))));
      for (int s = 0; s < 5; ++s) {
        const Point x = random_point(base, 7, 3, rng);
        // h g h^-1 (x) by brute force: h^-1(x) is the point h maps to x.
        const Point pre = invert(h)(x);
        CHECK(brute_apply(h, pre) == x.prefix(kTruncation));
        CHECK(c(x).prefix(kTruncation) == brute_apply(h, g(pre)));
      }
    }
  }
  CHECK(conjugate(FullGroupElement::shift(2, 1), FullGroupElement::identity(2)).is_identity());
}

TEST_CASE("disjoint supports commute") {
  Rng rng(16);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 60; ++i) {
    const auto v = random_nonempty_clopen(2, 4, rng);
    if (v.is_full()) continue;
    const auto g = random_element_inside(v, 2, rng);
    const auto h = random_element_inside(complement(v), 2, rng);
    REQUIRE(intersection(support(g), support(h)).is_empty());
    CHECK(compose(g, h) == compose(h, g));
    ++tested;
  }
  CHECK(tested == 60);
}

TEST_CASE("is_involution and order_upto") {
  CHECK_FALSE(is_involution(FullGroupElement::identity(2)));
  CHECK(order_upto(FullGroupElement::identity(2), 5) == 1);
  CHECK(is_involution(table(2, {{"0", 1}, {"1", -1}})));
  CHECK_FALSE(order_upto(FullGroupElement::shift(2, 1), 100).has_value());
  const auto rotation = table(3, {{"0", 1}, {"1", 1}, {"2", -2}});
  CHECK(order_upto(rotation, 10) == 3);
  CHECK_FALSE(is_involution(rotation));
}

TEST_CASE("pair swaps and make_involution") {
  CHECK(make_involution(ClopenSet::full(2)) == table(2, {{"0", 1}, {"1", -1}}));
  const auto pi = make_involution(set_of(2, {"0"}));
  CHECK(pi == table(2, {{"00", 2}, {"01", -2}, {"1", 0}}));
  CHECK(OdometerSystem(2).cylinder_image(2, word(2, "00")) == word(2, "01"));
  CHECK(code_of([] { make_involution(ClopenSet::empty(2)); }) == ErrorCode::Precondition);
  CHECK(pair_swap(3, word(3, "2"), word(3, "0")) == table(3, {{"0", -1}, {"1", 0}, {"2", 1}}));
  CHECK(support(pair_swap(2, word(2, "010"), word(2, "111"))) == set_of(2, {"010", "111"}));
}

TEST_CASE("make_involution on random sets") {
  Rng rng(17);
  for (int base : {2, 3}) {
    for (int i = 0; i < 200; ++i) {
      const auto a = random_nonempty_clopen(base, 6, rng);
      const auto pi = make_involution(a);
      CHECK(compose(pi, pi).is_identity());
      CHECK_FALSE(pi.is_identity());
      CHECK(is_subset(support(pi), a));
    }
  }
}

TEST_CASE("involutions_covering") {
  const auto one = involutions_covering(ClopenSet::full(2), 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == table(2, {{"0", 1}, {"1", -1}}));
  const auto inside = involutions_covering(set_of(2, {"0"}), 2);
  REQUIRE(inside.size() == 1);
  CHECK(inside[0] == table(2, {{"00", 2}, {"01", -2}, {"1", 0}}));
  CHECK(code_of([] { involutions_covering(ClopenSet::empty(2), 2); }) ==
        ErrorCode::Precondition);
  CHECK(code_of([] { involutions_covering(set_of(2, {"01"}), 2); }) ==
        ErrorCode::Precondition);
  CHECK(code_of([] { involutions_covering(set_of(2, {"011"}), 2); }) == ErrorCode::Depth);

  Rng rng(18);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_nonempty_clopen(2, 4, rng);
    for (std::size_t k = std::max<std::size_t>(a.depth(), 1); k <= 6; ++k) {
      if (refine_to_depth(a, k).size() < 2) continue;
      ClopenSet covered = ClopenSet::empty(2);
      for (const auto& pi : involutions_covering(a, k)) {
        CHECK(is_involution(pi));
        covered = set_union(covered, support(pi));
      }
      CHECK(covered == a);
    }
  }
}

TEST_CASE("express_by_involution_supports") {
  const auto x = express_by_involution_supports(ClopenSet::full(2));
  CHECK(x.kind == SupportExpression::Kind::Support);
  CHECK(x.involution.at(0) == make_involution(ClopenSet::full(2)));

  const auto e = express_by_involution_supports(set_of(2, {"00"}));
  REQUIRE(e.kind == SupportExpression::Kind::Intersection);
  REQUIRE(e.children.size() == 2);
  CHECK(e.children[0].involution.at(0) == pair_swap(2, word(2, "00"), word(2, "01")));
  CHECK(e.children[1].involution.at(0) == pair_swap(2, word(2, "00"), word(2, "10")));
  CHECK(evaluate(e, 2) == set_of(2, {"00"}));
  CHECK(code_of([] { express_by_involution_supports(ClopenSet::empty(2)); }) ==
        ErrorCode::Precondition);

  Rng rng(19);
  for (int base : {2, 3}) {
    for (int i = 0; i < 100; ++i) {
      const auto a = random_nonempty_clopen(base, 5, rng);
      CHECK(evaluate(express_by_involution_supports(a), base) == a);
    }
  }
}

TEST_CASE("restrict") {
  Rng rng(20);
  const auto g = random_element(2, 4, rng);
  CHECK(restrict(g, ClopenSet::full(2)) == g);
  CHECK(restrict(g, ClopenSet::empty(2)).is_identity());
  const auto pi = pair_swap(2, word(2, "00"), word(2, "01"));
  CHECK(restrict(pi, set_of(2, {"0"})) == pi);
  CHECK(code_of([] { restrict(FullGroupElement::shift(2, 1), set_of(2, {"0"})); }) ==
        ErrorCode::Invariance);
}

TEST_CASE("digit flip conjugates the shift to its inverse") {
  CHECK(digit_flip(FullGroupElement::shift(2, 1)) == FullGroupElement::shift(2, -1));
  CHECK(digit_flip(table(2, {{"0", 1}, {"1", -1}})) == table(2, {{"1", -1}, {"0", 1}}));
  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_element(3, 3, rng);
    const auto h = random_element(3, 3, rng);
    CHECK(digit_flip(compose(g, h)) == compose(digit_flip(g), digit_flip(h)));
    CHECK(digit_flip(digit_flip(g)) == g);
  }
}

TEST_CASE("subgroup descriptors") {
  const auto pi = pair_swap(2, word(2, "00"), word(2, "01"));
  const auto gamma = SubgroupDescriptor::gamma(set_of(2, {"0"}));
  CHECK(gamma.contains(pi));
  CHECK_FALSE(gamma.contains(FullGroupElement::shift(2, 1)));
  const auto w = SubgroupDescriptor::w(pi);
  CHECK(w.contains(pair_swap(2, word(2, "000"), word(2, "010"))));
  CHECK_FALSE(w.contains(pair_swap(2, word(2, "00"), word(2, "10"))));
  const auto r = SubgroupDescriptor::r(set_of(2, {"0"}));
  CHECK(r.contains(compose(pi, pair_swap(2, word(2, "10"), word(2, "11")))));
  CHECK_FALSE(r.contains(FullGroupElement::shift(2, 1)));
  CHECK(code_of([] { SubgroupDescriptor::w(FullGroupElement::identity(2)); }) ==
        ErrorCode::Precondition);
}

}  // TEST_SUITE
