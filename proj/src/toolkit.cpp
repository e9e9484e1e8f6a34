#include "tfg/toolkit.hpp"

#include "tfg/error.hpp"

namespace tfg {

namespace {

// Largest e with p^e dividing n (n != 0).
std::size_t p_adic_valuation(std::int64_t n, int p) {
  std::size_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

}  // namespace

bool in_gamma(const FullGroupElement& g, const ClopenSet& v) {
  return is_subset(support(g), v);
}

CommutantCheck commutant_check(const FullGroupElement& g, const ClopenSet& v) {
  if (in_gamma(g, complement(v))) return {true, std::nullopt};

  const int p = g.base();
  for (const Cell& c : g.cells()) {
    if (c.power == 0 || !v.meets_cylinder(c.word)) continue;
    const ClopenSet piece = intersection(ClopenSet::cylinder(p, c.word), v);

    // W = [u] with sigma^n[u] != [u]: u must be longer than v_p(n) digits.
    Digits u = piece.words().front();
    const std::size_t depth =
        std::max(u.size(), p_adic_valuation(c.power, p) + 1) + 1;
    u.resize(depth, 0);

    const FullGroupElement rho = make_involution(ClopenSet::cylinder(p, u));
    Digits o = u;
    o.push_back(0);  // rho swaps [u0] and [u1], so [u0] is moved off itself
    const Point x(p, o, Digits{0});
    Point left = rho(g(x));
    Point right = g(rho(x));
    return {false, CommutantWitness{rho, x, std::move(left), std::move(right)}};
  }
  fail(ErrorCode::InvalidArgument, "support meets V but no moving cell does");
}

bool witness_is_valid(const FullGroupElement& g, const ClopenSet& v,
                      const CommutantWitness& w) {
  if (!is_involution(w.rho) || !in_gamma(w.rho, v)) return false;
  const Point left = w.rho(g(w.point));
  const Point right = g(w.rho(w.point));
  return left == w.left && right == w.right && left != right;
}

RMembership in_R(const FullGroupElement& g, const ClopenSet& v) {
  if (image(g, v) != v) return {};
  return {true, restrict(g, v), restrict(g, complement(v))};
}

CriterionDecomposition criterion_decompose(const FullGroupElement& pi,
                                           const ClopenSet& v) {
  if (!is_involution(pi))
    fail(ErrorCode::Precondition, "criterion decomposition needs an involution");
  if (in_R(pi, v).member)
    fail(ErrorCode::Precondition,
         "involution preserves V, so it lies in <Gamma_V, Gamma_{X-V}>");

  const ClopenSet outside = complement(v);
  const ClopenSet spr = support(pi);
  ClopenSet a = intersection(intersection(v, image(pi, v)), spr);
  ClopenSet b = intersection(intersection(v, image(pi, outside)), spr);

  // All sets are clopen, so A itself separates A from B.
  ClopenSet o = a;
  FullGroupElement rho1 = restrict(invert(pi), o);
  const FullGroupElement pi1 = compose(pi, rho1);

  const ClopenSet o2 = intersection(intersection(outside, image(pi1, outside)),
                                    support(pi1));
  FullGroupElement rho2 = restrict(invert(pi1), o2);
  FullGroupElement h = compose(pi1, rho2);

  CriterionDecomposition d{std::move(a), std::move(b),    std::move(o),
                           std::move(rho1), std::move(rho2), std::move(h)};
  if (auto why = decomposition_violation(pi, v, d))
    fail(ErrorCode::Invariance, "criterion decomposition invariant failed: " + *why);
  return d;
}

std::optional<std::string> decomposition_violation(
    const FullGroupElement& pi, const ClopenSet& v,
    const CriterionDecomposition& d) {
  const ClopenSet outside = complement(v);
  const ClopenSet spr = support(pi);
  if (d.a != intersection(intersection(v, image(pi, v)), spr))
    return "A != V n pi(V) n spr(pi)";
  if (d.b != intersection(intersection(v, image(pi, outside)), spr))
    return "B != V n pi(X-V) n spr(pi)";
  if (d.b.is_empty()) return "B is empty";
  if (!is_subset(d.a, d.o) || !is_subset(d.o, v)) return "A inside O inside V fails";
  if (!intersection(d.o, d.b).is_empty()) return "O meets B";
  if (image(pi, d.o) != d.o) return "pi(O) != O";
  if (!in_gamma(d.rho1, v)) return "rho1 not in Gamma_V";
  if (!in_gamma(d.rho2, outside)) return "rho2 not in Gamma_{X-V}";
  if (d.h != compose(compose(pi, d.rho1), d.rho2)) return "h != pi rho1 rho2";
  if (!is_involution(d.h)) return "h is not an involution";
  if (support(d.h) != set_union(d.b, image(pi, d.b)))
    return "spr(h) != B u pi(B)";
  if (!intersection(support(compose(invert(pi), d.h)), d.b).is_empty())
    return "h differs from pi on B";
  return std::nullopt;
}

bool criterion_conditions_hold(const FullGroupElement& h, const ClopenSet& v,
                               const std::vector<FullGroupElement>& samples) {
  const ClopenSet outside = complement(v);
  const ClopenSet spr = support(h);
  const FullGroupElement h_inv = invert(h);
  for (const FullGroupElement& g : samples) {
    if (!in_gamma(g, spr)) continue;
    const bool in_v = in_gamma(g, v);
    const bool in_outside = in_gamma(g, outside);
    if (!in_v && !in_outside) continue;
    const FullGroupElement conj = compose(h_inv, compose(g, h));
    if (in_v && !in_gamma(conj, outside)) return false;
    if (in_outside && !in_gamma(conj, v)) return false;
  }
  return true;
}

std::vector<FullGroupElement> pair_swaps_inside(const ClopenSet& v,
                                                std::size_t max_depth) {
  std::vector<FullGroupElement> out;
  if (v.is_empty()) return out;
  for (std::size_t k = v.depth(); k <= max_depth; ++k) {
    const auto words = refine_to_depth(v, k);
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j)
        out.push_back(pair_swap(v.base(), words[i], words[j]));
  }
  return out;
}

std::vector<FullGroupElement> criterion_samples(const FullGroupElement& h,
                                                const ClopenSet& v,
                                                std::size_t max_depth) {
  const ClopenSet spr = support(h);
  auto out = pair_swaps_inside(intersection(v, spr), max_depth);
  auto rest = pair_swaps_inside(intersection(complement(v), spr), max_depth);
  out.insert(out.end(), std::make_move_iterator(rest.begin()),
             std::make_move_iterator(rest.end()));
  return out;
}

}  // namespace tfg
