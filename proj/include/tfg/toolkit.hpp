#pragma once

// Commutants of Gamma_V and the clopen-ness criterion: membership tests,
// non-commuting witnesses, and the decomposition h = pi rho1 rho2.

#include <cstddef>
#include <optional>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/full_group.hpp"
#include "tfg/odometer.hpp"

namespace tfg {

/// supp(g) inside v.
bool in_gamma(const FullGroupElement& g, const ClopenSet& v);

/// rho in Gamma_V with (rho g)(point) != (g rho)(point).
struct CommutantWitness {
  FullGroupElement rho;
  Point point;
  Point left;   // rho(g(point))
  Point right;  // g(rho(point))
};

struct CommutantCheck {
  bool in_commutant = false;
  std::optional<CommutantWitness> witness;  // present iff !in_commutant
};

/// Decides g in Gamma_V^perp, i.e. supp(g) inside X - V. A negative answer
/// carries a witness built from a clopen W inside supp(g) n V with
/// g(W) n W empty.
CommutantCheck commutant_check(const FullGroupElement& g, const ClopenSet& v);

/// Does the witness actually separate rho g from g rho?
bool witness_is_valid(const FullGroupElement& g, const ClopenSet& v,
                      const CommutantWitness& w);

struct RMembership {
  bool member = false;
  // g = inside o outside with inside in Gamma_V, outside in Gamma_{X-V}.
  std::optional<FullGroupElement> inside;
  std::optional<FullGroupElement> outside;
};

/// Membership in R = <Gamma_V, Gamma_{X-V}>, which for clopen V is exactly
/// g(V) = V.
RMembership in_R(const FullGroupElement& g, const ClopenSet& v);

struct CriterionDecomposition {
  ClopenSet a;  // V n pi(V) n spr(pi)
  ClopenSet b;  // V n pi(X - V) n spr(pi)
  ClopenSet o;  // clopen, A inside O inside V, O n B empty, pi(O) = O
  FullGroupElement rho1;  // in Gamma_V
  FullGroupElement rho2;  // in Gamma_{X-V}
  FullGroupElement h;     // pi rho1 rho2
};

/// Throws Precondition unless pi is an involution outside R.
CriterionDecomposition criterion_decompose(const FullGroupElement& pi,
                                           const ClopenSet& v);

/// Re-checks every structural property of a decomposition; returns the first
/// violated one, or nothing.
std::optional<std::string> decomposition_violation(
    const FullGroupElement& pi, const ClopenSet& v,
    const CriterionDecomposition& d);

/// Conditions (i) and (ii) on the given samples:
///   g in Gamma_V n W_h      =>  h^-1 g h in Gamma_{X-V}
///   g in Gamma_{X-V} n W_h  =>  h^-1 g h in Gamma_V
/// Samples outside both hypotheses are ignored.
bool criterion_conditions_hold(const FullGroupElement& h, const ClopenSet& v,
                               const std::vector<FullGroupElement>& samples);

/// Every pair swap of depth <= max_depth inside V n supp(h) and inside
/// (X - V) n supp(h).
std::vector<FullGroupElement> criterion_samples(const FullGroupElement& h,
                                                const ClopenSet& v,
                                                std::size_t max_depth);

/// Every pair swap of depth <= max_depth supported in v.
std::vector<FullGroupElement> pair_swaps_inside(const ClopenSet& v,
                                                std::size_t max_depth);

}  // namespace tfg
