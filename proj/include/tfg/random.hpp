#pragma once

// Seeded generators for sets, elements and points. Draws use only the raw
// mt19937_64 stream, so a seed gives the same objects on every platform.

#include <cstddef>
#include <cstdint>
#include <random>

#include "tfg/clopen.hpp"
#include "tfg/full_group.hpp"
#include "tfg/odometer.hpp"

namespace tfg {

using Rng = std::mt19937_64;

/// Uniform in [0, n).
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);
/// Uniform in [lo, hi].
std::int64_t uniform_between(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Random reduced trie of depth <= max_depth; may be empty or full.
ClopenSet random_clopen(int base, std::size_t max_depth, Rng& rng);
ClopenSet random_nonempty_clopen(int base, std::size_t max_depth, Rng& rng);

/// Permutes the depth-k cylinders (k <= max_depth) at random, each moved by
/// a random lift of the needed power.
FullGroupElement random_element(int base, std::size_t max_depth, Rng& rng);

/// Random element permuting cylinders of `s` refined by up to `extra_depth`
/// levels, identity off `s`.
FullGroupElement random_element_inside(const ClopenSet& s, std::size_t extra_depth,
                                       Rng& rng);

/// Random product of disjoint cylinder swaps at one depth in [1, max_depth].
FullGroupElement random_involution(int base, std::size_t max_depth, Rng& rng);

Point random_point(int base, std::size_t max_preperiod, std::size_t max_period,
                   Rng& rng);

}  // namespace tfg
