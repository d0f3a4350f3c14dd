#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "cbal/graph.hpp"

namespace cbal {

/// Isomorphism-invariant fingerprint of a colored complete graph.  Two keys
/// compare equal iff the graphs are isomorphic under vertex permutation,
/// additionally quotienting by color permutation when `quotient_colors` is set.
struct CanonicalKey {
    std::vector<std::uint8_t> bytes;
    bool quotient_colors = false;

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend auto operator<=>(const CanonicalKey& a, const CanonicalKey& b) {
        if (auto c = a.quotient_colors <=> b.quotient_colors; c != 0) return c;
        return a.bytes <=> b.bytes;
    }
};

// Exact canonicalization: lexicographically minimal edge-color string over
// all vertex permutations (ordered by color-degree invariants, with prefix
// pruning and used-set memoization), minimized over all r! color relabelings
// when quotient_colors is true.  Intended for n up to ~30.
CanonicalKey canonical_key(const ColoredCompleteGraph& g, bool quotient_colors);

}  // namespace cbal
