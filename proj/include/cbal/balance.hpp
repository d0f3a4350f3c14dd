#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbal/graph.hpp"
#include "cbal/pattern.hpp"

namespace cbal {

/// A guest graph to embed: vertices 0..n-1, arbitrary edge list.
struct Guest {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    long m() const { return static_cast<long>(edges.size()); }
};

Guest path_guest(int L);   // path with L edges on L+1 vertices
Guest cycle_guest(int L);  // cycle with L edges, L >= 3

/// An injective placement of a guest into a host, with per-color tallies of
/// the host colors seen along guest edges.
struct Embedding {
    Guest guest;
    std::vector<int> map;        // guest vertex -> host vertex, injective
    std::vector<long> profile;   // length host.r
};

Embedding make_embedding(const ColoredCompleteGraph& host, Guest guest,
                         std::vector<int> map);

// every profile entry is floor(m/r) or ceil(m/r)
bool is_balanced(const Embedding& e);

// Exact backtracking searches; absence is a proof of non-existence.
std::optional<Embedding> find_balanced_path(const ColoredCompleteGraph& host, int L, int r);
std::optional<Embedding> find_balanced_cycle(const ColoredCompleteGraph& host, int L, int r);
std::optional<Embedding> find_balanced_copy(const ColoredCompleteGraph& host,
                                            const Guest& guest, int r);

// Same search specialised to blow-up hosts: colors depend only on parts, so
// the search assigns guest vertices to parts (bounded by part sizes) and is
// equivalent to find_balanced_copy on blow_up_sizes(T, sizes).
std::optional<Embedding> find_balanced_copy_in_blowup(const PatternTemplate& T,
                                                      std::span<const int> sizes,
                                                      const Guest& guest);

/// Outcome of an exact balancing-number computation.  When avoiding
/// colorings exist, `value` is the maximum over them of the minimum
/// histogram entry and `witness` attains it; otherwise
/// `all_colorings_contain` is set.  `complete` is false when the node
/// budget ran out (value is then only a lower bound).
struct BalancingCertificate {
    int n = 0, r = 0;
    Guest guest;
    bool all_colorings_contain = false;
    long value = -1;
    std::optional<ColoredCompleteGraph> witness;
    bool complete = true;
    std::uint64_t nodes = 0;
};

struct BalancingOptions {
    std::uint64_t node_budget = 4000000000ULL;
    int canonicity_depth = 5;  // prefix canonicity checked on complete K_j prefixes, j <= this
    int threads = 0;           // 0 = hardware concurrency
};

BalancingCertificate balancing_number_exact(int n, const Guest& guest, int r,
                                            const BalancingOptions& opts = {});

/// Per-pattern balanced-embeddability report (the o(n^2) / Omega(n^2)
/// dichotomy): the guest is quadratically unavoidable iff it embeds balanced
/// into every pattern blow-up at part size = guest order.
struct BalanceabilityReport {
    int r = 0;
    Guest guest;
    std::vector<int> failing_patterns;  // indices into the catalogue
    std::vector<std::optional<Embedding>> embeddings;  // one per pattern
    bool balanceable = false;  // all patterns admit a balanced embedding
};

BalanceabilityReport balanceable_check(const Guest& guest, int r,
                                       const PatternCatalogue& catalogue);

/// Extends a balanced path of 3k-3 edges by a vertex-disjoint rainbow
/// triangle into a balanced path of 3k edges (3 colors), by explicit case
/// analysis rather than search.
Embedding constructive_lemma_extend(const ColoredCompleteGraph& host,
                                    const Embedding& path,
                                    const std::array<int, 3>& triangle);

}  // namespace cbal
