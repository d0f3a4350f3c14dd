#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cbal/graph.hpp"
#include "cbal/pattern.hpp"

namespace cbal {

/// Budgets for the dependent-random-choice sampler.  Asymptotic constants
/// from the source material are replaced by explicit trial counts.
struct DrcConfig {
    int t = 2;           // subset size whose common neighborhoods must be large
    int K = 8;           // target set size
    int trials = 200;
    std::uint64_t seed = 0;
    int sample_size = 3;  // vertices sampled per trial before trimming
};

struct DrcResult {
    std::vector<int> set;  // size K
    bool exhaustive = true;  // all t-subsets checked (vs sampled)
    int trials_used = 0;
};

/// Set S of K vertices such that every t-subset of S has at least K common
/// c-neighbors.  Verified before returning; absence is a soft failure.
std::optional<DrcResult> drc_find_set(const ColoredCompleteGraph& g, Color c,
                                      const DrcConfig& cfg);

// same, but candidates in `excluded` (size n, nonzero = banned) are skipped;
// used by the pipeline to keep per-color sets disjoint
std::optional<DrcResult> drc_find_set(const ColoredCompleteGraph& g, Color c,
                                      const DrcConfig& cfg, const std::vector<char>& excluded);

/// Exact backtracking grid extraction: from disjoint candidate sets, pick
/// X_i of `target` vertices each, every X_i a monochromatic clique and every
/// (X_i, X_j) bipartite pair monochromatic.  Throws when target exceeds a
/// set size; nullopt when the search (or its node budget) is exhausted.
std::optional<std::vector<std::vector<int>>> mono_grid_extract(
    const std::vector<std::vector<int>>& sets, const ColoredCompleteGraph& g, int target,
    std::uint64_t node_budget = 4000000);

/// A located pattern member: a valid template together with disjoint host
/// parts realizing its blow-up.
struct PatternMatch {
    PatternTemplate T;
    std::vector<std::vector<int>> parts;  // T.k parts, equal sizes
};

// full re-verification by direct color inspection
bool verify_pattern_match(const ColoredCompleteGraph& g, const PatternMatch& m);

/// Heuristic pipeline (DRC per color, grid, signature bucketing, second
/// grid, minimal critical part subset).  Positives are always verified;
/// misses are possible.  Requires t >= 2.
std::optional<PatternMatch> find_pattern_member(const ColoredCompleteGraph& g, int t,
                                                const DrcConfig& cfg);

/// Exhaustive search over catalogue templates and part assignments;
/// absence is definitive.
std::optional<PatternMatch> find_pattern_member_exact(const ColoredCompleteGraph& g, int t,
                                                      const PatternCatalogue& catalogue);

struct MonoClique {
    Color c;
    std::vector<int> vertices;
};

/// Exact monochromatic K_k search in a 2-colored host.
std::optional<MonoClique> ramsey_mono_clique(const ColoredCompleteGraph& g2, int k);

}  // namespace cbal
