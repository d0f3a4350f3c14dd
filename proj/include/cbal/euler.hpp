#pragma once

#include <vector>

#include "cbal/balance.hpp"
#include "cbal/graph.hpp"
#include "cbal/pattern.hpp"

namespace cbal {

/// Auxiliary multigraph on the parts of a template: mult[i][j] parallel
/// edges between parts i and j, colored by the template's pair color.
struct ColorMultigraph {
    int parts = 0;
    std::vector<int> mult;        // parts*parts, symmetric, zero diagonal
    std::vector<Color> pair_color;

    int& at(int i, int j) { return mult[static_cast<std::size_t>(i) * parts + j]; }
    int at(int i, int j) const { return mult[static_cast<std::size_t>(i) * parts + j]; }
    Color color(int i, int j) const {
        return pair_color[static_cast<std::size_t>(i) * parts + j];
    }
    long degree(int i) const;
    long total_edges() const;  // each unordered pair counted once
};

/// A walk over parts; closed (front == back) for Eulerian circuits.
struct PartWalk {
    std::vector<int> seq;
};

// off-diagonal colors of the template, sorted
std::vector<Color> crossing_colors(const PatternTemplate& T);

// number of part pairs carrying color c, written #c below
int pair_count(const PatternTemplate& T, Color c);

// lcm of the pair counts over all crossing colors
long lcm_k0(const PatternTemplate& T);

// smallest k for which build_multigraph is feasible: max #c over crossing colors
int embed_feasibility_threshold(const PatternTemplate& T);

/// Per crossing color, even multiplicities >= 2 summing to 2k.  Relaxed mode
/// spreads evenly (feasible iff k >= #c for every crossing color); uniform
/// mode uses the flat 2k/#c assignment and requires #c | k.
ColorMultigraph build_multigraph(const PatternTemplate& T, int k, bool uniform = false);

// Hierholzer circuit using every multigraph edge exactly once
PartWalk eulerian_circuit(const ColorMultigraph& mg);

/// Expands the circuit into a balanced P_{2rk} inside blow_up(T, t): fresh
/// part vertices per visit, plus a 2k-edge monochromatic detour inside the
/// first-visited part of each color that never crosses parts.
Embedding embed_balanced_long_path(const PatternTemplate& T, int t, int k,
                                   bool uniform = false);

// exact per-part vertex budget the expansion needs (min feasible t)
std::vector<int> embed_vertex_budget(const PatternTemplate& T, int k, bool uniform = false);

/// Parity view of the contracted demand "k edges across every crossing
/// color".  Degrees are forced only when every crossing color sits on a
/// single pair (the clique-partition situation); an Eulerian trail then
/// needs at most two odd parts.
struct ParityReport {
    bool determined = false;
    std::vector<long> degree;  // forced cross degree per part (valid when determined)
    int odd_parts = 0;
    bool trail_feasible = true;
};

ParityReport walk_parity_report(const PatternTemplate& T, int k);

}  // namespace cbal
