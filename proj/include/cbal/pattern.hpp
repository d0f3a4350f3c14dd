#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbal/canonical.hpp"
#include "cbal/graph.hpp"

namespace cbal {

/// A template for an unavoidable colored graph: k parts with a symmetric
/// k x k color matrix.  M[i][i] is the internal clique color of part i,
/// M[i][j] the color of the complete bipartite graph between parts i and j.
struct PatternTemplate {
    int r = 0;
    int k = 0;
    std::vector<Color> M;  // row-major k*k, symmetric

    Color at(int i, int j) const { return M[static_cast<std::size_t>(i) * k + j]; }
    Color& at(int i, int j) { return M[static_cast<std::size_t>(i) * k + j]; }
};

struct TemplateCheck {
    bool ok = true;
    std::string violation;
};

// Conditions: every color in [0,r) appears in M (all colors present), and
// every part is critical: removing it removes some color entirely.
TemplateCheck is_valid_template(const PatternTemplate& T);

ColoredCompleteGraph blow_up(const PatternTemplate& T, int t);

// Blow-up with explicit per-part sizes (sizes[i] >= 1).
ColoredCompleteGraph blow_up_sizes(const PatternTemplate& T, std::span<const int> sizes);

// Orientation of K_r given as a matrix: arc[i][j] true iff i -> j.
struct Tournament {
    int r = 0;
    std::vector<char> arc;  // row-major r*r

    bool points(int i, int j) const { return arc[static_cast<std::size_t>(i) * r + j]; }
};

// One part per tournament vertex; part i internally colored i, cross pairs
// colored by the part the arc points to.
PatternTemplate tournament_pattern(const Tournament& T);

// All non-isomorphic tournaments on r vertices (brute-force dedup, r <= 5).
std::vector<Tournament> enumerate_tournaments(int r);

// 2(r-1) parts; parts 2i, 2i+1 joined by color i for i < r-1, every other
// entry (including all diagonals) color r-1.
PatternTemplate separator_pattern(int r);

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PatternCatalogue {
    int r = 0;
    std::vector<PatternTemplate> templates;  // sorted by (k, canonical key)
    std::vector<CanonicalKey> keys;          // canonical key of the t=2 blow-up
    bool complete = true;
    std::uint64_t nodes = 0;

    bool contains(const CanonicalKey& key) const;
};

/// Thrown when the enumeration node budget runs out; carries whatever part
/// of the catalogue had been collected.
struct enumeration_budget_exceeded : budget_exceeded {
    enumeration_budget_exceeded(const std::string& msg, PatternCatalogue partial_)
        : budget_exceeded(msg), partial(std::move(partial_)) {}
    PatternCatalogue partial;
};

// Backtracking over symmetric color matrices with part-order and color-order
// symmetry breaking plus criticality feasibility pruning; final dedup by the
// canonical key of the t=2 blow-up with quotient_colors=true.  Returns a
// partial catalogue flagged incomplete when the node budget runs out.
PatternCatalogue enumerate_patterns(int r, std::uint64_t node_budget = 1000000000ULL);

std::string template_to_json(const PatternTemplate& T);
PatternTemplate template_from_json(const std::string& json);
std::string catalogue_to_json(const PatternCatalogue& cat);

}  // namespace cbal
