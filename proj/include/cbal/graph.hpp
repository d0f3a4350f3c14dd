#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbal {

using Color = int;

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ColorHistogram {
    std::vector<long> counts;

    long min() const;
    long total() const;
};

struct EdgeColor {
    int u, v;
    Color c;
};

// Rank of the unordered pair {u,v}, u != v, in colex order:
// (0,1) (0,2) (1,2) (0,3) ...
inline int pair_rank(int u, int v) {
    if (u > v) std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

/// An r-edge-coloring of the complete graph on n vertices.
/// Immutable after build; colors live in a flat triangular array with
/// per-color bitset adjacency rows kept alongside for fast intersection.
class ColoredCompleteGraph {
public:
    static ColoredCompleteGraph build(int n, int r, std::span<const EdgeColor> edges);

    // complete graph with every edge the same color
    static ColoredCompleteGraph filled(int n, int r, Color c);

    int n() const { return n_; }
    int r() const { return r_; }
    int words() const { return words_; }

    Color color(int u, int v) const { return color_[pair_rank(u, v)]; }

    // bitset row: vertices joined to v by a c-colored edge
    const std::uint64_t* row(Color c, int v) const {
        return adj_.data() + (static_cast<std::size_t>(c) * n_ + v) * words_;
    }
    bool adjacent(Color c, int u, int v) const {
        return (row(c, u)[v >> 6] >> (v & 63)) & 1u;
    }

    ColorHistogram histogram() const;
    ColoredCompleteGraph induced(std::span<const int> S) const;

    std::optional<std::array<int, 3>> find_rainbow_triangle() const;
    std::optional<Color> spanning_color() const;

    std::string to_text() const;
    static ColoredCompleteGraph from_text(std::istream& in);
    static ColoredCompleteGraph from_text(const std::string& s);

private:
    ColoredCompleteGraph(int n, int r, std::vector<Color> colors);

    int n_ = 0, r_ = 0, words_ = 0;
    std::vector<Color> color_;          // size n(n-1)/2, indexed by pair_rank
    std::vector<std::uint64_t> adj_;    // r * n rows of `words_` words
};

/// Result of a longest-path query in one color class.  When `exact` is
/// false the true optimum lies in [edges, upper_bound] (Erdos-Gallai).
struct MonoPathResult {
    std::vector<int> vertices;  // a path witnessing `edges()`
    bool exact = true;
    long lower_bound = 0;       // max(witness length, Erdos-Gallai 2e/n guarantee)
    long upper_bound = 0;

    long edges() const { return vertices.empty() ? 0 : static_cast<long>(vertices.size()) - 1; }
};

// Exact below `exact_cutoff` vertices in the color subgraph (subset DP),
// greedy DFS lower bound plus the Erdos-Gallai upper bound above it.
MonoPathResult longest_monochromatic_path(const ColoredCompleteGraph& g, Color c,
                                          int exact_cutoff = 20);

}  // namespace cbal
