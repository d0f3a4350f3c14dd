#include "cbal/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <sstream>

namespace cbal {

long ColorHistogram::min() const {
    return counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
}

long ColorHistogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0L);
}

ColoredCompleteGraph::ColoredCompleteGraph(int n, int r, std::vector<Color> colors)
    : n_(n), r_(r), words_((n + 63) / 64), color_(std::move(colors)) {
    adj_.assign(static_cast<std::size_t>(r_) * n_ * words_, 0);
    for (int v = 1; v < n_; ++v) {
        for (int u = 0; u < v; ++u) {
            Color c = color_[pair_rank(u, v)];
            auto set = [&](int a, int b) {
                adj_[(static_cast<std::size_t>(c) * n_ + a) * words_ + (b >> 6)] |=
                    std::uint64_t{1} << (b & 63);
            };
            set(u, v);
            set(v, u);
        }
    }
}

ColoredCompleteGraph ColoredCompleteGraph::build(int n, int r,
                                                 std::span<const EdgeColor> edges) {
    if (n < 1) throw validation_error("vertex count must be >= 1");
    if (r < 1) throw validation_error("color count must be >= 1");
    const int m = n * (n - 1) / 2;
    std::vector<Color> colors(m, -1);
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
            throw validation_error("edge endpoints out of range: " + std::to_string(e.u) +
                                   " " + std::to_string(e.v));
        if (e.c < 0 || e.c >= r)
            throw validation_error("color out of range: " + std::to_string(e.c));
        int idx = pair_rank(e.u, e.v);
        if (colors[idx] != -1)
            throw validation_error("duplicate pair: " + std::to_string(e.u) + " " +
                                   std::to_string(e.v));
        colors[idx] = e.c;
    }
    for (int idx = 0; idx < m; ++idx)
        if (colors[idx] == -1) throw validation_error("missing pair at rank " + std::to_string(idx));
    return ColoredCompleteGraph(n, r, std::move(colors));
}

ColoredCompleteGraph ColoredCompleteGraph::filled(int n, int r, Color c) {
    if (c < 0 || c >= r) throw validation_error("color out of range");
    std::vector<Color> colors(static_cast<std::size_t>(n) * (n - 1) / 2, c);
    return ColoredCompleteGraph(n, r, std::move(colors));
}

ColorHistogram ColoredCompleteGraph::histogram() const {
    ColorHistogram h;
    h.counts.assign(r_, 0);
    for (Color c : color_) ++h.counts[c];
    return h;
}

ColoredCompleteGraph ColoredCompleteGraph::induced(std::span<const int> S) const {
    std::vector<Color> colors;
    colors.reserve(S.size() * (S.size() - 1) / 2);
    for (std::size_t j = 0; j < S.size(); ++j) {
        if (S[j] < 0 || S[j] >= n_) throw validation_error("induced: vertex out of range");
        for (std::size_t i = 0; i < j; ++i) {
            if (S[i] == S[j]) throw validation_error("induced: repeated vertex");
            colors.push_back(color(S[i], S[j]));
        }
    }
    return ColoredCompleteGraph(static_cast<int>(S.size()), r_, std::move(colors));
}

std::optional<std::array<int, 3>> ColoredCompleteGraph::find_rainbow_triangle() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b) {
            Color ab = color(a, b);
            for (int c = b + 1; c < n_; ++c) {
                Color ac = color(a, c), bc = color(b, c);
                if (ab != ac && ab != bc && ac != bc) return std::array<int, 3>{a, b, c};
            }
        }
    return std::nullopt;
}

std::optional<Color> ColoredCompleteGraph::spanning_color() const {
    if (n_ < 2) return std::nullopt;
    std::vector<int> comp(n_);
    for (Color c = 0; c < r_; ++c) {
        // BFS over the color-c subgraph from vertex 0
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            const std::uint64_t* rw = row(c, v);
            for (int w = 0; w < words_; ++w) {
                std::uint64_t bits = rw[w];
                while (bits) {
                    int b = std::countr_zero(bits);
                    bits &= bits - 1;
                    int u = w * 64 + b;
                    if (!seen[u]) {
                        seen[u] = 1;
                        ++reached;
                        stack.push_back(u);
                    }
                }
            }
        }
        if (reached == n_) return c;
    }
    return std::nullopt;
}

std::string ColoredCompleteGraph::to_text() const {
    std::ostringstream out;
    out << n_ << ' ' << r_ << '\n';
    for (int v = 1; v < n_; ++v)
        for (int u = 0; u < v; ++u) out << u << ' ' << v << ' ' << color(u, v) << '\n';
    return out.str();
}

ColoredCompleteGraph ColoredCompleteGraph::from_text(std::istream& in) {
    int n, r;
    if (!(in >> n >> r)) throw validation_error("graph text: missing header");
    if (n < 1 || r < 1) throw validation_error("graph text: bad header");
    std::vector<EdgeColor> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    int u, v, c;
    while (in >> u >> v >> c) edges.push_back({u, v, c});
    if (edges.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
        throw validation_error("graph text: expected " +
                               std::to_string(n * (n - 1) / 2) + " edge lines, got " +
                               std::to_string(edges.size()));
    return build(n, r, edges);
}

ColoredCompleteGraph ColoredCompleteGraph::from_text(const std::string& s) {
    std::istringstream in(s);
    return from_text(in);
}

namespace {

// exact longest path by subset DP: reach[S] = endpoints v such that some
// path visits exactly S and ends at v
MonoPathResult longest_path_exact(const ColoredCompleteGraph& g, Color c,
                                  const std::vector<int>& verts) {
    const int m = static_cast<int>(verts.size());
    std::vector<std::uint32_t> adj(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && g.color(verts[i], verts[j]) == c) adj[i] |= 1u << j;

    std::vector<std::uint32_t> reach(std::size_t{1} << m, 0);
    for (int i = 0; i < m; ++i) reach[std::uint32_t{1} << i] = 1u << i;

    int best_bits = 1;
    std::uint32_t best_set = 1, best_end = 0;
    for (std::uint32_t S = 1; S < (std::uint32_t{1} << m); ++S) {
        std::uint32_t ends = reach[S];
        if (!ends) continue;
        int bits = std::popcount(S);
        if (bits > best_bits) {
            best_bits = bits;
            best_set = S;
            best_end = static_cast<std::uint32_t>(std::countr_zero(ends));
        }
        std::uint32_t e = ends;
        while (e) {
            int v = std::countr_zero(e);
            e &= e - 1;
            std::uint32_t nxt = adj[v] & ~S;
            while (nxt) {
                int w = std::countr_zero(nxt);
                nxt &= nxt - 1;
                reach[S | (1u << w)] |= 1u << w;
            }
        }
    }

    // reconstruct a path ending at best_end covering best_set
    std::vector<int> path;
    std::uint32_t S = best_set;
    int v = static_cast<int>(best_end);
    path.push_back(verts[v]);
    while (std::popcount(S) > 1) {
        std::uint32_t S2 = S & ~(1u << v);
        std::uint32_t prev = reach[S2] & adj[v];
        int u = std::countr_zero(prev);
        path.push_back(verts[u]);
        S = S2;
        v = u;
    }
    std::reverse(path.begin(), path.end());
    MonoPathResult res;
    res.vertices = std::move(path);
    res.exact = true;
    res.lower_bound = res.edges();
    res.upper_bound = res.edges();
    return res;
}

MonoPathResult longest_path_greedy(const ColoredCompleteGraph& g, Color c,
                                   const std::vector<int>& verts, long mono_edges) {
    // DFS lower bound from every start, extending to an arbitrary free neighbor
    std::vector<int> best;
    for (int s : verts) {
        std::vector<char> used(g.n(), 0);
        std::vector<int> path{s};
        used[s] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            int v = path.back();
            for (int u : verts)
                if (!used[u] && g.color(u, v) == c) {
                    used[u] = 1;
                    path.push_back(u);
                    grew = true;
                    break;
                }
        }
        if (path.size() > best.size()) best = std::move(path);
    }
    MonoPathResult res;
    res.vertices = std::move(best);
    res.exact = false;
    // Erdos-Gallai: e > (k-1)n/2 forces a P_k, so the optimum is at least
    // ceil(2e/n); the witness path may be shorter than that guarantee.
    // The reported interval is [max(greedy, 2e/n), n_sub - 1].
    long eg = (2 * mono_edges) / static_cast<long>(verts.size());
    res.lower_bound = std::max(res.edges(), eg);
    res.upper_bound = static_cast<long>(verts.size()) - 1;
    return res;
}

}  // namespace

MonoPathResult longest_monochromatic_path(const ColoredCompleteGraph& g, Color c,
                                          int exact_cutoff) {
    std::vector<int> verts;
    long mono_edges = 0;
    for (int v = 0; v < g.n(); ++v) {
        bool touched = false;
        for (int u = 0; u < g.n(); ++u)
            if (u != v && g.color(u, v) == c) {
                touched = true;
                if (u < v) ++mono_edges;
            }
        if (touched) verts.push_back(v);
    }
    if (verts.empty()) return MonoPathResult{};
    if (static_cast<int>(verts.size()) <= exact_cutoff && verts.size() <= 30)
        return longest_path_exact(g, c, verts);
    return longest_path_greedy(g, c, verts, mono_edges);
}

}  // namespace cbal
