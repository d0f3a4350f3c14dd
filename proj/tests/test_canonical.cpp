#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cbal/canonical.hpp"
#include "cbal/graph.hpp"

using namespace cbal;

namespace {

ColoredCompleteGraph random_graph(int n, int r, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, r - 1);
    std::vector<EdgeColor> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, d(rng)});
    return ColoredCompleteGraph::build(n, r, edges);
}

ColoredCompleteGraph permute_vertices(const ColoredCompleteGraph& g,
                                      const std::vector<int>& p) {
    std::vector<EdgeColor> edges;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) edges.push_back({p[u], p[v], g.color(u, v)});
    return ColoredCompleteGraph::build(g.n(), g.r(), edges);
}

ColoredCompleteGraph permute_colors(const ColoredCompleteGraph& g,
                                    const std::vector<int>& sigma) {
    std::vector<EdgeColor> edges;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) edges.push_back({u, v, sigma[g.color(u, v)]});
    return ColoredCompleteGraph::build(g.n(), g.r(), edges);
}

// brute-force colored-graph isomorphism (vertex permutation only)
bool iso_vertices(const ColoredCompleteGraph& a, const ColoredCompleteGraph& b) {
    if (a.n() != b.n() || a.r() != b.r()) return false;
    std::vector<int> p(a.n());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < a.n() && ok; ++u)
            for (int v = u + 1; v < a.n() && ok; ++v)
                if (a.color(u, v) != b.color(p[u], p[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

bool iso_colored(const ColoredCompleteGraph& a, const ColoredCompleteGraph& b) {
    std::vector<int> sigma(a.r());
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        if (iso_vertices(permute_colors(a, sigma), b)) return true;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

}  // namespace

TEST_CASE("relabeled rainbow triangles share a color-quotiented key") {
    EdgeColor e1[] = {{0, 1, 0}, {0, 2, 1}, {1, 2, 2}};
    EdgeColor e2[] = {{0, 1, 2}, {0, 2, 0}, {1, 2, 1}};
    auto a = ColoredCompleteGraph::build(3, 3, e1);
    auto b = ColoredCompleteGraph::build(3, 3, e2);
    CHECK(canonical_key(a, true) == canonical_key(b, true));

    // without the color quotient, distinct color multisets stay distinct
    EdgeColor e3[] = {{0, 1, 0}, {0, 2, 0}, {1, 2, 1}};
    EdgeColor e4[] = {{0, 1, 1}, {0, 2, 1}, {1, 2, 0}};
    auto c = ColoredCompleteGraph::build(3, 3, e3);
    auto d = ColoredCompleteGraph::build(3, 3, e4);
    CHECK(canonical_key(c, false) != canonical_key(d, false));
    CHECK(canonical_key(c, true) == canonical_key(d, true));
}

TEST_CASE("rainbow vs monochromatic K3") {
    EdgeColor e1[] = {{0, 1, 0}, {0, 2, 1}, {1, 2, 2}};
    auto a = ColoredCompleteGraph::build(3, 3, e1);
    auto b = ColoredCompleteGraph::filled(3, 3, 0);
    CHECK(canonical_key(a, true) != canonical_key(b, true));
}

TEST_CASE("all 27 colorings of K3 fall into 3 classes") {
    std::set<CanonicalKey> keys;
    std::vector<ColoredCompleteGraph> graphs;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                EdgeColor e[] = {{0, 1, a}, {0, 2, b}, {1, 2, c}};
                graphs.push_back(ColoredCompleteGraph::build(3, 3, e));
                keys.insert(canonical_key(graphs.back(), true));
            }
    CHECK(keys.size() == 3);

    // oracle: bucket the 27 by exhaustive isomorphism check
    std::vector<ColoredCompleteGraph> reps;
    for (const auto& g : graphs) {
        bool found = false;
        for (const auto& rep : reps)
            if (iso_colored(g, rep)) found = true;
        if (!found) reps.push_back(g);
    }
    CHECK(reps.size() == 3);
}

TEST_CASE("keys invariant under random permutations") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        int r = 2 + static_cast<int>(rng() % 3);
        auto g = random_graph(n, r, rng);
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        auto gp = permute_vertices(g, p);
        CHECK(canonical_key(g, false) == canonical_key(gp, false));

        std::vector<int> sigma(r);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        auto gc = permute_colors(gp, sigma);
        CHECK(canonical_key(g, true) == canonical_key(gc, true));
    }
}

TEST_CASE("distinct classes get distinct keys on small hosts") {
    // every pair of 2-colorings of K4: key equality must match brute force
    std::vector<ColoredCompleteGraph> graphs;
    for (std::uint32_t bits = 0; bits < 64; ++bits) {
        std::vector<EdgeColor> edges;
        int e = 0;
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) edges.push_back({u, v, static_cast<int>((bits >> e++) & 1)});
        graphs.push_back(ColoredCompleteGraph::build(4, 2, edges));
    }
    std::map<CanonicalKey, int> reps;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto key = canonical_key(graphs[i], true);
        auto [it, fresh] = reps.emplace(key, static_cast<int>(i));
        CHECK(iso_colored(graphs[i], graphs[it->second]) == true);
    }
    // cross-check: representatives are pairwise non-isomorphic
    std::vector<int> idx;
    for (auto& [k, i] : reps) idx.push_back(i);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            CHECK_FALSE(iso_colored(graphs[idx[a]], graphs[idx[b]]));
}

TEST_CASE("canonicalization copes with highly symmetric hosts") {
    auto g = ColoredCompleteGraph::filled(16, 3, 1);
    auto key = canonical_key(g, true);
    auto key2 = canonical_key(ColoredCompleteGraph::filled(16, 3, 2), true);
    CHECK(key == key2);
}
