#include "cbal/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace cbal {

namespace {

// Lex-min colex edge-color string over all vertex permutations of one fixed
// color labeling.  `colors` is the triangular array by pair_rank.
struct VertexMinimizer {
    int n;
    const std::vector<Color>& colors;
    std::vector<int> order;            // candidate priority
    std::vector<std::uint8_t> best;    // current best full string
    bool have_best = false;
    std::vector<int> perm;             // perm[pos] = original vertex
    std::vector<std::uint8_t> cur;

    Color col(int u, int v) const { return colors[pair_rank(u, v)]; }

    explicit VertexMinimizer(int n_, const std::vector<Color>& c) : n(n_), colors(c) {
        // priority: sorted color-degree profile, then vertex id
        std::vector<std::vector<int>> profile(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> deg;
            for (int u = 0; u < n; ++u)
                if (u != v) deg.push_back(col(u, v));
            std::sort(deg.begin(), deg.end());
            profile[v] = std::move(deg);
        }
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return profile[a] < profile[b] || (profile[a] == profile[b] && a < b); });
    }

    void run() {
        perm.clear();
        cur.clear();
        std::uint64_t used = 0;
        dfs(0, used, true);
    }

    // tight: cur == best prefix so far (or no best yet)
    void dfs(int depth, std::uint64_t used, bool tight) {
        if (depth == n) {
            if (!have_best || cur < best) {
                best = cur;
                have_best = true;
            }
            return;
        }
        // Candidate dedup: if swapping u and w is an automorphism of the
        // whole graph, their subtrees produce identical strings, so only one
        // representative per such class is tried.  This is what keeps blow-ups
        // and monochromatic hosts tractable.
        std::vector<int> cands;
        for (int v : order) {
            if (used & (std::uint64_t{1} << v)) continue;
            bool dup = false;
            for (int w : cands) {
                bool equiv = true;
                for (int x = 0; x < n && equiv; ++x)
                    if (x != v && x != w && col(x, v) != col(x, w)) equiv = false;
                if (equiv) { dup = true; break; }
            }
            if (!dup) cands.push_back(v);
        }
        for (int v : cands) {
            std::size_t base = cur.size();
            bool ok = true, t = tight;
            for (int i = 0; i < depth && ok; ++i) {
                std::uint8_t c = static_cast<std::uint8_t>(col(perm[i], v));
                std::size_t pos = base + i;
                if (t && have_best) {
                    if (c > best[pos]) { ok = false; break; }
                    if (c < best[pos]) t = false;
                }
                cur.push_back(c);
            }
            if (ok) {
                perm.push_back(v);
                dfs(depth + 1, used | (std::uint64_t{1} << v), t);
                perm.pop_back();
            }
            cur.resize(base);
        }
    }
};

std::vector<std::uint8_t> min_string(int n, const std::vector<Color>& colors) {
    VertexMinimizer vm(n, colors);
    vm.run();
    return vm.best;
}

}  // namespace

CanonicalKey canonical_key(const ColoredCompleteGraph& g, bool quotient_colors) {
    const int n = g.n(), r = g.r();
    if (n > 30) throw validation_error("canonical_key: n too large");

    std::vector<Color> colors;
    colors.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) colors.push_back(g.color(u, v));

    std::vector<std::uint8_t> best;
    if (!quotient_colors || r == 1) {
        best = min_string(n, colors);
    } else {
        std::vector<Color> sigma(r);
        std::iota(sigma.begin(), sigma.end(), 0);
        bool first = true;
        std::vector<Color> remapped(colors.size());
        do {
            for (std::size_t i = 0; i < colors.size(); ++i) remapped[i] = sigma[colors[i]];
            auto s = min_string(n, remapped);
            if (first || s < best) {
                best = std::move(s);
                first = false;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }

    CanonicalKey key;
    key.quotient_colors = quotient_colors;
    key.bytes.push_back(static_cast<std::uint8_t>(n));
    key.bytes.push_back(static_cast<std::uint8_t>(r));
    key.bytes.insert(key.bytes.end(), best.begin(), best.end());
    return key;
}

}  // namespace cbal
