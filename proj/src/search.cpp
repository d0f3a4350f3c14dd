#include "cbal/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace cbal {

namespace {

// common c-neighborhood of a vertex list, as a sorted vector
std::vector<int> common_neighbors(const ColoredCompleteGraph& g, Color c,
                                  const std::vector<int>& verts) {
    const int words = g.words();
    std::vector<std::uint64_t> acc(words, ~std::uint64_t{0});
    for (int v : verts)
        for (int w = 0; w < words; ++w) acc[w] &= g.row(c, v)[w];
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if ((acc[v >> 6] >> (v & 63)) & 1u) out.push_back(v);
    return out;
}

long count_common(const ColoredCompleteGraph& g, Color c, const std::vector<int>& verts) {
    const int words = g.words();
    std::vector<std::uint64_t> acc(words, ~std::uint64_t{0});
    for (int v : verts)
        for (int w = 0; w < words; ++w) acc[w] &= g.row(c, v)[w];
    // mask off vertices beyond n
    long total = 0;
    for (int w = 0; w < words; ++w) {
        std::uint64_t m = acc[w];
        if (w == words - 1 && g.n() % 64) m &= (std::uint64_t{1} << (g.n() % 64)) - 1;
        total += std::popcount(m);
    }
    return total;
}

// all t-subsets of S have >= K common c-neighbors; exhaustive up to a cap
bool verify_drc(const ColoredCompleteGraph& g, Color c, const std::vector<int>& S, int t,
                int K, bool& exhaustive, std::mt19937_64& rng) {
    const int k = static_cast<int>(S.size());
    double subsets = 1;
    for (int i = 0; i < t; ++i) subsets = subsets * (k - i) / (i + 1);
    exhaustive = subsets <= 5000;
    std::vector<int> pick(t);
    if (exhaustive) {
        std::vector<int> idx(t);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            for (int i = 0; i < t; ++i) pick[i] = S[idx[i]];
            if (count_common(g, c, pick) < K) return false;
            int i = t - 1;
            while (i >= 0 && idx[i] == k - t + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
        }
        return true;
    }
    for (int s = 0; s < 5000; ++s) {
        std::vector<int> idx;
        while (static_cast<int>(idx.size()) < t) {
            int x = static_cast<int>(rng() % k);
            if (std::find(idx.begin(), idx.end(), x) == idx.end()) idx.push_back(x);
        }
        for (int i = 0; i < t; ++i) pick[i] = S[idx[i]];
        if (count_common(g, c, pick) < K) return false;
    }
    return true;
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(trial)};
    return std::mt19937_64(seq);
}

}  // namespace

std::optional<DrcResult> drc_find_set(const ColoredCompleteGraph& g, Color c,
                                      const DrcConfig& cfg) {
    return drc_find_set(g, c, cfg, std::vector<char>(g.n(), 0));
}

std::optional<DrcResult> drc_find_set(const ColoredCompleteGraph& g, Color c,
                                      const DrcConfig& cfg,
                                      const std::vector<char>& excluded) {
    if (cfg.t < 1 || cfg.K < 1 || cfg.trials < 1)
        throw validation_error("drc_find_set: bad config");
    for (int trial = 0; trial < cfg.trials; ++trial) {
        auto rng = trial_rng(cfg.seed, trial);
        std::vector<int> sample;
        for (int i = 0; i < cfg.sample_size; ++i) sample.push_back(static_cast<int>(rng() % g.n()));
        auto cand = common_neighbors(g, c, sample);
        std::erase_if(cand, [&](int v) { return excluded[v]; });
        if (static_cast<int>(cand.size()) < cfg.K) continue;
        // trim lowest-codegree vertices until K remain
        while (static_cast<int>(cand.size()) > cfg.K) {
            int worst = -1;
            long worst_deg = -1;
            for (std::size_t i = 0; i < cand.size(); ++i) {
                long d = 0;
                for (int u : cand)
                    if (u != cand[i] && g.color(u, cand[i]) == c) ++d;
                if (worst < 0 || d < worst_deg) {
                    worst = static_cast<int>(i);
                    worst_deg = d;
                }
            }
            cand.erase(cand.begin() + worst);
        }
        bool exhaustive = true;
        if (verify_drc(g, c, cand, cfg.t, cfg.K, exhaustive, rng)) {
            DrcResult res;
            res.set = std::move(cand);
            res.exhaustive = exhaustive;
            res.trials_used = trial + 1;
            return res;
        }
    }
    return std::nullopt;
}

namespace {

struct GridSearcher {
    const std::vector<std::vector<int>>& sets;
    const ColoredCompleteGraph& g;
    int target;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::vector<int>> chosen;
    bool out_of_budget = false;

    bool mono_ok(const std::vector<int>& part, int extra) {
        for (int v : part)
            if (g.color(v, extra) != g.color(part[0], part.size() > 1 ? part[1] : extra))
                return false;
        return true;
    }

    bool cross_ok(const std::vector<int>& a, const std::vector<int>& b) {
        Color c = g.color(a[0], b[0]);
        for (int u : a)
            for (int v : b)
                if (g.color(u, v) != c) return false;
        return true;
    }

    // choose `target` vertices from sets[si] starting at index `from`
    bool pick(std::size_t si, std::size_t from, std::vector<int>& cur) {
        if (++nodes > budget) {
            out_of_budget = true;
            return false;
        }
        if (static_cast<int>(cur.size()) == target) {
            chosen.push_back(cur);
            if (dfs(si + 1)) return true;
            chosen.pop_back();
            return false;
        }
        for (std::size_t i = from; i < sets[si].size(); ++i) {
            int v = sets[si][i];
            // internal monochromaty
            if (cur.size() >= 2 && !mono_ok(cur, v)) continue;
            if (cur.size() == 1 && target > 2) {
                // color fixed by first edge later; nothing to check yet
            }
            cur.push_back(v);
            if (pick(si, i + 1, cur)) return true;
            cur.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    }

    bool dfs(std::size_t si) {
        if (si == sets.size()) {
            // cross-pair verification
            for (std::size_t a = 0; a < chosen.size(); ++a)
                for (std::size_t b = a + 1; b < chosen.size(); ++b)
                    if (!cross_ok(chosen[a], chosen[b])) return false;
            return true;
        }
        std::vector<int> cur;
        return pick(si, 0, cur);
    }
};

}  // namespace

std::optional<std::vector<std::vector<int>>> mono_grid_extract(
    const std::vector<std::vector<int>>& sets, const ColoredCompleteGraph& g, int target,
    std::uint64_t node_budget) {
    if (target < 1) throw validation_error("mono_grid_extract: target must be >= 1");
    for (const auto& s : sets)
        if (static_cast<int>(s.size()) < target)
            throw validation_error("mono_grid_extract: target exceeds a candidate set size");
    // disjointness check
    std::vector<char> seen(g.n(), 0);
    for (const auto& s : sets)
        for (int v : s) {
            if (seen[v]) throw validation_error("mono_grid_extract: sets not disjoint");
            seen[v] = 1;
        }
    GridSearcher gs{sets, g, target, node_budget};
    if (gs.dfs(0)) return gs.chosen;
    return std::nullopt;
}

bool verify_pattern_match(const ColoredCompleteGraph& g, const PatternMatch& m) {
    if (static_cast<int>(m.parts.size()) != m.T.k) return false;
    if (!is_valid_template(m.T).ok) return false;
    std::size_t t = m.parts.empty() ? 0 : m.parts[0].size();
    if (t == 0) return false;
    std::vector<char> seen(g.n(), 0);
    for (const auto& p : m.parts) {
        if (p.size() != t) return false;
        for (int v : p) {
            if (v < 0 || v >= g.n() || seen[v]) return false;
            seen[v] = 1;
        }
    }
    for (int i = 0; i < m.T.k; ++i)
        for (int j = i; j < m.T.k; ++j)
            for (int u : m.parts[i])
                for (int v : m.parts[j]) {
                    if (u == v) continue;
                    if (i == j && u >= v) continue;
                    if (g.color(u, v) != m.T.at(i, j)) return false;
                }
    return true;
}

namespace {

// template induced by a grid of mono parts with mono cross pairs
PatternTemplate grid_template(const ColoredCompleteGraph& g, int r,
                              const std::vector<std::vector<int>>& parts) {
    PatternTemplate T;
    T.r = r;
    T.k = static_cast<int>(parts.size());
    T.M.assign(static_cast<std::size_t>(T.k) * T.k, 0);
    for (int i = 0; i < T.k; ++i) {
        T.at(i, i) = g.color(parts[i][0], parts[i][1]);
        for (int j = i + 1; j < T.k; ++j)
            T.at(i, j) = T.at(j, i) = g.color(parts[i][0], parts[j][0]);
    }
    return T;
}

// smallest part subset whose induced template is valid
std::optional<PatternMatch> minimal_valid_subset(const ColoredCompleteGraph& g, int r,
                                                 const std::vector<std::vector<int>>& parts) {
    const int k = static_cast<int>(parts.size());
    auto full = grid_template(g, r, parts);
    std::vector<int> order(1 << k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [](int a, int b) { return std::popcount(static_cast<unsigned>(a)) <
                                               std::popcount(static_cast<unsigned>(b)); });
    for (int mask : order) {
        if (mask == 0) continue;
        std::vector<int> idx;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) idx.push_back(i);
        PatternTemplate T;
        T.r = r;
        T.k = static_cast<int>(idx.size());
        T.M.assign(static_cast<std::size_t>(T.k) * T.k, 0);
        for (int a = 0; a < T.k; ++a)
            for (int b = 0; b < T.k; ++b) T.at(a, b) = full.at(idx[a], idx[b]);
        if (!is_valid_template(T).ok) continue;
        PatternMatch m;
        m.T = std::move(T);
        for (int i : idx) m.parts.push_back(parts[i]);
        if (verify_pattern_match(g, m)) return m;
    }
    return std::nullopt;
}

}  // namespace

std::optional<PatternMatch> find_pattern_member(const ColoredCompleteGraph& g, int t,
                                                const DrcConfig& cfg_in) {
    if (t < 2) throw validation_error("find_pattern_member: t must be >= 2");
    const int r = g.r();
    DrcConfig cfg = cfg_in;
    cfg.t = std::max(cfg.t, t);
    cfg.K = std::max(cfg.K, 2 * t);

    // stages 1-2: one DRC set per color, later colors avoiding earlier claims
    std::vector<std::vector<int>> sets;
    std::vector<char> taken(g.n(), 0);
    for (Color c = 0; c < r; ++c) {
        DrcConfig cc = cfg;
        cc.seed = cfg.seed * 1000003u + static_cast<std::uint64_t>(c);
        auto res = drc_find_set(g, c, cc, taken);
        if (!res) return std::nullopt;
        for (int v : res->set) taken[v] = 1;
        sets.push_back(std::move(res->set));
    }

    // stage 3: first grid
    auto grid = mono_grid_extract(sets, g, t);
    if (!grid) return std::nullopt;

    // stage 4: maybe the r-part structure already contains a member
    if (auto m = minimal_valid_subset(g, r, *grid)) return m;

    // stage 5: bucket outside vertices by their per-part color signature,
    // keeping only vertices monochromatic towards every grid part
    std::vector<char> core(g.n(), 0);
    for (const auto& p : *grid)
        for (int v : p) core[v] = 1;
    std::map<std::vector<Color>, std::vector<int>> buckets;
    for (int v = 0; v < g.n(); ++v) {
        if (core[v]) continue;
        std::vector<Color> sig;
        bool uniform = true;
        for (const auto& p : *grid) {
            Color c = g.color(v, p[0]);
            for (int u : p)
                if (g.color(v, u) != c) uniform = false;
            sig.push_back(c);
        }
        if (uniform) buckets[sig].push_back(v);
    }
    std::vector<std::vector<int>> big;
    for (auto& [sig, verts] : buckets)
        if (static_cast<int>(verts.size()) >= t) big.push_back(verts);
    std::sort(big.begin(), big.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    if (static_cast<int>(big.size()) > r) big.resize(r);  // up to 2r parts total
    if (big.empty()) return std::nullopt;

    // stage 6: second grid over the buckets (cross-to-core is mono already)
    auto grid2 = mono_grid_extract(big, g, t);
    if (!grid2) return std::nullopt;
    auto parts = *grid;
    for (auto& p : *grid2) parts.push_back(std::move(p));

    return minimal_valid_subset(g, r, parts);
}

namespace {

struct ExactSearcher {
    const ColoredCompleteGraph& g;
    const PatternTemplate& T;
    int t;
    std::vector<int> slot;  // flattened parts, part i occupies [i*t, (i+1)*t)
    std::uint64_t used = 0;

    bool ok(int pos, int v) {
        int part = pos / t;
        for (int p = 0; p < pos; ++p) {
            int q = p / t;
            Color want = T.at(q, part);
            if (g.color(slot[p], v) != want) return false;
        }
        return true;
    }

    bool dfs(int pos) {
        if (pos == T.k * t) return true;
        bool fresh_part = pos % t == 0;
        int start = fresh_part ? 0 : slot[pos - 1] + 1;  // parts are sets: ascending
        for (int v = start; v < g.n(); ++v) {
            if (used & (std::uint64_t{1} << v)) continue;
            if (!ok(pos, v)) continue;
            slot.push_back(v);
            used |= std::uint64_t{1} << v;
            if (dfs(pos + 1)) return true;
            used &= ~(std::uint64_t{1} << v);
            slot.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<PatternMatch> find_pattern_member_exact(const ColoredCompleteGraph& g, int t,
                                                      const PatternCatalogue& catalogue) {
    if (t < 1) throw validation_error("find_pattern_member_exact: t must be >= 1");
    if (catalogue.r != g.r())
        throw validation_error("find_pattern_member_exact: catalogue r mismatch");
    if (g.n() > 64) throw validation_error("find_pattern_member_exact: host too large");
    for (const auto& T : catalogue.templates) {
        if (T.k * t > g.n()) continue;
        ExactSearcher es{g, T, t};
        if (es.dfs(0)) {
            PatternMatch m;
            m.T = T;
            for (int i = 0; i < T.k; ++i)
                m.parts.emplace_back(es.slot.begin() + static_cast<long>(i) * t,
                                     es.slot.begin() + static_cast<long>(i + 1) * t);
            if (!verify_pattern_match(g, m))
                throw validation_error("find_pattern_member_exact: internal: bad match");
            return m;
        }
    }
    return std::nullopt;
}

std::optional<MonoClique> ramsey_mono_clique(const ColoredCompleteGraph& g2, int k) {
    if (g2.r() != 2) throw validation_error("ramsey_mono_clique: host must be 2-colored");
    if (k < 1) throw validation_error("ramsey_mono_clique: k must be >= 1");
    if (g2.n() > 64) throw validation_error("ramsey_mono_clique: host too large");
    for (Color c = 0; c < 2; ++c) {
        std::vector<int> clique;
        // backtracking clique search in the c-colored graph
        auto extend = [&](auto&& self, std::uint64_t cands, int from) -> bool {
            if (static_cast<int>(clique.size()) == k) return true;
            for (int v = from; v < g2.n(); ++v) {
                if (!((cands >> v) & 1)) continue;
                if (g2.n() - v < k - static_cast<int>(clique.size())) break;
                std::uint64_t next = cands;
                for (int u = 0; u < g2.n(); ++u)
                    if (((next >> u) & 1) && u != v && !g2.adjacent(c, v, u))
                        next &= ~(std::uint64_t{1} << u);
                clique.push_back(v);
                if (self(self, next, v + 1)) return true;
                clique.pop_back();
            }
            return false;
        };
        std::uint64_t all =
            g2.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g2.n()) - 1;
        if (extend(extend, all, 0)) return MonoClique{c, clique};
    }
    return std::nullopt;
}

}  // namespace cbal
