#include "cbal/balance.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <future>
#include <numeric>
#include <thread>

#include "cbal/canonical.hpp"

namespace cbal {

Guest path_guest(int L) {
    if (L < 1) throw validation_error("path length must be >= 1");
    Guest g;
    g.n = L + 1;
    for (int i = 0; i < L; ++i) g.edges.emplace_back(i, i + 1);
    return g;
}

Guest cycle_guest(int L) {
    if (L < 3) throw validation_error("cycle length must be >= 3");
    Guest g;
    g.n = L;
    for (int i = 0; i < L; ++i) g.edges.emplace_back(i, (i + 1) % L);
    return g;
}

Embedding make_embedding(const ColoredCompleteGraph& host, Guest guest,
                         std::vector<int> map) {
    if (static_cast<int>(map.size()) != guest.n)
        throw validation_error("embedding: map size mismatch");
    std::vector<char> seen(host.n(), 0);
    for (int v : map) {
        if (v < 0 || v >= host.n()) throw validation_error("embedding: vertex out of range");
        if (seen[v]) throw validation_error("embedding: map not injective");
        seen[v] = 1;
    }
    Embedding e;
    e.guest = std::move(guest);
    e.map = std::move(map);
    e.profile.assign(host.r(), 0);
    for (auto [a, b] : e.guest.edges) ++e.profile[host.color(e.map[a], e.map[b])];
    return e;
}

bool is_balanced(const Embedding& e) {
    const long m = e.guest.m();
    const long r = static_cast<long>(e.profile.size());
    const long lo = m / r, hi = (m + r - 1) / r;
    for (long c : e.profile)
        if (c != lo && c != hi) return false;
    return true;
}

namespace {

// Shared bookkeeping for balanced searches: per-color counts constrained to
// end up in {floor, floor+1} with at most (m mod r) colors above floor.
struct ColorBudget {
    long floor_, rem_;  // m = floor*r + rem
    std::vector<long> cnt;
    long overflow = 0;  // colors currently at floor+1
    long slack = 0;     // sum over colors of (floor - cnt), while below floor

    ColorBudget(long m, int r) : floor_(m / r), rem_(m % r), cnt(r, 0), slack(floor_ * r) {}

    bool can_add(Color c) const {
        if (cnt[c] < floor_) return true;
        return cnt[c] == floor_ && overflow < rem_;
    }
    void add(Color c) {
        if (cnt[c] < floor_)
            --slack;
        else
            ++overflow;
        ++cnt[c];
    }
    void remove(Color c) {
        --cnt[c];
        if (cnt[c] < floor_)
            ++slack;
        else
            --overflow;
    }
    // can the remaining `need` edges still be colored within budget?
    bool enough_room(long need) const { return slack + (rem_ - overflow) >= need; }
};

struct PathSearcher {
    const ColoredCompleteGraph& g;
    int L;
    ColorBudget budget;
    std::vector<int> path;
    bool cycle = false;

    PathSearcher(const ColoredCompleteGraph& host, int L_, int r)
        : g(host), L(L_), budget(L_, r) {}

    bool dfs_path(int last, std::uint64_t used, int steps) {
        if (steps == L) return true;
        if (!budget.enough_room(L - steps)) return false;
        for (int v = 0; v < g.n(); ++v) {
            if (used & (std::uint64_t{1} << v)) continue;
            Color c = g.color(last, v);
            if (!budget.can_add(c)) continue;
            budget.add(c);
            path.push_back(v);
            if (dfs_path(v, used | (std::uint64_t{1} << v), steps + 1)) return true;
            path.pop_back();
            budget.remove(c);
        }
        return false;
    }

    // cycle on L vertices; path[0] is the minimum vertex of the cycle
    bool dfs_cycle(int last, std::uint64_t used, int steps) {
        if (steps == L - 1) {
            if (path[1] > path.back()) return false;  // direction symmetry
            Color c = g.color(last, path[0]);
            if (!budget.can_add(c)) return false;
            budget.add(c);
            bool ok = budget.overflow == budget.rem_ || budget.rem_ == 0;
            // all counts are in range by construction; closing must land exact
            ok = ok && budget.slack == 0;
            if (!ok) budget.remove(c);
            return ok;
        }
        if (!budget.enough_room(L - steps)) return false;
        for (int v = path[0] + 1; v < g.n(); ++v) {
            if (used & (std::uint64_t{1} << v)) continue;
            Color c = g.color(last, v);
            if (!budget.can_add(c)) continue;
            budget.add(c);
            path.push_back(v);
            if (dfs_cycle(v, used | (std::uint64_t{1} << v), steps + 1)) return true;
            path.pop_back();
            budget.remove(c);
        }
        return false;
    }
};

}  // namespace

std::optional<Embedding> find_balanced_path(const ColoredCompleteGraph& host, int L, int r) {
    if (r != host.r()) throw validation_error("find_balanced_path: r mismatch");
    if (L < 1) throw validation_error("find_balanced_path: L must be >= 1");
    if (host.n() > 64) throw validation_error("find_balanced_path: host too large");
    if (L + 1 > host.n()) return std::nullopt;
    for (int s = 0; s < host.n(); ++s) {
        PathSearcher ps(host, L, r);
        ps.path.push_back(s);
        if (ps.dfs_path(s, std::uint64_t{1} << s, 0))
            return make_embedding(host, path_guest(L), ps.path);
    }
    return std::nullopt;
}

std::optional<Embedding> find_balanced_cycle(const ColoredCompleteGraph& host, int L, int r) {
    if (r != host.r()) throw validation_error("find_balanced_cycle: r mismatch");
    if (L < 3) throw validation_error("find_balanced_cycle: L must be >= 3");
    if (host.n() > 64) throw validation_error("find_balanced_cycle: host too large");
    if (L > host.n()) return std::nullopt;
    for (int s = 0; s + L <= host.n(); ++s) {
        PathSearcher ps(host, L, r);
        ps.path.push_back(s);
        if (ps.dfs_cycle(s, std::uint64_t{1} << s, 0))
            return make_embedding(host, cycle_guest(L), ps.path);
    }
    return std::nullopt;
}

namespace {

// connectivity-first ordering: start at a max-degree vertex, repeatedly pick
// the vertex with most already-placed neighbors
std::vector<int> guest_order(const Guest& guest) {
    std::vector<std::vector<int>> adj(guest.n);
    for (auto [a, b] : guest.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> order;
    std::vector<char> placed(guest.n, 0);
    for (int step = 0; step < guest.n; ++step) {
        int best = -1, best_back = -1, best_deg = -1;
        for (int v = 0; v < guest.n; ++v) {
            if (placed[v]) continue;
            int back = 0;
            for (int u : adj[v]) back += placed[u];
            int deg = static_cast<int>(adj[v].size());
            if (back > best_back || (back == best_back && deg > best_deg)) {
                best = v;
                best_back = back;
                best_deg = deg;
            }
        }
        order.push_back(best);
        placed[best] = 1;
    }
    return order;
}

struct CopySearcher {
    const ColoredCompleteGraph& g;
    const Guest& guest;
    ColorBudget budget;
    std::vector<int> order;
    std::vector<std::vector<int>> back_edges;  // per order position: earlier positions adjacent
    std::vector<int> map_by_pos;

    CopySearcher(const ColoredCompleteGraph& host, const Guest& gu, int r)
        : g(host), guest(gu), budget(gu.m(), r), order(guest_order(gu)) {
        std::vector<int> pos_of(guest.n);
        for (int p = 0; p < guest.n; ++p) pos_of[order[p]] = p;
        back_edges.resize(guest.n);
        for (auto [a, b] : guest.edges) {
            int pa = pos_of[a], pb = pos_of[b];
            back_edges[std::max(pa, pb)].push_back(std::min(pa, pb));
        }
    }

    bool dfs(int pos, std::uint64_t used) {
        if (pos == guest.n) return true;
        long remaining_edges = 0;
        for (int p = pos; p < guest.n; ++p) remaining_edges += back_edges[p].size();
        if (!budget.enough_room(remaining_edges)) return false;
        for (int v = 0; v < g.n(); ++v) {
            if (used & (std::uint64_t{1} << v)) continue;
            int added = 0;
            bool ok = true;
            for (int p : back_edges[pos]) {
                Color c = g.color(map_by_pos[p], v);
                if (!budget.can_add(c)) {
                    ok = false;
                    break;
                }
                budget.add(c);
                ++added;
            }
            if (ok) {
                map_by_pos.push_back(v);
                if (dfs(pos + 1, used | (std::uint64_t{1} << v))) return true;
                map_by_pos.pop_back();
            }
            for (int i = 0; i < added; ++i)
                budget.remove(g.color(map_by_pos[back_edges[pos][i]], v));
        }
        return false;
    }
};

}  // namespace

std::optional<Embedding> find_balanced_copy(const ColoredCompleteGraph& host,
                                            const Guest& guest, int r) {
    if (r != host.r()) throw validation_error("find_balanced_copy: r mismatch");
    if (guest.n < 1 || guest.edges.empty())
        throw validation_error("find_balanced_copy: guest needs at least one edge");
    for (auto [a, b] : guest.edges)
        if (a < 0 || b < 0 || a >= guest.n || b >= guest.n || a == b)
            throw validation_error("find_balanced_copy: malformed guest edge");
    if (guest.n > host.n()) return std::nullopt;
    if (host.n() > 64) throw validation_error("find_balanced_copy: host too large");

    CopySearcher cs(host, guest, r);
    if (!cs.dfs(0, 0)) return std::nullopt;
    std::vector<int> map(guest.n);
    for (int p = 0; p < guest.n; ++p) map[cs.order[p]] = cs.map_by_pos[p];
    return make_embedding(host, guest, std::move(map));
}

namespace {

// Part-level copy search in a blow-up: colors depend only on parts, so guest
// vertices are assigned to parts with capacity bounds instead of to vertices.
struct BlowupCopySearcher {
    const PatternTemplate& T;
    const Guest& guest;
    std::span<const int> sizes;
    ColorBudget budget;
    std::vector<int> order;
    std::vector<std::vector<int>> back_edges;
    std::vector<int> part_by_pos;
    std::vector<int> load;

    BlowupCopySearcher(const PatternTemplate& t, const Guest& gu, std::span<const int> sz)
        : T(t), guest(gu), sizes(sz), budget(gu.m(), t.r), order(guest_order(gu)) {
        std::vector<int> pos_of(guest.n);
        for (int p = 0; p < guest.n; ++p) pos_of[order[p]] = p;
        back_edges.resize(guest.n);
        for (auto [a, b] : guest.edges) {
            int pa = pos_of[a], pb = pos_of[b];
            back_edges[std::max(pa, pb)].push_back(std::min(pa, pb));
        }
        load.assign(T.k, 0);
    }

    bool dfs(int pos) {
        if (pos == guest.n) return true;
        for (int part = 0; part < T.k; ++part) {
            if (load[part] == sizes[part]) continue;
            int added = 0;
            bool ok = true;
            for (int p : back_edges[pos]) {
                Color c = T.at(part_by_pos[p], part);
                if (!budget.can_add(c)) {
                    ok = false;
                    break;
                }
                budget.add(c);
                ++added;
            }
            if (ok) {
                ++load[part];
                part_by_pos.push_back(part);
                if (dfs(pos + 1)) return true;
                part_by_pos.pop_back();
                --load[part];
            }
            for (int i = 0; i < added; ++i)
                budget.remove(T.at(part_by_pos[back_edges[pos][i]], part));
        }
        return false;
    }
};

}  // namespace

std::optional<Embedding> find_balanced_copy_in_blowup(const PatternTemplate& T,
                                                      std::span<const int> sizes,
                                                      const Guest& guest) {
    if (static_cast<int>(sizes.size()) != T.k)
        throw validation_error("find_balanced_copy_in_blowup: one size per part");
    BlowupCopySearcher bs(T, guest, sizes);
    if (!bs.dfs(0)) return std::nullopt;
    // materialize vertex map: part p occupies a consecutive block
    std::vector<int> base(T.k, 0);
    for (int p = 1; p < T.k; ++p) base[p] = base[p - 1] + sizes[p - 1];
    std::vector<int> next = base;
    std::vector<int> map(guest.n);
    for (int pos = 0; pos < guest.n; ++pos) map[bs.order[pos]] = next[bs.part_by_pos[pos]]++;
    return make_embedding(blow_up_sizes(T, sizes), guest, std::move(map));
}

BalanceabilityReport balanceable_check(const Guest& guest, int r,
                                       const PatternCatalogue& catalogue) {
    if (catalogue.r != r) throw validation_error("balanceable_check: catalogue r mismatch");
    BalanceabilityReport rep;
    rep.r = r;
    rep.guest = guest;
    const int t = std::max(1, guest.n);
    for (std::size_t i = 0; i < catalogue.templates.size(); ++i) {
        const auto& T = catalogue.templates[i];
        std::vector<int> sizes(T.k, t);
        auto emb = find_balanced_copy_in_blowup(T, sizes, guest);
        if (!emb) rep.failing_patterns.push_back(static_cast<int>(i));
        rep.embeddings.push_back(std::move(emb));
    }
    rep.balanceable = rep.failing_patterns.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// balancing_number_exact

namespace {

// Prefix canonicity: the first C(j,2) edge ranks in colex order are exactly
// the edges inside the first j vertices, so permutations of those vertices
// (and of the colors) act on that prefix.  A prefix that is not lex-minimal
// in its orbit is skipped; each isomorphism class keeps its minimal member.
struct CanonicityChecker {
    struct Level {
        int prefix_len;
        std::vector<std::vector<int>> edge_perms;  // each maps position -> position
    };
    std::vector<Level> levels;
    std::vector<std::vector<int>> color_perms;

    CanonicityChecker(int n, int r, int jmax) {
        for (int j = 3; j <= std::min(n, jmax); ++j) {
            Level lv;
            lv.prefix_len = j * (j - 1) / 2;
            std::vector<int> p(j);
            std::iota(p.begin(), p.end(), 0);
            do {
                std::vector<int> ep(lv.prefix_len);
                for (int v = 1; v < j; ++v)
                    for (int u = 0; u < v; ++u) ep[pair_rank(u, v)] = pair_rank(p[u], p[v]);
                lv.edge_perms.push_back(std::move(ep));
            } while (std::next_permutation(p.begin(), p.end()));
            levels.push_back(std::move(lv));
        }
        if (r <= 5) {
            std::vector<int> sigma(r);
            std::iota(sigma.begin(), sigma.end(), 0);
            do {
                color_perms.push_back(sigma);
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        } else {
            std::vector<int> identity(r);
            std::iota(identity.begin(), identity.end(), 0);
            color_perms.push_back(identity);
        }
    }

    bool prefix_is_canonical(const std::vector<int>& x, const Level& lv) const {
        for (const auto& ep : lv.edge_perms)
            for (const auto& sigma : color_perms) {
                for (int pos = 0; pos < lv.prefix_len; ++pos) {
                    int a = sigma[x[ep[pos]]];
                    int b = x[pos];
                    if (a < b) return false;
                    if (a > b) break;
                }
            }
        return true;
    }
};

struct ShardResult {
    long best = -1;
    std::optional<std::vector<int>> witness;  // edge colors
    bool any_avoiding = false;
    std::uint64_t nodes = 0;
    bool complete = true;
};

struct ColoringEnumerator {
    int n, r, m;
    const Guest& guest;
    const CanonicityChecker& checker;
    std::atomic<long>& global_best;
    std::uint64_t node_budget;

    std::vector<int> x;
    ShardResult res;

    ColoringEnumerator(int n_, int r_, const Guest& g, const CanonicityChecker& ch,
                       std::atomic<long>& gb, std::uint64_t budget)
        : n(n_), r(r_), m(n_ * (n_ - 1) / 2), guest(g), checker(ch), global_best(gb),
          node_budget(budget) {
        x.assign(m, 0);
    }

    void evaluate_leaf() {
        std::vector<EdgeColor> edges;
        edges.reserve(m);
        for (int v = 1; v < n; ++v)
            for (int u = 0; u < v; ++u) edges.push_back({u, v, x[pair_rank(u, v)]});
        auto g = ColoredCompleteGraph::build(n, r, edges);
        auto h = g.histogram();
        long hmin = h.min();
        long gb = global_best.load(std::memory_order_relaxed);
        if (hmin < gb) return;  // cannot improve, and ties are still evaluated
        if (find_balanced_copy(g, guest, r)) return;
        res.any_avoiding = true;
        if (hmin > res.best) {
            res.best = hmin;
            res.witness = x;
        } else if (hmin == res.best && res.witness) {
            // deterministic tie-break: smallest canonical key
            std::vector<EdgeColor> we;
            for (int v = 1; v < n; ++v)
                for (int u = 0; u < v; ++u)
                    we.push_back({u, v, (*res.witness)[pair_rank(u, v)]});
            auto wg = ColoredCompleteGraph::build(n, r, we);
            if (canonical_key(g, true) < canonical_key(wg, true)) res.witness = x;
        }
        long cur = global_best.load(std::memory_order_relaxed);
        while (res.best > cur &&
               !global_best.compare_exchange_weak(cur, res.best, std::memory_order_relaxed)) {
        }
    }

    void dfs(int pos) {
        if (++res.nodes > node_budget) {
            res.complete = false;
            return;
        }
        if (pos == m) {
            evaluate_leaf();
            return;
        }
        for (Color c = 0; c < r; ++c) {
            x[pos] = c;
            bool ok = true;
            for (const auto& lv : checker.levels)
                if (pos + 1 == lv.prefix_len && !checker.prefix_is_canonical(x, lv)) {
                    ok = false;
                    break;
                }
            if (ok) dfs(pos + 1);
            if (!res.complete) return;
        }
        x[pos] = 0;
    }
};

}  // namespace

BalancingCertificate balancing_number_exact(int n, const Guest& guest, int r,
                                            const BalancingOptions& opts) {
    if (n < 2 || n > 10) throw validation_error("balancing_number_exact: n out of range [2,10]");
    if (r < 1) throw validation_error("balancing_number_exact: bad r");
    const int m = n * (n - 1) / 2;
    CanonicityChecker checker(n, r, opts.canonicity_depth);

    // shard on the colors of the first few edge ranks
    int shard_depth = std::min(3, m);
    long shard_count = 1;
    for (int i = 0; i < shard_depth; ++i) shard_count *= r;

    std::atomic<long> global_best{-1};
    std::uint64_t per_shard_budget = opts.node_budget / std::max<long>(1, shard_count);

    unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    std::vector<ShardResult> results(shard_count);
    std::atomic<long> next_shard{0};
    auto worker = [&]() {
        for (;;) {
            long s = next_shard.fetch_add(1);
            if (s >= shard_count) break;
            ColoringEnumerator en(n, r, guest, checker, global_best, per_shard_budget);
            long code = s;
            bool viable = true;
            for (int i = 0; i < shard_depth; ++i) {
                en.x[i] = static_cast<int>(code % r);
                code /= r;
            }
            for (const auto& lv : checker.levels)
                if (lv.prefix_len <= shard_depth && !checker.prefix_is_canonical(en.x, lv))
                    viable = false;
            if (viable) en.dfs(shard_depth);
            results[s] = std::move(en.res);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    BalancingCertificate cert;
    cert.n = n;
    cert.r = r;
    cert.guest = guest;
    std::optional<std::vector<int>> witness;
    for (auto& sr : results) {
        cert.nodes += sr.nodes;
        cert.complete = cert.complete && sr.complete;
        if (sr.any_avoiding) {
            if (sr.best > cert.value) {
                cert.value = sr.best;
                witness = sr.witness;
            } else if (sr.best == cert.value && sr.witness && witness) {
                // tie-break across shards, again by canonical key
                auto build_from = [&](const std::vector<int>& cols) {
                    std::vector<EdgeColor> we;
                    for (int v = 1; v < n; ++v)
                        for (int u = 0; u < v; ++u) we.push_back({u, v, cols[pair_rank(u, v)]});
                    return ColoredCompleteGraph::build(n, r, we);
                };
                if (canonical_key(build_from(*sr.witness), true) <
                    canonical_key(build_from(*witness), true))
                    witness = sr.witness;
            }
        }
    }
    if (witness) {
        std::vector<EdgeColor> we;
        for (int v = 1; v < n; ++v)
            for (int u = 0; u < v; ++u) we.push_back({u, v, (*witness)[pair_rank(u, v)]});
        cert.witness = ColoredCompleteGraph::build(n, r, we);
    } else if (cert.complete) {
        cert.all_colorings_contain = true;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Lemma-based constructive extension

Embedding constructive_lemma_extend(const ColoredCompleteGraph& host,
                                    const Embedding& path,
                                    const std::array<int, 3>& triangle) {
    if (host.r() != 3) throw validation_error("constructive_lemma_extend: host must be 3-colored");
    const long edges = path.guest.m();
    if (edges % 3 != 0 || edges < 3)
        throw validation_error("constructive_lemma_extend: path must have 3k-3 edges, k >= 2");
    if (!is_balanced(path))
        throw validation_error("constructive_lemma_extend: path is not balanced");
    // path must really be a path guest 0-1-2-...-L
    for (std::size_t i = 0; i < path.guest.edges.size(); ++i)
        if (path.guest.edges[i] != std::make_pair(static_cast<int>(i), static_cast<int>(i) + 1))
            throw validation_error("constructive_lemma_extend: guest is not a path");

    std::vector<char> on_path(host.n(), 0);
    for (int v : path.map) on_path[v] = 1;
    for (int v : triangle) {
        if (v < 0 || v >= host.n())
            throw validation_error("constructive_lemma_extend: triangle vertex out of range");
        if (on_path[v])
            throw validation_error("constructive_lemma_extend: triangle not disjoint from path");
    }
    Color ab = host.color(triangle[0], triangle[1]);
    Color ac = host.color(triangle[0], triangle[2]);
    Color bc = host.color(triangle[1], triangle[2]);
    if (ab == ac || ab == bc || ac == bc)
        throw validation_error("constructive_lemma_extend: triangle is not rainbow");

    const int L = static_cast<int>(edges);
    std::vector<int> verts = path.map;  // host vertices along the path

    auto finish = [&](std::vector<int> seq) {
        auto e = make_embedding(host, path_guest(L + 3), std::move(seq));
        if (!is_balanced(e))
            throw validation_error("constructive_lemma_extend: internal: result unbalanced");
        return e;
    };

    // Easy case: from either end e, attach a triangle vertex v whose edge
    // color(e,v) matches a triangle edge at v; traversing the other triangle
    // edge first makes the three appended edges rainbow.
    for (int side = 0; side < 2; ++side) {
        std::vector<int> seq = verts;
        if (side == 1) std::reverse(seq.begin(), seq.end());
        int end = seq.back();
        for (int vi = 0; vi < 3; ++vi) {
            int v = triangle[vi];
            int w = triangle[(vi + 1) % 3];
            int u = triangle[(vi + 2) % 3];
            Color cv = host.color(end, v);
            if (cv == host.color(v, u)) {
                // use edge (v,w) then (w,u): colors are the other two
                std::vector<int> out = seq;
                out.push_back(v);
                out.push_back(w);
                out.push_back(u);
                return finish(std::move(out));
            }
            if (cv == host.color(v, w)) {
                std::vector<int> out = seq;
                out.push_back(v);
                out.push_back(u);
                out.push_back(w);
                return finish(std::move(out));
            }
        }
    }

    // Forced case: every end-to-triangle edge carries the color of the
    // opposite triangle edge.  Drop the first path vertex and append
    // t_a t_b x_0 t_c, where (t_a,t_b) is the triangle edge matching the
    // dropped first edge's color and t_c is the vertex opposite it.
    Color first = host.color(verts[0], verts[1]);
    int tc = -1, ta = -1, tb = -1;
    for (int vi = 0; vi < 3; ++vi) {
        int v = triangle[vi], w = triangle[(vi + 1) % 3], u = triangle[(vi + 2) % 3];
        if (host.color(w, u) == first) {
            tc = v;
            ta = w;
            tb = u;
        }
    }
    std::vector<int> out(verts.begin() + 1, verts.end());
    out.push_back(ta);
    out.push_back(tb);
    out.push_back(verts[0]);
    out.push_back(tc);
    return finish(std::move(out));
}

}  // namespace cbal
