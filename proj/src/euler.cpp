#include "cbal/euler.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cbal {

long ColorMultigraph::degree(int i) const {
    long d = 0;
    for (int j = 0; j < parts; ++j) d += at(i, j);
    return d;
}

long ColorMultigraph::total_edges() const {
    long e = 0;
    for (int i = 0; i < parts; ++i)
        for (int j = i + 1; j < parts; ++j) e += at(i, j);
    return e;
}

std::vector<Color> crossing_colors(const PatternTemplate& T) {
    std::vector<Color> out;
    for (int i = 0; i < T.k; ++i)
        for (int j = i + 1; j < T.k; ++j) out.push_back(T.at(i, j));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int pair_count(const PatternTemplate& T, Color c) {
    int n = 0;
    for (int i = 0; i < T.k; ++i)
        for (int j = i + 1; j < T.k; ++j)
            if (T.at(i, j) == c) ++n;
    return n;
}

long lcm_k0(const PatternTemplate& T) {
    auto cs = crossing_colors(T);
    if (cs.empty()) throw validation_error("lcm_k0: template has no crossing colors");
    long l = 1;
    for (Color c : cs) l = std::lcm(l, static_cast<long>(pair_count(T, c)));
    return l;
}

int embed_feasibility_threshold(const PatternTemplate& T) {
    auto cs = crossing_colors(T);
    if (cs.empty()) throw validation_error("feasibility: template has no crossing colors");
    int thr = 1;
    for (Color c : cs) thr = std::max(thr, pair_count(T, c));
    return thr;
}

ColorMultigraph build_multigraph(const PatternTemplate& T, int k, bool uniform) {
    auto cs = crossing_colors(T);
    if (cs.empty()) throw validation_error("build_multigraph: template has no crossing colors");
    ColorMultigraph mg;
    mg.parts = T.k;
    mg.mult.assign(static_cast<std::size_t>(T.k) * T.k, 0);
    mg.pair_color = T.M;
    for (Color c : cs) {
        int nc = pair_count(T, c);
        if (uniform) {
            if (k % nc != 0)
                throw validation_error("build_multigraph: uniform mode needs #c | k, color " +
                                       std::to_string(c));
        } else if (k < nc) {
            throw validation_error("build_multigraph: k below feasibility threshold " +
                                   std::to_string(nc) + " for color " + std::to_string(c));
        }
        // even multiplicities >= 2 summing to 2k: 2*(k/nc) each, the first
        // k%nc pairs get one extra doubled edge
        int base = k / nc, extra = k % nc, idx = 0;
        for (int i = 0; i < T.k; ++i)
            for (int j = i + 1; j < T.k; ++j)
                if (T.at(i, j) == c) {
                    int m = 2 * (base + (idx < extra ? 1 : 0));
                    mg.at(i, j) = mg.at(j, i) = m;
                    ++idx;
                }
    }
    return mg;
}

PartWalk eulerian_circuit(const ColorMultigraph& mg) {
    const int l = mg.parts;
    std::vector<long> deg(l);
    long edges = 0;
    for (int i = 0; i < l; ++i) {
        deg[i] = mg.degree(i);
        if (deg[i] % 2 != 0) throw validation_error("eulerian_circuit: odd degree part");
        edges += deg[i];
    }
    edges /= 2;
    if (edges == 0) throw validation_error("eulerian_circuit: empty multigraph");
    // connectivity over positive-degree parts
    int start = -1;
    for (int i = 0; i < l; ++i)
        if (deg[i] > 0) {
            start = i;
            break;
        }
    std::vector<char> seen(l, 0);
    std::vector<int> stack = {start};
    seen[start] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < l; ++u)
            if (mg.at(v, u) > 0 && !seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    for (int i = 0; i < l; ++i)
        if (deg[i] > 0 && !seen[i])
            throw validation_error("eulerian_circuit: multigraph not connected");

    // Hierholzer with an explicit stack
    auto rem = mg.mult;
    auto rat = [&](int i, int j) -> int& { return rem[static_cast<std::size_t>(i) * l + j]; };
    std::vector<int> path, circuit;
    path.push_back(start);
    while (!path.empty()) {
        int v = path.back();
        int next = -1;
        for (int u = 0; u < l; ++u)
            if (rat(v, u) > 0) {
                next = u;
                break;
            }
        if (next >= 0) {
            --rat(v, next);
            --rat(next, v);
            path.push_back(next);
        } else {
            circuit.push_back(v);
            path.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    if (static_cast<long>(circuit.size()) != edges + 1)
        throw validation_error("eulerian_circuit: internal: edges left over");
    PartWalk w;
    w.seq = std::move(circuit);
    return w;
}

namespace {

// colors that never appear off-diagonal, with their (first) carrying part
std::vector<std::pair<Color, int>> insertion_colors(const PatternTemplate& T) {
    auto cs = crossing_colors(T);
    std::vector<std::pair<Color, int>> out;
    for (Color c = 0; c < T.r; ++c) {
        if (std::binary_search(cs.begin(), cs.end(), c)) continue;
        int part = -1;
        for (int i = 0; i < T.k && part < 0; ++i)
            if (T.at(i, i) == c) part = i;
        if (part < 0)
            throw validation_error("embed: color " + std::to_string(c) +
                                   " appears nowhere in the template");
        out.push_back({c, part});
    }
    return out;
}

}  // namespace

std::vector<int> embed_vertex_budget(const PatternTemplate& T, int k, bool uniform) {
    auto walk = eulerian_circuit(build_multigraph(T, k, uniform));
    std::vector<int> budget(T.k, 0);
    for (int p : walk.seq) ++budget[p];
    for (auto [c, part] : insertion_colors(T)) budget[part] += 2 * k;
    return budget;
}

Embedding embed_balanced_long_path(const PatternTemplate& T, int t, int k, bool uniform) {
    auto chk = is_valid_template(T);
    if (!chk.ok) throw validation_error("embed: invalid template");
    auto mg = build_multigraph(T, k, uniform);
    auto walk = eulerian_circuit(mg);

    auto budget = embed_vertex_budget(T, k, uniform);
    for (int i = 0; i < T.k; ++i)
        if (budget[i] > t)
            throw validation_error("embed: part " + std::to_string(i) + " needs " +
                                   std::to_string(budget[i]) + " vertices, t=" +
                                   std::to_string(t));

    auto ins = insertion_colors(T);
    std::vector<char> pending(T.k, 0);
    for (auto [c, part] : ins) pending[part] = 1;

    std::vector<int> next(T.k, 0);  // next fresh vertex offset within each part
    auto fresh = [&](int part) { return part * t + next[part]++; };

    std::vector<int> map;
    for (std::size_t step = 0; step < walk.seq.size(); ++step) {
        int part = walk.seq[step];
        map.push_back(fresh(part));
        if (pending[part]) {
            pending[part] = 0;
            for (int e = 0; e < 2 * k; ++e) map.push_back(fresh(part));
        }
    }
    auto host = blow_up(T, t);
    const int L = static_cast<int>(map.size()) - 1;
    auto emb = make_embedding(host, path_guest(L), std::move(map));
    if (!is_balanced(emb))
        throw validation_error("embed: internal: expansion not balanced");
    return emb;
}

ParityReport walk_parity_report(const PatternTemplate& T, int k) {
    ParityReport rep;
    rep.determined = true;
    for (Color c : crossing_colors(T))
        if (pair_count(T, c) > 1) rep.determined = false;
    rep.degree.assign(T.k, 0);
    if (rep.determined) {
        for (int i = 0; i < T.k; ++i)
            for (int j = 0; j < T.k; ++j)
                if (j != i) rep.degree[i] += k;
        for (long d : rep.degree)
            if (d % 2 != 0) ++rep.odd_parts;
        rep.trail_feasible = rep.odd_parts <= 2;
    }
    return rep;
}

}  // namespace cbal
