// End-to-end acceptance checks.  One line per criterion: PASS or FAIL plus a
// short detail string; process exit status is nonzero when anything fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cbal/balance.hpp"
#include "cbal/construct.hpp"
#include "cbal/euler.hpp"
#include "cbal/graph.hpp"
#include "cbal/pattern.hpp"
#include "cbal/search.hpp"
#include "oracle.hpp"

using namespace cbal;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("criterion %2d %-24s %s  (%s)\n", idx, name, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ColoredCompleteGraph random_graph(int n, int r, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, r - 1);
    std::vector<EdgeColor> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, d(rng)});
    return ColoredCompleteGraph::build(n, r, edges);
}

bool naive_member_rec(const ColoredCompleteGraph& g, const PatternTemplate& T, int t,
                      std::vector<int>& slot, std::vector<char>& used) {
    int pos = static_cast<int>(slot.size());
    if (pos == T.k * t) return true;
    int part = pos / t;
    for (int v = 0; v < g.n(); ++v) {
        if (used[v]) continue;
        bool ok = true;
        for (int p = 0; p < pos && ok; ++p)
            if (g.color(slot[p], v) != T.at(p / t, part)) ok = false;
        if (!ok) continue;
        used[v] = 1;
        slot.push_back(v);
        if (naive_member_rec(g, T, t, slot, used)) return true;
        slot.pop_back();
        used[v] = 0;
    }
    return false;
}

bool naive_has_member(const ColoredCompleteGraph& g, int t, const PatternCatalogue& cat) {
    for (const auto& T : cat.templates) {
        if (T.k * t > g.n()) continue;
        std::vector<int> slot;
        std::vector<char> used(g.n(), 0);
        if (naive_member_rec(g, T, t, slot, used)) return true;
    }
    return false;
}

struct RainbowP3 {
    std::array<int, 4> v;
    Color middle;
};

std::vector<RainbowP3> all_rainbow_p3(const ColoredCompleteGraph& g) {
    std::vector<RainbowP3> out;
    std::vector<int> p = {0, 1, 2, 3};
    std::vector<int> idx(g.n());
    for (int a = 0; a < g.n(); ++a)
        for (int b = 0; b < g.n(); ++b)
            for (int c = 0; c < g.n(); ++c)
                for (int d = 0; d < g.n(); ++d) {
                    if (a >= d) continue;  // path reversal symmetry
                    std::set<int> s = {a, b, c, d};
                    if (s.size() != 4) continue;
                    Color x = g.color(a, b), y = g.color(b, c), z = g.color(c, d);
                    if (x != y && x != z && y != z) out.push_back({{a, b, c, d}, y});
                }
    return out;
}

bool embedding_injective(const Embedding& e) {
    std::set<int> s(e.map.begin(), e.map.end());
    return s.size() == e.map.size();
}

// ---- criteria ----

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto c2 = enumerate_patterns(2);
    double s2 = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto c3 = enumerate_patterns(3);
    double s3 = seconds_since(t0);
    bool ok = c2.complete && c3.complete && c2.templates.size() == 2 &&
              c3.templates.size() == 9 && s2 < 60 && s3 < 60;
    std::ostringstream d;
    d << "r=2: " << c2.templates.size() << " classes, r=3: " << c3.templates.size()
      << " classes, " << s2 + s3 << "s";
    if (!ok)
        for (std::size_t i = 0; i < c3.templates.size(); ++i)
            d << " [k=" << c3.templates[i].k << "]";
    report(1, "pattern-counts", ok, d.str());
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    // smallest n at which every 3-coloring of K_n using all colors has a
    // rainbow P_3: balancing value drops to 0
    int smallest = -1;
    bool ok = true;
    for (int n = 3; n <= 6; ++n) {
        auto cert = balancing_number_exact(n, path_guest(3), 3);
        ok = ok && cert.complete && !cert.all_colorings_contain;
        if (smallest < 0 && cert.value == 0) smallest = n;
    }
    ok = ok && smallest == 5 && seconds_since(t0) < 600;
    std::ostringstream d;
    d << "value 0 from n=" << smallest << " on (checked through n=6), "
      << seconds_since(t0) << "s";
    report(2, "rainbow-P3", ok, d.str());
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    auto b2 = construct_path_blocker(11, 2);
    bool ok = !find_balanced_path(b2, 6, 3).has_value();
    double s1 = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto b3 = construct_path_blocker(14, 3);
    ok = ok && !find_balanced_path(b3, 9, 3).has_value();
    double s2 = seconds_since(t0);
    ok = ok && s1 < 300 && s2 < 300;
    std::ostringstream d;
    d << "no balanced P_6 in (11,2), no P_9 in (14,3), " << s1 + s2 << "s";
    report(3, "path-blockers", ok, d.str());
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    auto g = construct_clique_partition(12, 4);  // r = 7
    bool parity = parity_obstruction_check(g, 4, 1);
    bool search = !find_balanced_path(g, 7, 7).has_value();
    bool walks = true;
    for (auto [l, k] : std::vector<std::pair<int, int>>{{4, 1}, {4, 3}, {6, 1}}) {
        auto rep = walk_parity_report(clique_partition_template(l), k);
        walks = walks && rep.determined && !rep.trail_feasible;
        for (long deg : rep.degree) walks = walks && deg == static_cast<long>(k) * (l - 1);
        walks = walks && rep.odd_parts == l;
    }
    bool ok = parity && search && walks && seconds_since(t0) < 1800;
    std::ostringstream d;
    d << "parity=" << parity << " search-absent=" << search << " walk-degrees=" << walks
      << ", " << seconds_since(t0) << "s";
    report(4, "clique-partition", ok, d.str());
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    auto cat = enumerate_patterns(3);
    bool ok = cat.templates.size() == 9;
    for (const auto& T : cat.templates)
        for (int dk = 0; dk < 2; ++dk) {
            int k = embed_feasibility_threshold(T) + dk;
            auto budget = embed_vertex_budget(T, k);
            int t = *std::max_element(budget.begin(), budget.end());
            auto emb = embed_balanced_long_path(T, t, k);
            long want = 2L * k;
            ok = ok && is_balanced(emb) && embedding_injective(emb) &&
                 emb.profile == std::vector<long>{want, want, want};
        }
    ok = ok && seconds_since(t0) < 60;
    std::ostringstream d;
    d << "9 templates at threshold and threshold+1, " << seconds_since(t0) << "s";
    report(5, "euler-embedding", ok, d.str());
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    auto cat = enumerate_patterns(3);
    auto c6 = balanceable_check(cycle_guest(6), 3, cat);
    auto c9 = balanceable_check(cycle_guest(9), 3, cat);
    bool ok = c6.balanceable && !c9.balanceable && !c9.failing_patterns.empty();
    std::string cert = "skipped";
    if (ok) {
        const auto& T = cat.templates[c9.failing_patterns.front()];
        auto blocker = construct_pattern_blowup_blocker(T, cycle_guest(9), 12);
        auto res = certify_avoidance(blocker, cycle_guest(9));
        ok = res.status == CertifyStatus::CONFIRMED_ABSENT;
        cert = ok ? "CONFIRMED_ABSENT" : "unexpected";
    }
    std::ostringstream d;
    d << "C_6 passes all 9, C_9 fails " << c9.failing_patterns.size()
      << " pattern(s), blocker at n=12 " << cert << ", " << seconds_since(t0) << "s";
    report(6, "balanceability", ok, d.str());
}

void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    auto cat2 = enumerate_patterns(2);
    auto cat3 = enumerate_patterns(3);
    std::mt19937 rng(271828);
    int mismatches = 0, hosts = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 5 + static_cast<int>(rng() % 4);
        int r = 2 + static_cast<int>(rng() % 2);
        auto g = random_graph(n, r, rng);
        ++hosts;
        bool p = find_balanced_path(g, 3, r).has_value();
        if (p != oracle::naive_has_balanced_copy(g, path_guest(3))) ++mismatches;
        bool c = find_balanced_cycle(g, 4, r).has_value();
        if (c != oracle::naive_has_balanced_copy(g, cycle_guest(4))) ++mismatches;
        bool k = find_balanced_copy(g, cycle_guest(3), r).has_value();
        if (k != oracle::naive_has_balanced_copy(g, cycle_guest(3))) ++mismatches;
        const auto& cat = r == 2 ? cat2 : cat3;
        bool m = find_pattern_member_exact(g, 2, cat).has_value();
        if (m != naive_has_member(g, 2, cat)) ++mismatches;
    }
    bool ok = mismatches == 0 && hosts == 200;
    std::ostringstream d;
    d << hosts << " hosts, " << mismatches << " mismatches, " << seconds_since(t0) << "s";
    report(7, "oracle-equivalence", ok, d.str());
}

void criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(161803);
    long instances = 0, counterexamples = 0;

    // extension of a balanced P_3 by a disjoint rainbow triangle
    while (instances < 6500) {
        auto g = random_graph(9, 3, rng);
        auto p = find_balanced_path(g, 3, 3);
        if (!p) continue;
        std::vector<int> rest;
        for (int v = 0; v < g.n(); ++v)
            if (std::find(p->map.begin(), p->map.end(), v) == p->map.end()) rest.push_back(v);
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = i + 1; j < rest.size(); ++j)
                for (std::size_t l = j + 1; l < rest.size(); ++l) {
                    int a = rest[i], b = rest[j], c = rest[l];
                    Color ab = g.color(a, b), ac = g.color(a, c), bc = g.color(b, c);
                    if (ab == ac || ab == bc || ac == bc) continue;
                    ++instances;
                    auto out = constructive_lemma_extend(g, *p, {a, b, c});
                    if (out.guest.m() != 6 || !is_balanced(out) || !embedding_injective(out))
                        ++counterexamples;
                }
    }
    long ext_instances = instances;

    // two disjoint rainbow P_3s with different middle colors force a balanced P_6
    while (instances - ext_instances < 3500) {
        auto g = random_graph(9, 3, rng);
        auto p3s = all_rainbow_p3(g);
        long pairs = 0;
        for (std::size_t i = 0; i < p3s.size() && pairs < 200; ++i)
            for (std::size_t j = i + 1; j < p3s.size() && pairs < 200; ++j) {
                if (p3s[i].middle == p3s[j].middle) continue;
                bool disjoint = true;
                for (int a : p3s[i].v)
                    for (int b : p3s[j].v)
                        if (a == b) disjoint = false;
                if (disjoint) ++pairs;
            }
        if (pairs == 0) continue;
        instances += pairs;
        if (!find_balanced_path(g, 6, 3).has_value()) counterexamples += pairs;
    }

    // the forced coloring: same middle colors, every off-path edge the middle
    // color, no balanced P_6; any single recolor reintroduces one
    std::vector<EdgeColor> edges = {{0, 1, 0}, {1, 2, 2}, {2, 3, 1},
                                    {4, 5, 1}, {5, 6, 2}, {6, 7, 0}};
    std::set<std::pair<int, int>> have;
    for (auto& e : edges) have.insert({e.u, e.v});
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v)
            if (!have.count({u, v})) edges.push_back({u, v, 2});
    auto base = ColoredCompleteGraph::build(8, 3, edges);
    ++instances;
    if (find_balanced_path(base, 6, 3).has_value()) ++counterexamples;
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) {
            if (have.count({u, v})) continue;
            for (Color c : {0, 1}) {
                auto mod = edges;
                for (auto& e : mod)
                    if (e.u == u && e.v == v) e.c = c;
                ++instances;
                if (!find_balanced_path(ColoredCompleteGraph::build(8, 3, mod), 6, 3)
                         .has_value())
                    ++counterexamples;
            }
        }

    bool ok = instances >= 10000 && counterexamples == 0;
    std::ostringstream d;
    d << instances << " instances, " << counterexamples << " counterexamples, "
      << seconds_since(t0) << "s";
    report(8, "lemma-suite", ok, d.str());
}

void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;

    auto check = [&](int n, const Guest& guest, int r, long expected, bool cross_check) {
        auto cert = balancing_number_exact(n, guest, r);
        bool good = cert.complete && !cert.all_colorings_contain && cert.value == expected &&
                    cert.witness.has_value();
        if (good) {
            // witness re-verification: avoids the guest and attains the value
            good = !oracle::naive_has_balanced_copy(*cert.witness, guest) &&
                   cert.witness->histogram().min() == cert.value;
        }
        if (good && cross_check) {
            auto naive = oracle::naive_balancing_number(n, guest, r);
            good = naive.any_avoiding && naive.value == cert.value;
        }
        ok = ok && good;
        d << "n=" << n << ":" << cert.value << (good ? "" : "!") << " ";
    };

    d << "P_4,r=2 ";
    check(5, path_guest(4), 2, 1, true);
    check(7, path_guest(4), 2, 1, false);
    d << " K_3,r=3 ";
    check(4, cycle_guest(3), 3, 1, true);
    check(5, cycle_guest(3), 3, 3, true);
    d << ", " << seconds_since(t0) << "s";
    report(9, "balancing-numbers", ok, d.str());
}

void criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    auto cat = enumerate_patterns(3);
    bool ok = cat.templates.size() == 9;
    DrcConfig cfg;
    cfg.seed = 7;
    for (const auto& T : cat.templates) {
        auto host = blow_up(T, 50);
        auto m = find_pattern_member(host, 2, cfg);
        ok = ok && m.has_value() && verify_pattern_match(host, *m);
    }
    // measured success rate on random dense hosts; no threshold asserted
    std::mt19937 rng(424242);
    int hits = 0;
    const int runs = 20;
    for (int s = 0; s < runs; ++s) {
        auto g = random_graph(200, 3, rng);
        DrcConfig rc;
        rc.seed = static_cast<std::uint64_t>(s);
        auto m = find_pattern_member(g, 2, rc);
        if (m) {
            if (!verify_pattern_match(g, *m)) ok = false;  // false positives never allowed
            ++hits;
        }
    }
    std::ostringstream d;
    d << "9/9 blow-ups recovered, K_200 rate " << hits << "/" << runs << ", "
      << seconds_since(t0) << "s";
    report(10, "heuristic-pipeline", ok, d.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
