#include "cbal/construct.hpp"

#include <algorithm>
#include <numeric>

namespace cbal {

std::vector<int> equal_part_sizes(int n, int k) {
    if (k < 1 || n < k) throw validation_error("equal_part_sizes: need n >= k >= 1");
    std::vector<int> sizes(k, n / k);
    for (int i = 0; i < n % k; ++i) ++sizes[i];
    return sizes;
}

ColoredCompleteGraph construct_path_blocker(int n, int k) {
    if (k < 2 || n < k + 1) throw validation_error("construct_path_blocker: need k >= 2, n >= k+1");
    PatternTemplate T;
    T.r = 3;
    T.k = 3;
    // parts A, B, C; A-B color 0, A-C color 1, rest color 2
    T.M = {2, 0, 1, 0, 2, 2, 1, 2, 2};
    int rest = n - (k - 1);
    std::vector<int> sizes = {k - 1, (rest + 1) / 2, rest / 2};
    return blow_up_sizes(T, sizes);
}

PatternTemplate clique_partition_template(int l) {
    if (l < 4 || l % 2 != 0) throw validation_error("clique_partition: l must be even, >= 4");
    PatternTemplate T;
    T.r = l * (l - 1) / 2 + 1;
    T.k = l;
    T.M.assign(static_cast<std::size_t>(l) * l, T.r - 1);
    int c = 0;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            T.at(i, j) = c;
            T.at(j, i) = c;
            ++c;
        }
    return T;
}

ColoredCompleteGraph construct_clique_partition(int n, int l) {
    auto T = clique_partition_template(l);
    if (n < l) throw validation_error("construct_clique_partition: need n >= l");
    auto sizes = equal_part_sizes(n, l);
    return blow_up_sizes(T, sizes);
}

std::vector<std::vector<int>> recover_clique_partition(const ColoredCompleteGraph& g, int l) {
    const int r = l * (l - 1) / 2 + 1;
    if (g.r() != r) throw validation_error("recover_clique_partition: color count mismatch");
    // parts are the components of the intra color: each part is a clique in
    // color r-1 and that color appears nowhere else
    const int n = g.n();
    std::vector<int> part(n, -1);
    int parts = 0;
    for (int v = 0; v < n; ++v) {
        if (part[v] >= 0) continue;
        part[v] = parts;
        for (int u = v + 1; u < n; ++u)
            if (part[u] < 0 && g.color(v, u) == r - 1) part[u] = parts;
        ++parts;
    }
    if (parts != l) throw validation_error("recover_clique_partition: wrong part count");
    std::vector<std::vector<int>> out(l);
    for (int v = 0; v < n; ++v) out[part[v]].push_back(v);
    // structural validation: intra edges carry color r-1, cross pairs carry
    // one distinct color each
    std::vector<char> used(r - 1, 0);
    for (int i = 0; i < l; ++i) {
        for (std::size_t a = 0; a < out[i].size(); ++a)
            for (std::size_t b = a + 1; b < out[i].size(); ++b)
                if (g.color(out[i][a], out[i][b]) != r - 1)
                    throw validation_error("recover_clique_partition: intra-part color wrong");
        for (int j = i + 1; j < l; ++j) {
            int c = g.color(out[i][0], out[j][0]);
            if (c < 0 || c >= r - 1 || used[c])
                throw validation_error("recover_clique_partition: cross colors not distinct");
            used[c] = 1;
            for (int a : out[i])
                for (int b : out[j])
                    if (g.color(a, b) != c)
                        throw validation_error("recover_clique_partition: cross pair not monochromatic");
        }
    }
    return out;
}

bool parity_obstruction_check(const ColoredCompleteGraph& g, int l, int k) {
    recover_clique_partition(g, l);  // throws on wrong construction kind
    if (k < 1) throw validation_error("parity_obstruction_check: k must be >= 1");
    // A balanced P_{rk} uses k edges per color, i.e. k edges across every
    // part pair plus k inside each part.  Contracting parts gives a
    // multigraph where an Eulerian trail must exist, so at most two parts
    // may have odd degree; each part's cross degree is k(l-1).
    if (k % 2 == 0 || l % 2 != 0 || l < 4) return false;
    // k(l-1) odd for every one of the l >= 4 parts: too many odd vertices
    return true;
}

ColoredCompleteGraph construct_pattern_blowup_blocker(const PatternTemplate& T,
                                                      const Guest& guest, int n) {
    auto chk = is_valid_template(T);
    if (!chk.ok) throw validation_error("construct_pattern_blowup_blocker: invalid template");
    if (n < T.k) throw validation_error("construct_pattern_blowup_blocker: need n >= part count");
    std::vector<int> probe(T.k, std::max(1, guest.n));
    if (find_balanced_copy_in_blowup(T, probe, guest))
        throw validation_error(
            "construct_pattern_blowup_blocker: template admits a balanced guest copy");
    return blow_up_sizes(T, equal_part_sizes(n, T.k));
}

CertifyResult certify_avoidance(const ColoredCompleteGraph& host, const Guest& guest,
                                int max_n) {
    if (host.n() > max_n) return {CertifyStatus::SKIPPED_TOO_LARGE, std::nullopt};
    auto e = find_balanced_copy(host, guest, host.r());
    if (e) return {CertifyStatus::REFUTED_PRESENT, std::move(e)};
    return {CertifyStatus::CONFIRMED_ABSENT, std::nullopt};
}

}  // namespace cbal
