#include "cbal/pattern.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

namespace cbal {

TemplateCheck is_valid_template(const PatternTemplate& T) {
    const int r = T.r, k = T.k;
    if (r < 1 || k < 1 || T.M.size() != static_cast<std::size_t>(k) * k)
        return {false, "malformed matrix"};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (T.at(i, j) < 0 || T.at(i, j) >= r) return {false, "color out of range"};
            if (T.at(i, j) != T.at(j, i)) return {false, "matrix not symmetric"};
        }
    if (k > 2 * r) return {false, "more than 2r parts"};

    std::vector<char> present(r, 0);
    for (Color c : T.M) present[c] = 1;
    for (Color c = 0; c < r; ++c)
        if (!present[c]) return {false, "color " + std::to_string(c) + " absent"};

    // every part must be critical: removing it must remove some color
    for (int i = 0; i < k; ++i) {
        std::vector<char> rest(r, 0);
        for (int a = 0; a < k; ++a)
            for (int b = a; b < k; ++b)
                if (a != i && b != i) rest[T.at(a, b)] = 1;
        bool critical = false;
        for (Color c = 0; c < r && !critical; ++c)
            if (present[c] && !rest[c]) critical = true;
        if (!critical)
            return {false, "part " + std::to_string(i) + " removable without losing a color"};
    }
    return {};
}

ColoredCompleteGraph blow_up(const PatternTemplate& T, int t) {
    std::vector<int> sizes(T.k, t);
    return blow_up_sizes(T, sizes);
}

ColoredCompleteGraph blow_up_sizes(const PatternTemplate& T, std::span<const int> sizes) {
    if (static_cast<int>(sizes.size()) != T.k)
        throw validation_error("blow_up: one size per part required");
    std::vector<int> part;
    for (int i = 0; i < T.k; ++i) {
        if (sizes[i] < 1) throw validation_error("blow_up: part size must be >= 1");
        part.insert(part.end(), sizes[i], i);
    }
    const int n = static_cast<int>(part.size());
    std::vector<EdgeColor> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, T.at(part[u], part[v])});
    return ColoredCompleteGraph::build(n, T.r, edges);
}

PatternTemplate tournament_pattern(const Tournament& T) {
    const int r = T.r;
    if (r < 1 || T.arc.size() != static_cast<std::size_t>(r) * r)
        throw validation_error("tournament_pattern: malformed tournament");
    for (int i = 0; i < r; ++i) {
        if (T.points(i, i)) throw validation_error("tournament_pattern: self-loop");
        for (int j = i + 1; j < r; ++j)
            if (T.points(i, j) == T.points(j, i))
                throw validation_error("tournament_pattern: not a tournament");
    }
    PatternTemplate P{r, r, std::vector<Color>(static_cast<std::size_t>(r) * r)};
    for (int i = 0; i < r; ++i) {
        P.at(i, i) = i;
        for (int j = i + 1; j < r; ++j) {
            Color c = T.points(i, j) ? j : i;  // color of the clique pointed to
            P.at(i, j) = c;
            P.at(j, i) = c;
        }
    }
    return P;
}

std::vector<Tournament> enumerate_tournaments(int r) {
    if (r < 1 || r > 5) throw validation_error("enumerate_tournaments: r must be in [1,5]");
    const int m = r * (r - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);

    std::vector<int> perm(r);
    std::vector<Tournament> out;
    std::set<std::vector<char>> seen;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
        Tournament T{r, std::vector<char>(static_cast<std::size_t>(r) * r, 0)};
        for (int e = 0; e < m; ++e) {
            auto [i, j] = pairs[e];
            if ((bits >> e) & 1)
                T.arc[static_cast<std::size_t>(i) * r + j] = 1;
            else
                T.arc[static_cast<std::size_t>(j) * r + i] = 1;
        }
        // canonical form: lex-min arc matrix over all vertex relabelings
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<char> best = T.arc;
        do {
            std::vector<char> img(T.arc.size());
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    img[static_cast<std::size_t>(perm[i]) * r + perm[j]] =
                        T.arc[static_cast<std::size_t>(i) * r + j];
            if (img < best) best = std::move(img);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (seen.insert(best).second) out.push_back(Tournament{r, best});
    }
    return out;
}

PatternTemplate separator_pattern(int r) {
    if (r < 2) throw validation_error("separator_pattern: r must be >= 2");
    const int k = 2 * (r - 1);
    PatternTemplate P{r, k, std::vector<Color>(static_cast<std::size_t>(k) * k, r - 1)};
    for (int i = 0; i < r - 1; ++i) {
        P.at(2 * i, 2 * i + 1) = i;
        P.at(2 * i + 1, 2 * i) = i;
    }
    return P;
}

bool PatternCatalogue::contains(const CanonicalKey& key) const {
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

namespace {

// Backtracking enumerator for one part count.  Entries are assigned in a
// fixed order: the k diagonal entries first (forced non-decreasing), then the
// off-diagonal pairs row-major.  A new color id may only be introduced in
// first-use order.  After each assignment the criticality of every part must
// stay feasible: some color must still be confinable to its row.
struct MatrixEnumerator {
    int r, k, m;                           // m = number of entries
    std::vector<std::pair<int, int>> pos;  // assignment order
    PatternTemplate T;
    std::uint64_t* nodes;
    std::uint64_t budget;
    std::map<CanonicalKey, PatternTemplate>* found;

    // rows_touching[e] for entries still unassigned at step e, per part
    MatrixEnumerator(int r_, int k_, std::uint64_t* nodes_, std::uint64_t budget_,
                     std::map<CanonicalKey, PatternTemplate>* found_)
        : r(r_), k(k_), m(k_ * (k_ + 1) / 2), nodes(nodes_), budget(budget_), found(found_) {
        for (int i = 0; i < k; ++i) pos.emplace_back(i, i);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) pos.emplace_back(i, j);
        T = PatternTemplate{r, k, std::vector<Color>(static_cast<std::size_t>(k) * k, -1)};
        rem.assign(static_cast<std::size_t>(m + 1) * k, 0);
        for (int step = m - 1; step >= 0; --step)
            for (int i = 0; i < k; ++i)
                rem[static_cast<std::size_t>(step) * k + i] =
                    rem[static_cast<std::size_t>(step + 1) * k + i] +
                    (pos[step].first == i || pos[step].second == i ? 1 : 0);
    }

    std::vector<int> rem;  // unassigned entries touching part i from step on

    int remaining_in_row(int step, int i) const {
        return rem[static_cast<std::size_t>(step) * k + i];
    }

    bool feasible(int step, const std::vector<std::uint32_t>& mask,
                  const std::vector<char>& in_row, int used_colors) const {
        // condition 2: unused colors still placeable
        if (r - used_colors > m - step) return false;
        // condition 3 per part
        for (int i = 0; i < k; ++i) {
            bool ok = false;
            for (Color c = 0; c < r && !ok; ++c) {
                if (!(mask[c] & (std::uint32_t{1} << i))) continue;
                if (in_row[static_cast<std::size_t>(c) * k + i])
                    ok = true;  // c already present in row i and confined to it
                else if (remaining_in_row(step, i) > 0)
                    ok = true;  // c could still be placed in row i
            }
            if (!ok) return false;
        }
        return true;
    }

    void run() {
        std::vector<std::uint32_t> mask(r, (std::uint32_t{1} << k) - 1);
        std::vector<char> in_row(static_cast<std::size_t>(r) * k, 0);
        dfs(0, 0, mask, in_row);
    }

    void dfs(int step, int used_colors, std::vector<std::uint32_t>& mask,
             std::vector<char>& in_row) {
        if (++*nodes > budget) throw budget_exceeded("pattern enumeration node budget exceeded");
        if (step == m) {
            if (used_colors != r) return;
            auto chk = is_valid_template(T);
            if (!chk.ok) return;
            auto key = canonical_key(blow_up(T, 2), true);
            if (!found->count(key)) found->emplace(std::move(key), T);
            return;
        }
        auto [i, j] = pos[step];
        int max_color = std::min(r - 1, used_colors);  // first-use order
        for (Color c = 0; c <= max_color; ++c) {
            if (i == j && i > 0 && T.at(i - 1, i - 1) > c) continue;  // sorted diagonal
            T.at(i, j) = c;
            T.at(j, i) = c;
            std::uint32_t touch = (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
            std::uint32_t saved_mask = mask[c];
            mask[c] &= touch;
            char si = in_row[static_cast<std::size_t>(c) * k + i];
            char sj = in_row[static_cast<std::size_t>(c) * k + j];
            in_row[static_cast<std::size_t>(c) * k + i] = 1;
            in_row[static_cast<std::size_t>(c) * k + j] = 1;
            int uc = used_colors + (c == used_colors ? 1 : 0);
            if (feasible(step + 1, mask, in_row, uc)) dfs(step + 1, uc, mask, in_row);
            in_row[static_cast<std::size_t>(c) * k + i] = si;
            in_row[static_cast<std::size_t>(c) * k + j] = sj;
            mask[c] = saved_mask;
            T.at(i, j) = -1;
            T.at(j, i) = -1;
        }
    }
};

}  // namespace

PatternCatalogue enumerate_patterns(int r, std::uint64_t node_budget) {
    if (r < 2) throw validation_error("enumerate_patterns: r must be >= 2");
    PatternCatalogue cat;
    cat.r = r;
    std::uint64_t nodes = 0;
    std::map<CanonicalKey, PatternTemplate> found;
    try {
        for (int k = 1; k <= 2 * r; ++k) {
            MatrixEnumerator en(r, k, &nodes, node_budget, &found);
            en.run();
        }
    } catch (const budget_exceeded&) {
        cat.complete = false;
    }
    cat.nodes = nodes;
    std::vector<std::pair<CanonicalKey, PatternTemplate>> items(found.begin(), found.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second.k != b.second.k) return a.second.k < b.second.k;
        return a.first < b.first;
    });
    for (auto& [key, tpl] : items) {
        cat.keys.push_back(std::move(key));
        cat.templates.push_back(std::move(tpl));
    }
    if (!cat.complete)
        throw enumeration_budget_exceeded("pattern enumeration budget exceeded after " +
                                              std::to_string(cat.templates.size()) +
                                              " classes",
                                          cat);
    return cat;
}

std::string template_to_json(const PatternTemplate& T) {
    nlohmann::json j;
    j["r"] = T.r;
    j["k"] = T.k;
    std::vector<std::vector<int>> rows(T.k, std::vector<int>(T.k));
    for (int i = 0; i < T.k; ++i)
        for (int jj = 0; jj < T.k; ++jj) rows[i][jj] = T.at(i, jj);
    j["M"] = rows;
    return j.dump();
}

PatternTemplate template_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PatternTemplate T;
    T.r = j.at("r").get<int>();
    T.k = j.at("k").get<int>();
    auto rows = j.at("M").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(rows.size()) != T.k) throw validation_error("template json: bad M");
    T.M.assign(static_cast<std::size_t>(T.k) * T.k, 0);
    for (int i = 0; i < T.k; ++i) {
        if (static_cast<int>(rows[i].size()) != T.k) throw validation_error("template json: bad M");
        for (int jj = 0; jj < T.k; ++jj) T.at(i, jj) = rows[i][jj];
    }
    auto chk = is_valid_template(T);
    if (!chk.ok) throw validation_error("template json: " + chk.violation);
    return T;
}

std::string catalogue_to_json(const PatternCatalogue& cat) {
    nlohmann::json j;
    j["r"] = cat.r;
    j["count"] = cat.templates.size();
    j["complete"] = cat.complete;
    j["nodes"] = cat.nodes;
    j["generator_version"] = 1;
    j["templates"] = nlohmann::json::array();
    for (const auto& T : cat.templates)
        j["templates"].push_back(nlohmann::json::parse(template_to_json(T)));
    return j.dump(2);
}

}  // namespace cbal
