#include "doctest.h"

#include <set>

#include "cbal/canonical.hpp"
#include "cbal/pattern.hpp"

using namespace cbal;

namespace {

PatternTemplate make_template(int r, std::vector<std::vector<int>> rows) {
    PatternTemplate T;
    T.r = r;
    T.k = static_cast<int>(rows.size());
    T.M.assign(static_cast<std::size_t>(T.k) * T.k, 0);
    for (int i = 0; i < T.k; ++i)
        for (int j = 0; j < T.k; ++j) T.at(i, j) = rows[i][j];
    return T;
}

}  // namespace

TEST_CASE("template validation") {
    CHECK(is_valid_template(make_template(3, {{0, 2}, {2, 1}})).ok);
    CHECK_FALSE(is_valid_template(make_template(2, {{0}})).ok);  // color 1 absent
    // part 0 removable: color 0 survives in rows 1,2
    auto bad = make_template(2, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});
    auto chk = is_valid_template(bad);
    CHECK_FALSE(chk.ok);
    CHECK(chk.violation.find("removable") != std::string::npos);
}

TEST_CASE("blow up") {
    auto T = make_template(3, {{0, 2}, {2, 1}});
    auto g1 = blow_up(T, 1);
    CHECK(g1.n() == 2);
    CHECK(g1.color(0, 1) == 2);

    auto g2 = blow_up(T, 2);
    CHECK(g2.n() == 4);
    CHECK(g2.color(0, 1) == 0);
    CHECK(g2.color(2, 3) == 1);
    CHECK(g2.color(0, 2) == 2);
    CHECK(g2.color(1, 3) == 2);

    // restriction to one part is monochromatic in the diagonal color
    int part1[] = {2, 3};
    auto h = g2.induced(part1);
    CHECK(h.color(0, 1) == 1);
}

TEST_CASE("separator blow-up has no rainbow triangle") {
    auto g = blow_up(separator_pattern(3), 3);
    CHECK_FALSE(g.find_rainbow_triangle().has_value());
}

TEST_CASE("tournament patterns") {
    Tournament arrow{2, {0, 1, 0, 0}};  // 0 -> 1
    auto P = tournament_pattern(arrow);
    CHECK(P.k == 2);
    CHECK(P.at(0, 0) == 0);
    CHECK(P.at(1, 1) == 1);
    CHECK(P.at(0, 1) == 1);
    CHECK(is_valid_template(P).ok);

    // cyclic 3-tournament 0->1->2->0
    Tournament cyc{3, {0, 1, 0, 0, 0, 1, 1, 0, 0}};
    auto C = tournament_pattern(cyc);
    CHECK(C.at(0, 0) == 0);
    CHECK(C.at(1, 1) == 1);
    CHECK(C.at(2, 2) == 2);
    CHECK(C.at(0, 1) == 1);
    CHECK(C.at(1, 2) == 2);
    CHECK(C.at(0, 2) == 0);
    CHECK(is_valid_template(C).ok);

    Tournament bad{2, {0, 1, 1, 0}};
    CHECK_THROWS_AS(tournament_pattern(bad), validation_error);
}

TEST_CASE("tournament enumeration counts") {
    CHECK(enumerate_tournaments(2).size() == 1);
    CHECK(enumerate_tournaments(3).size() == 2);
    CHECK(enumerate_tournaments(4).size() == 4);

    // the two 3-vertex tournaments give inequivalent patterns
    auto ts = enumerate_tournaments(3);
    auto k0 = canonical_key(blow_up(tournament_pattern(ts[0]), 2), true);
    auto k1 = canonical_key(blow_up(tournament_pattern(ts[1]), 2), true);
    CHECK(k0 != k1);
}

TEST_CASE("separator pattern shapes") {
    auto s2 = separator_pattern(2);
    CHECK(s2.k == 2);
    CHECK(s2.at(0, 0) == 1);
    CHECK(s2.at(0, 1) == 0);
    CHECK(s2.at(1, 1) == 1);
    CHECK(is_valid_template(s2).ok);

    auto s3 = separator_pattern(3);
    CHECK(s3.k == 4);
    CHECK(is_valid_template(s3).ok);

    auto s4 = separator_pattern(4);
    CHECK(s4.k == 6);
    CHECK(is_valid_template(s4).ok);
}

TEST_CASE("pattern catalogue counts for r=2 and r=3") {
    auto c2 = enumerate_patterns(2);
    CHECK(c2.templates.size() == 2);
    auto c3 = enumerate_patterns(3);
    CHECK(c3.templates.size() == 9);

    for (const auto& T : c3.templates) CHECK(is_valid_template(T).ok);

    // catalogue membership of the named constructions
    CHECK(c2.contains(canonical_key(blow_up(separator_pattern(2), 2), true)));
    CHECK(c3.contains(canonical_key(blow_up(separator_pattern(3), 2), true)));
    for (const auto& t : enumerate_tournaments(3))
        CHECK(c3.contains(canonical_key(blow_up(tournament_pattern(t), 2), true)));

    // removing any part of a t=2 blow-up loses a color
    for (const auto& T : c3.templates) {
        auto g = blow_up(T, 2);
        for (int part = 0; part < T.k; ++part) {
            std::vector<int> rest;
            for (int v = 0; v < g.n(); ++v)
                if (v / 2 != part) rest.push_back(v);
            auto h = g.induced(rest).histogram();
            int used = 0;
            for (long c : h.counts)
                if (c > 0) ++used;
            CHECK(used < T.r);
        }
    }
}

TEST_CASE("r=4 catalogue contains the four tournament patterns") {
    auto c4 = enumerate_patterns(4);
    CHECK(c4.templates.size() >= 4);
    for (const auto& t : enumerate_tournaments(4))
        CHECK(c4.contains(canonical_key(blow_up(tournament_pattern(t), 2), true)));
    CHECK(c4.contains(canonical_key(blow_up(separator_pattern(4), 2), true)));
}

TEST_CASE("budget exhaustion carries a partial catalogue") {
    CHECK_THROWS_AS(enumerate_patterns(3, 10), enumeration_budget_exceeded);
    try {
        enumerate_patterns(3, 10);
    } catch (const enumeration_budget_exceeded& e) {
        CHECK_FALSE(e.partial.complete);
    }
}

TEST_CASE("template json round trip") {
    auto T = separator_pattern(3);
    auto T2 = template_from_json(template_to_json(T));
    CHECK(T2.r == T.r);
    CHECK(T2.k == T.k);
    CHECK(T2.M == T.M);

    CHECK_THROWS_AS(template_from_json("{\"r\":2,\"k\":1,\"M\":[[0]]}"), validation_error);
}
