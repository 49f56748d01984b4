#include "support.hpp"

#include <doctest.h>

using namespace bft;

TEST_CASE("parse: single set") {
    SetSystem sys = parse_set_system(R"({"n":2,"sets":[[0,1]]})");
    CHECK(sys.n == 2);
    CHECK(sys.num_sets() == 1);
    CHECK(sys.degree == 1);
}

TEST_CASE("parse: triangle has degree 2") {
    SetSystem sys = parse_set_system(R"({"n":3,"sets":[[0,1],[1,2],[0,2]]})");
    CHECK(sys.degree == 2);
}

TEST_CASE("parse: rejects duplicates, bad indices, empty family, junk") {
    CHECK_THROWS_AS(parse_set_system(R"({"n":2,"sets":[[0,0]]})"), ParseError);
    CHECK_THROWS_AS(parse_set_system(R"({"n":2,"sets":[[0,2]]})"), ParseError);
    CHECK_THROWS_AS(parse_set_system(R"({"n":2,"sets":[[-1]]})"), ParseError);
    CHECK_THROWS_AS(parse_set_system(R"({"n":2,"sets":[]})"), ParseError);
    CHECK_THROWS_AS(parse_set_system("not json"), ParseError);
    CHECK_THROWS_AS(parse_set_system(R"({"n":2})"), ParseError);
}

TEST_CASE("parse: canonicalizes member order") {
    SetSystem sys = parse_set_system(R"({"n":3,"sets":[[2,0,1]]})");
    CHECK(sys.sets[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("set_stats: all-floating zero coloring") {
    auto sys = make_sys(5, {{0, 1, 2, 3, 4}});
    SetStats st = set_stats(*sys, zero_coloring(5), 0);
    CHECK(st.sz == 5);
    CHECK(st.chi == 0);
    CHECK(st.fr == 0);
    CHECK(st.fl == 0);
    CHECK(st.th_neg == 5);
    CHECK(st.th_pos == 5);
}

TEST_CASE("set_stats: mixed frozen and floating") {
    auto sys = make_sys(2, {{0, 1}});
    FloatingColoring chi;
    chi.values = {Rat(1), Rat(1, 2)};
    SetStats st = set_stats(*sys, chi, 0);
    CHECK(st.sz == 1);
    CHECK(st.fr == 1);
    CHECK(st.fl == Rat(1, 2));
    CHECK(st.chi == Rat(3, 2));
    CHECK(st.th_neg == 0);
    CHECK(st.th_pos == 2);
    CHECK(st.th == 2);
}

TEST_CASE("set_stats: fully frozen set, th_neg can be negative") {
    auto sys = make_sys(3, {{0, 1, 2}});
    FloatingColoring chi;
    chi.values = {Rat(1), Rat(1), Rat(1)};
    SetStats st = set_stats(*sys, chi, 0);
    CHECK(st.sz == 0);
    CHECK(st.th_pos == 3);
    CHECK(st.th_neg == -3);
    CHECK(st.th == 3);
}

TEST_CASE("set_stats identities hold on assorted colorings") {
    auto sys = make_sys(6, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}, {1, 3, 5}});
    std::vector<Rat> grid = {Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 3), Rat(7, 8), Rat(1)};
    FloatingColoring chi;
    for (int x = 0; x < 6; ++x) chi.values.push_back(grid[(x * 5 + 1) % grid.size()]);
    for (int s = 0; s < sys->num_sets(); ++s) {
        SetStats st = set_stats(*sys, chi, s);
        CHECK(st.chi == st.fr + st.fl);
        CHECK(st.th_neg == Rat(st.sz) - st.fr);
        CHECK(st.th_pos == Rat(st.sz) + st.fr);
        CHECK(st.th_neg == Rat(st.sz) + st.fl - st.chi);
        CHECK(st.th_pos == Rat(st.sz) - st.fl + st.chi);
        CHECK(st.th_neg + st.th_pos == Rat(2 * st.sz));
        CHECK(st.th == std::max(st.th_neg, st.th_pos));
    }
}

TEST_CASE("discrepancy_of: examples and sign-flip invariance") {
    auto sys = make_sys(2, {{0}, {1}, {0, 1}});
    CHECK(discrepancy_of(*sys, zero_coloring(2)) == 0);
    FloatingColoring chi;
    chi.values = {Rat(1), Rat(-1)};
    CHECK(discrepancy_of(*sys, chi) == 1);

    auto pair = make_sys(2, {{0, 1}});
    FloatingColoring both;
    both.values = {Rat(1), Rat(1)};
    CHECK(discrepancy_of(*pair, both) == 2);

    FloatingColoring flipped = chi;
    for (auto& v : flipped.values) v = -v;
    CHECK(discrepancy_of(*sys, chi) == discrepancy_of(*sys, flipped));
}

TEST_CASE("coloring json round trip and validation") {
    auto sys = make_sys(3, {{0, 1}, {1, 2}});
    FloatingColoring chi;
    chi.values = {Rat(1), Rat(-1), Rat(1)};
    std::string doc = coloring_to_json(*sys, chi);
    FloatingColoring back = coloring_from_json(*sys, doc);
    CHECK(back.values == chi.values);
    CHECK_THROWS_AS(coloring_from_json(*sys, R"({"colors":[1,-1]})"), ParseError);
    CHECK_THROWS_AS(coloring_from_json(*sys, R"({"colors":[1,0,1]})"), ParseError);
    FloatingColoring floating = chi;
    floating.values[1] = Rat(1, 2);
    CHECK_THROWS(coloring_to_json(*sys, floating));
}
