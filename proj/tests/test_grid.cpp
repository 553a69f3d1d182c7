#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <numeric>

#include "floer/errors.hpp"
#include "floer/grid.hpp"

using namespace floer;
using namespace floer::grid;

namespace {

GridDiagram load(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/grids/" + name + ".json");
    REQUIRE(in.good());
    return grid_from_json(nlohmann::json::parse(in));
}

const char* kKnots[] = {"unknot2", "unknot3", "trefoil5", "figure_eight6", "cinquefoil7", "three_twist7", "stevedore8"};

BigradedRanks table(std::initializer_list<std::tuple<int, int, std::size_t>> entries) {
    BigradedRanks r;
    for (auto [a, m, k] : entries) r.add(a, m, k);
    return r;
}

BigradedRanks mirror_table(const BigradedRanks& h) {
    BigradedRanks r;
    for (const auto& [k, v] : h.ranks) r.add(-k.first, -k.second, v);
    return r;
}

} // namespace

TEST_CASE("grid parsing and validation") {
    CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"n":2,"X":[0,0],"O":[1,1]})")), InputError);
    CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"n":2,"X":[0,1],"O":[0,1]})")), InputError);
    CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"X":"bad"})")), InputError);
    for (const char* name : kKnots) {
        auto g = load(name);
        CHECK(grid_from_json(to_json(g)) == g);
        CHECK(components(g) == 1);
    }
    CHECK(components(load("hopf4")) == 2);
}

TEST_CASE("permutation ranking round trip") {
    for (int n : {1, 4, 6}) {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        std::uint64_t r = 0;
        do {
            CHECK(perm_rank(p) == r);
            CHECK(perm_unrank(r, n) == p);
            ++r;
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("2x2 unknot gradings") {
    auto g = load("unknot2");
    CHECK(maslov(g, {1, 0}) == 0);
    CHECK(alexander(g, {1, 0}) == 0);
    CHECK(maslov(g, {0, 1}) == -1);
    CHECK(alexander(g, {0, 1}) == -1);
}

TEST_CASE("gradings are invariant under torus translation") {
    for (const char* name : {"trefoil5", "figure_eight6"}) {
        auto g = load(name);
        for (auto [dc, dr] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, 3}}) {
            auto t = translate(g, dc, dr);
            GridState x(static_cast<std::size_t>(g.n));
            std::iota(x.begin(), x.end(), 0);
            do {
                GridState y(x.size());
                for (int c = 0; c < g.n; ++c)
                    y[static_cast<std::size_t>((c + dc) % g.n)] = (x[static_cast<std::size_t>(c)] + dr) % g.n;
                CHECK(maslov(g, x) == maslov(t, y));
                CHECK(alexander(g, x) == alexander(t, y));
            } while (std::next_permutation(x.begin(), x.end()));
        }
    }
}

TEST_CASE("tilde complexes: d^2 = 0 and rectangles respect gradings") {
    for (const char* name : kKnots) {
        auto g = load(name);
        auto t = tilde_complex(g);
        const auto& d = t.complex.differential;
        CHECK_MESSAGE((d * d).is_zero(), name);
        for (auto [r, c] : d.positions()) {
            CHECK(t.complex.basis.grading(r) == t.complex.basis.grading(c) - 1);
            CHECK(t.alexander[r] == t.alexander[c]);
        }
    }
}

TEST_CASE("tilde homology ranks") {
    auto u = tilde_complex(load("unknot2"));
    CHECK(u.complex.dim() == 2);
    CHECK(u.complex.differential.nnz() == 0);
    CHECK(tilde_homology(load("unknot2")).total() == 2);
    // 3 = sum of |Alexander coefficients| of the trefoil, times 2^(n-1)
    CHECK(tilde_homology(load("trefoil5")).total() == 48);
    // block-by-block computation agrees with the full complex
    auto g = load("figure_eight6");
    auto t = tilde_complex(g);
    auto full = gf2::homology(t.complex);
    auto blocks = tilde_homology(g);
    std::map<int, std::size_t> by_maslov;
    for (const auto& [k, r] : blocks.ranks) by_maslov[k.second] += r;
    for (auto [m, r] : full)
        if (r) CHECK(by_maslov[m] == r);
    CHECK(gf2::total_rank(full) == blocks.total());
}

TEST_CASE("hat homology of small knots") {
    CHECK(hfk_hat(load("unknot2")) == table({{0, 0, 1}}));
    CHECK(hfk_hat(load("unknot3")) == table({{0, 0, 1}}));
    CHECK(hfk_hat(load("figure_eight6")) == table({{1, 1, 1}, {0, 0, 3}, {-1, -1, 1}}));
    CHECK(hfk_hat(load("trefoil5")) == table({{1, 2, 1}, {0, 1, 1}, {-1, 0, 1}}));
}

TEST_CASE("grid results agree with the planar-diagram invariants") {
    for (const char* name : kKnots) {
        auto g = load(name);
        auto h = hfk_hat(g);
        auto pd = to_pd(g);
        auto delta = knot::alexander_conway(pd);
        CHECK_MESSAGE(h.euler_characteristic() == delta, name);
        // all fixtures are alternating knots
        CHECK_MESSAGE(h == knot::alternating_hfk(delta, knot::signature(pd)), name);
        for (const auto& [k, r] : h.ranks) CHECK(h.at(-k.first, k.second - 2 * k.first) == r);
    }
}

TEST_CASE("invariance under grid moves") {
    for (const char* name : {"trefoil5", "figure_eight6"}) {
        auto g = load(name);
        auto h = hfk_hat(g);
        CHECK(hfk_hat(translate(g, 1, 2)) == h);
        CHECK(hfk_hat(translate(g, g.n - 1, 1)) == h);
        CHECK(hfk_hat(stabilize(g, 0)) == h);
        CHECK(hfk_hat(stabilize(g, 2)) == h);
        int moved = 0;
        for (int c = 0; c + 1 < g.n; ++c) {
            GridDiagram t;
            try {
                t = commute_columns(g, c);
            } catch (const DomainError& e) {
                CHECK(e.code() == "IllegalMove");
                continue;
            }
            CHECK(hfk_hat(t) == h);
            ++moved;
        }
        // minimal grids may forbid every commutation; a stabilized copy does not
        auto st = stabilize(g, 1);
        for (int s = 0; moved == 0 && s < st.n; ++s) {
            auto t = translate(st, s, 0);
            for (int c = 0; c + 1 < t.n && moved == 0; ++c) {
                GridDiagram m;
                try {
                    m = commute_columns(t, c);
                } catch (const DomainError&) {
                    continue;
                }
                CHECK(hfk_hat(m) == h);
                ++moved;
            }
        }
        CHECK(moved > 0);
    }
}

TEST_CASE("reflection mirrors the knot, transposition does not") {
    for (const char* name : {"trefoil5", "three_twist7"}) {
        auto g = load(name);
        auto h = hfk_hat(g);
        CHECK(hfk_hat(reflect(g)) == mirror_table(h));
        CHECK(hfk_hat(transpose(g)) == h);
        CHECK(knot::signature(to_pd(reflect(g))) == -knot::signature(to_pd(g)));
    }
}

TEST_CASE("connected sums") {
    auto u = load("unknot2");
    auto t = load("trefoil5");
    CHECK(hfk_hat(connected_sum(u, u)) == table({{0, 0, 1}}));
    CHECK(hfk_hat(connected_sum(t, u)) == hfk_hat(t));
    CHECK(hfk_hat(connected_sum(u, t)) == hfk_hat(t));
    auto granny = connected_sum(t, t);
    CHECK(granny == load("granny10"));
    auto delta = knot::alexander_conway(to_pd(granny));
    auto dt = knot::alexander_conway(to_pd(t));
    CHECK(delta == dt * dt);
}

TEST_CASE("error paths") {
    auto hopf = load("hopf4");
    CHECK_THROWS_AS(hfk_hat(hopf), DomainError);
    try {
        hfk_hat(hopf);
    } catch (const DomainError& e) {
        CHECK(e.code() == "NotAKnot");
    }
    try {
        hfk_hat(load("stevedore8"), {7});
        FAIL("expected SizeLimit");
    } catch (const DomainError& e) {
        CHECK(e.code() == "SizeLimit");
    }
    CHECK_THROWS_AS(divide_by_v(table({{0, 0, 1}}), 1), DomainError);
    CHECK(divide_by_v(table({{0, 0, 1}, {-1, -1, 1}}), 1) == table({{0, 0, 1}}));
    CHECK(divide_by_v(table({{2, 1, 1}, {1, 0, 2}, {0, -1, 1}}), 2) == table({{2, 1, 1}}));
}
