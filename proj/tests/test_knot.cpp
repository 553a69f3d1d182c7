#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "floer/errors.hpp"
#include "floer/knot.hpp"

using namespace floer;
using namespace floer::knot;

namespace {

LinkDiagram load(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/knots/" + name + ".json");
    REQUIRE(in.good());
    return diagram_from_json(nlohmann::json::parse(in));
}

LaurentPolynomial poly(std::initializer_list<std::pair<int, long long>> terms) {
    LaurentPolynomial p;
    for (auto [e, c] : terms) p.add(e, c);
    return p;
}

// z-polynomial arithmetic for the skein check
std::vector<long long> sub(std::vector<long long> a, const std::vector<long long>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

std::vector<long long> times_z(std::vector<long long> a) {
    a.insert(a.begin(), 0);
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

const char* kAll[] = {"unknot",     "trefoil_left", "figure_eight", "cinquefoil", "three_twist",
                      "stevedore",  "twist_m0",     "twist_m2",     "twist_m4",   "twist_m6"};

} // namespace

TEST_CASE("PD parsing accepts both notations and rejects bad labels") {
    auto a = diagram_from_json(nlohmann::json::parse(R"({"pd": "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]"})"));
    auto b = diagram_from_json(nlohmann::json::parse(R"({"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]})"));
    CHECK(a == b);
    CHECK(diagram_from_json(to_json(a)) == a);
    CHECK_THROWS_AS(diagram_from_json(nlohmann::json::parse(R"({"pd": "X[1,2,3]"})")), InputError);
    CHECK_THROWS_AS(diagram_from_json(nlohmann::json::parse(R"({"pd": [[1,2,3]]})")), InputError);
    auto bad = diagram_from_json(nlohmann::json::parse(R"({"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,7]]})"));
    CHECK_THROWS_AS(orient(bad), DomainError);
}

TEST_CASE("unknot normalization") {
    auto u = load("unknot");
    CHECK(alexander_conway(u) == LaurentPolynomial::constant(1));
    CHECK(signature(u) == 0);
    auto h = alternating_hfk(LaurentPolynomial::constant(1), 0);
    CHECK(h.total() == 1);
    CHECK(h.at(0, 0) == 1);
}

TEST_CASE("Conway and Alexander polynomials of small knots") {
    CHECK(conway_polynomial(load("trefoil_left")) == std::vector<long long>{1, 0, 1});
    CHECK(conway_polynomial(load("figure_eight")) == std::vector<long long>{1, 0, -1});
    CHECK(conway_polynomial(load("cinquefoil")) == std::vector<long long>{1, 0, 3, 0, 1});
    CHECK(conway_polynomial(load("three_twist")) == std::vector<long long>{1, 0, 2});
    CHECK(conway_polynomial(load("stevedore")) == std::vector<long long>{1, 0, -2});
    CHECK(alexander_conway(load("trefoil_left")) == poly({{-1, 1}, {0, -1}, {1, 1}}));
    CHECK(alexander_conway(load("cinquefoil")) == poly({{-2, 1}, {-1, -1}, {0, 1}, {1, -1}, {2, 1}}));
    CHECK(alexander_conway(load("three_twist")) == poly({{-1, 2}, {0, -3}, {1, 2}}));
}

TEST_CASE("links: Hopf link and split unions") {
    auto hopf = load("hopf");
    CHECK(orient(hopf).components() == 2);
    auto z = conway_polynomial(hopf);
    REQUIRE(z.size() == 2);
    CHECK(z[0] == 0);
    CHECK((z[1] == 1 || z[1] == -1));
    CHECK_THROWS_AS(alexander_conway(hopf), DomainError);
    LinkDiagram split = load("trefoil_left");
    split.free_loops = 1;
    CHECK(conway_polynomial(split) == std::vector<long long>{0});
}

TEST_CASE("twist family: Alexander polynomial follows (1-n) + (n/2)(T + 1/T)") {
    for (int n : {0, -2, -4, -6}) {
        auto d = load("twist_m" + std::to_string(-n));
        CHECK(alexander_conway(d) == poly({{-1, n / 2}, {0, 1 - n}, {1, n / 2}}));
    }
}

TEST_CASE("signature conventions") {
    auto l = load("trefoil_left");
    auto r = mirror(l);
    CHECK(orient(l).writhe() == -3);
    CHECK(orient(r).writhe() == 3);
    CHECK(signature(r) == -2);
    CHECK(signature(l) == 2);
    CHECK(signature(load("cinquefoil")) == 4);
    CHECK(signature(mirror(load("cinquefoil"))) == -4);
    CHECK(signature(load("three_twist")) == 2);
    CHECK(signature(load("figure_eight")) == 0);
    CHECK(signature(load("stevedore")) == 0);
}

TEST_CASE("twist family signatures are bounded by genus one") {
    // Each member has a genus-one Alexander polynomial, so |sigma| <= 2; and
    // Delta(-1) > 0 forces sigma = 0 mod 4. Hence sigma = 0 for every n < 0.
    for (int n : {-2, -4, -6}) {
        auto d = load("twist_m" + std::to_string(-n));
        CHECK(signature(d) == 0);
        CHECK(signature(mirror(d)) == 0);
    }
}

TEST_CASE("both checkerboard colourings agree and mirroring negates") {
    for (const char* name : kAll) {
        auto d = load(name);
        int s0 = detail::signature_with_coloring(d, 0);
        int s1 = detail::signature_with_coloring(d, 1);
        CHECK_MESSAGE(s0 == s1, name);
        CHECK_MESSAGE(signature(mirror(d)) == -s0, name);
        // sigma = 0 mod 4 exactly when Delta(-1) > 0
        auto delta = alexander_conway(d);
        long long at_minus_one = 0;
        for (auto [e, c] : delta.terms()) at_minus_one += (e % 2 == 0) ? c : -c;
        CHECK_MESSAGE(((s0 % 4 == 0) == (at_minus_one > 0)), name);
    }
}

TEST_CASE("Alexander polynomial is symmetric, normalized, and mirror invariant") {
    for (const char* name : kAll) {
        auto d = load(name);
        auto p = alexander_conway(d);
        CHECK(p.eval_at_one() == 1);
        CHECK(p.is_symmetric());
        CHECK(alexander_conway(mirror(d)) == p);
    }
}

TEST_CASE("skein relation on recomputed sub-diagrams") {
    for (const char* name : kAll) {
        auto d = load(name);
        auto od = orient(d);
        for (std::size_t c = 0; c < d.pd.size(); ++c) {
            auto sw = switch_crossing(d, c);
            auto sm = smooth_crossing(d, c);
            REQUIRE(orient(sw).crossings[c].sign == -od.crossings[c].sign);
            auto here = conway_polynomial(d), there = conway_polynomial(sw), zero = conway_polynomial(sm);
            auto plus = od.crossings[c].sign > 0 ? here : there;
            auto minus = od.crossings[c].sign > 0 ? there : here;
            CHECK_MESSAGE(sub(plus, minus) == times_z(zero), name << " crossing " << c);
        }
    }
}

TEST_CASE("crossing bound") {
    CHECK_THROWS_AS(conway_polynomial(load("twist_m6"), 4), DomainError);
}

TEST_CASE("alternating HFK placement") {
    auto delta = poly({{-1, -1}, {0, 3}, {1, -1}});
    auto h = alternating_hfk(delta, 0);
    CHECK(h.at(1, 1) == 1);
    CHECK(h.at(0, 0) == 3);
    CHECK(h.at(-1, -1) == 1);
    CHECK(h.total() == 5);
    CHECK(h.euler_characteristic() == delta);
    CHECK_THROWS_AS(alternating_hfk(delta, 1), DomainError);
    // with sigma = 2 the whole table moves up one Maslov degree
    auto shifted = alternating_hfk(poly({{-1, -2}, {0, 5}, {1, -2}}), 2);
    CHECK(shifted.at(-1, 0) == 2);
    CHECK(shifted.at(0, 1) == 5);
    CHECK(shifted.at(1, 2) == 2);
}
