#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "floer/errors.hpp"
#include "floer/surgery.hpp"

using namespace floer;
using namespace floer::surgery;
using legendrian::Verdict;

namespace {

const std::filesystem::path kFixtures = FIXTURE_DIR;

ContactSurgeryDiagram load(const std::string& rel) {
    auto p = kFixtures / rel;
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), rel);
    return diagram_from_json(nlohmann::json::parse(in), p.parent_path());
}

std::string error_code(auto&& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        return e.code();
    }
    return "";
}

const char* kFronts[] = {"open 0\nclose 0\n", "open 0\nopen 1\nclose 0\nclose 0\n",
                         "open 0\nopen 1\ncross 1\ncross 2\ncross 0\ncross 1\ncross 1\ncross 1\nclose 0\nclose 0\n",
                         "open 0\nopen 1\ncross 0\nclose 1\nclose 0\n"};

ContactSurgeryDiagram random_diagram(std::mt19937& rng, bool all_minus) {
    ContactSurgeryDiagram d;
    auto n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
        auto k = rng() % 4;
        Component c{"random", legendrian::parse_front(kFronts[k]), Rational(all_minus || rng() % 2 ? -1 : 1), k != 2};
        d.components.push_back(c);
    }
    d.linking.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) d.linking[i][j] = d.linking[j][i] = static_cast<long long>(rng() % 3) - 1;
    return d;
}

const char* kFiles[] = {"convanish.json", "surgery/stabilized_plus_one.json", "surgery/overtwisted_s3.json",
                        "surgery/all_minus_one.json", "surgery/single_minus_one.json", "surgery/L_m4_plus_one.json",
                        "surgery/half_coefficient.json"};

} // namespace

TEST_CASE("surgery fixtures round-trip") {
    for (const char* f : kFiles) {
        auto d = load(f);
        auto again = diagram_from_json(to_json(d));
        CHECK_MESSAGE(same_diagram(d, again), f);
        CHECK(to_json(again) == to_json(d));
    }
    CHECK(same_diagram(load("surgery/overtwisted_s3.json"), overtwisted_s3_fixture()));
}

TEST_CASE("malformed surgery diagrams") {
    auto j = nlohmann::json::parse(R"({"components":[{"front_text":"open 0\nclose 0\n","coeff":"+1"}],"linking":[[0]]})");
    CHECK_NOTHROW(diagram_from_json(j));
    auto bad = j;
    bad["components"][0]["coeff"] = "0";
    CHECK(error_code([&] { diagram_from_json(bad); }) == "InvalidSurgeryDiagram");
    bad = j;
    bad["components"][0]["coeff"] = "one";
    CHECK_THROWS_AS(diagram_from_json(bad), InputError);
    bad = j;
    bad["linking"] = {{1}};
    CHECK(error_code([&] { diagram_from_json(bad); }) == "InvalidSurgeryDiagram");
    bad = j;
    bad["components"][0].erase("front_text");
    bad["components"][0]["front"] = "no/such/file.front";
    CHECK_THROWS_AS(diagram_from_json(bad), InputError);
    CHECK(parse_coefficient("+1") == Rational(1));
    CHECK(parse_coefficient("-3/6") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_coefficient("1/0"), InputError);
    CHECK_THROWS_AS(parse_coefficient("1/-2"), InputError);
}

TEST_CASE("smooth framing") {
    auto u = legendrian::parse_front(kFronts[0]);
    CHECK(smooth_framing({"", u, Rational(1), true}) == 0);
    CHECK(smooth_framing({"", u, Rational(-1), true}) == -2);
    auto ln = load("surgery/L_m4_plus_one.json");
    CHECK(smooth_framing(ln.components[0]) == -3);
    CHECK(error_code([&] { smooth_framing({"", u, Rational(1, 2), true}); }) == "NonIntegerCoefficient");
}

TEST_CASE("vanishing rules on the fixtures") {
    auto conv = detect_vanishing(load("convanish.json"));
    CHECK(conv.verdict == Verdict::Vanishes);
    REQUIRE(conv.rule);
    CHECK(*conv.rule == Rule::ConvanishConfiguration);
    CHECK(conv.witness == std::vector<std::size_t>{0, 1});

    auto stab = detect_vanishing(load("surgery/stabilized_plus_one.json"));
    REQUIRE(stab.rule);
    CHECK(*stab.rule == Rule::DestabilizablePlusOne);

    auto ot = overtwisted_s3_fixture();
    auto c = detect_vanishing(ot);
    REQUIRE(c.rule);
    CHECK(*c.rule == Rule::DestabilizablePlusOne);
    CHECK(c.witness == std::vector<std::size_t>{0});
    CHECK(detect_vanishing(remove_component(ot, 0)).verdict == Verdict::Inconclusive);

    ContactSurgeryDiagram minus_one{{{"", legendrian::parse_front(kFronts[2]), Rational(-1), false}}, {{0}}};
    auto u = disjoint_union(ot, minus_one);
    auto cu = detect_vanishing(u);
    REQUIRE(cu.rule);
    CHECK(*cu.rule == Rule::DestabilizablePlusOne);
    CHECK(detect_vanishing(minus_one).verdict == Verdict::Inconclusive);

    for (const char* f : {"surgery/all_minus_one.json", "surgery/single_minus_one.json", "surgery/L_m4_plus_one.json"})
        CHECK_MESSAGE(detect_vanishing(load(f)).verdict == Verdict::Inconclusive, f);
    auto half = detect_vanishing(load("surgery/half_coefficient.json"));
    CHECK(half.verdict == Verdict::Inconclusive);
    CHECK(half.notes.size() == 1);

    for (const char* f : kFiles) {
        auto d = load(f);
        CHECK_MESSAGE(verify_certificate(d, detect_vanishing(d)), f);
    }
}

TEST_CASE("rule B needs the isolation of K") {
    auto d = load("convanish.json");
    ContactSurgeryDiagram extra{{{"", legendrian::parse_front(kFronts[0]), Rational(-1), true}}, {{0}}};
    auto u = disjoint_union(d, extra);
    u.linking[0][2] = u.linking[2][0] = 1; // K now also links the third component
    auto c = detect_vanishing(u);
    CHECK(c.verdict == Verdict::Inconclusive);
    auto forged = detect_vanishing(d);
    CHECK_FALSE(verify_certificate(u, forged));
}

TEST_CASE("random diagrams: monotonicity and the all -1 control") {
    std::mt19937 rng(7);
    auto ot = overtwisted_s3_fixture();
    auto conv = load("convanish.json");
    for (int trial = 0; trial < 200; ++trial) {
        auto r = random_diagram(rng, false);
        for (const auto& base : {ot, conv}) {
            auto u = disjoint_union(base, r);
            auto c = detect_vanishing(u);
            CHECK(c.verdict == Verdict::Vanishes);
            CHECK(verify_certificate(u, c));
            auto v = disjoint_union(r, base);
            CHECK(detect_vanishing(v).verdict == Verdict::Vanishes);
        }
        auto c = detect_vanishing(r);
        CHECK(verify_certificate(r, c));

        auto m = random_diagram(rng, true);
        auto cm = detect_vanishing(m);
        CHECK(cm.verdict == Verdict::Inconclusive);
        CHECK_FALSE(cm.rule);
    }
}
