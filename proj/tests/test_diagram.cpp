#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "floer/diagram.hpp"
#include "floer/errors.hpp"
#include "floer/grid.hpp"

using namespace floer;
using namespace floer::diagram;

namespace {

nlohmann::json load_json(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/diagrams/" + name + ".json");
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

CombinatorialDiagram load(const std::string& name) { return diagram_from_json(load_json(name)); }

std::string error_code(auto&& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        return e.code();
    }
    return "";
}

std::size_t rank(const NiceComplex& c) { return gf2::total_rank(gf2::homology(c.complex)); }

const char* kDiagrams[] = {"s3_genus1", "s3_three_point", "s2s1_parallel", "s2s1_knot",
                           "twist_n0_base", "twist_n0_delta", "twist_n2_delta", "twist_n3_delta"};

} // namespace

TEST_CASE("fixtures parse, validate and round-trip") {
    for (const char* name : kDiagrams) {
        auto d = load(name);
        auto again = diagram_from_json(to_json(d));
        CHECK_MESSAGE(to_json(again) == to_json(d), name);
        CHECK(same_diagram(d, again));
    }
}

TEST_CASE("malformed and inconsistent diagrams are rejected") {
    auto j = load_json("s3_three_point");
    auto broken = j;
    broken["regions"][0]["boundary"][1][2] = 1; // wrong orientation breaks the boundary path
    CHECK(error_code([&] { diagram_from_json(broken); }) == "InvalidDiagram");
    broken = j;
    broken["genus"] = 2;
    CHECK(error_code([&] { diagram_from_json(broken); }) == "InvalidDiagram");
    broken = j;
    broken["regions"].erase(1);
    CHECK(error_code([&] { diagram_from_json(broken); }) == "InvalidDiagram");
    broken = j;
    broken["regions"][0]["boundary"][0][0] = "q7";
    CHECK_THROWS_AS(diagram_from_json(broken), InputError);
    CHECK_THROWS_AS(diagram_from_json(nlohmann::json::parse(R"({"genus":"one"})")), InputError);
}

TEST_CASE("point multiplicities") {
    auto d = load("s3_three_point");
    Domain zero(d.regions.size(), 0);
    CHECK(point_multiplicity(d, zero, 1) == 0);
    Domain at_z(d.regions.size(), 0);
    at_z[static_cast<std::size_t>(d.z[0])] = 1;
    CHECK(point_multiplicity(d, at_z, d.z[0]) == 1);
    Domain bigon{1, 0, 0};
    CHECK(point_multiplicity(d, bigon, d.z[0]) == 0);
    CHECK(error_code([&] { point_multiplicity(d, zero, 5); }) == "UnknownRegion");
}

TEST_CASE("periodic domains") {
    CHECK(periodic_domains(load("s3_genus1")).empty());
    CHECK(periodic_domains(load("s3_three_point")).empty());
    auto par = load("s2s1_parallel");
    auto p = periodic_domains(par);
    REQUIRE(p.size() == 1);
    CHECK(p[0][0] == 0); // z-region
    CHECK(std::abs(p[0][1]) == 1);

    auto g = load("s2s1_knot");
    auto pg = periodic_domains(g);
    REQUIRE(pg.size() == 1);
    // the two bigons with opposite signs: B1 - B2, so n_w = +-1
    CHECK(pg[0][2] == 0);
    CHECK(pg[0][0] == -pg[0][1]);
    CHECK(point_multiplicity(g, pg[0], g.w[0]) != 0);
    CHECK(periodic_domains(g, true).empty());
}

TEST_CASE("admissibility") {
    auto s3 = check_admissibility(load("s3_genus1"), AdmissibilityMode::WeakAllSpinc);
    CHECK(s3.admissible);
    CHECK(s3.lattice_rank == 0);

    auto par = load("s2s1_parallel");
    auto weak = check_admissibility(par, AdmissibilityMode::WeakAllSpinc);
    CHECK_FALSE(weak.admissible);
    REQUIRE(weak.witness);
    CHECK(*weak.witness == Domain{0, 1});
    CHECK(check_admissibility(par, AdmissibilityMode::ExtremelyWeakConservative).admissible);

    auto g = load("s2s1_knot");
    CHECK(check_admissibility(g, AdmissibilityMode::WeakAllSpinc).admissible);
    auto ext = check_admissibility(g, AdmissibilityMode::ExtremelyWeakConservative);
    CHECK(ext.admissible);
    CHECK(ext.lattice_rank == 0);
}

TEST_CASE("nice differential on small diagrams") {
    auto s3 = nice_differential(load("s3_genus1"), Flavor::Hat);
    CHECK(s3.generators.size() == 1);
    CHECK(s3.complex.differential.is_zero());
    CHECK(rank(s3) == 1);

    auto three = nice_differential(load("s3_three_point"), Flavor::Hat);
    CHECK(three.generators.size() == 3);
    CHECK(three.complex.differential.nnz() == 2);
    CHECK(rank(three) == 1);

    auto g = load("s2s1_knot");
    auto hat = nice_differential(g, Flavor::Hat);
    CHECK(hat.generators.size() == 2);
    CHECK(hat.complex.differential.is_zero()); // the two bigons cancel mod 2
    CHECK(rank(hat) == 2);
    auto knot = nice_differential(g, Flavor::KnotHat);
    CHECK(knot.complex.differential.nnz() == 1);
    CHECK(rank(knot) == 0);

    auto par = nice_differential(load("s2s1_parallel"), Flavor::KnotHat);
    CHECK(par.generators.empty());
}

TEST_CASE("niceness is required") {
    // z and w both in the annulus leaves the bigons; move z into a bigon instead
    auto j = load_json("s2s1_knot");
    j["z"] = 0;
    j["w"] = 0;
    auto d = diagram_from_json(j);
    std::string code;
    try {
        nice_differential(d, Flavor::Hat);
    } catch (const DomainError& e) {
        code = e.code();
        CHECK(e.detail()["region"] == 2);
    }
    CHECK(code == "NotNice");
}

TEST_CASE("grid diagrams as multi-pointed Heegaard diagrams") {
    for (const char* name : {"unknot2", "unknot3", "trefoil5"}) {
        std::ifstream in(std::string(FIXTURE_DIR) + "/grids/" + name + ".json");
        auto g = grid::grid_from_json(nlohmann::json::parse(in));
        auto d = from_grid(g);
        CHECK(static_cast<int>(d.z.size()) == g.n);
        auto c = nice_differential(d, Flavor::KnotHat);
        CHECK(rank(c) == grid::tilde_homology(g).total());
        auto t = grid::tilde_complex(g);
        CHECK(c.complex.differential.nnz() == t.complex.differential.nnz());
        CHECK(periodic_domains(d, true).empty());
    }
}

TEST_CASE("curve removal") {
    auto refined = load("twist_n2_delta");
    auto base = load("twist_n2_base");
    auto ab = remove_curve(refined, "d0");
    validate(ab);
    CHECK(same_diagram(ab, base));
    CHECK(ab.points.size() == 1);
    CHECK(ab.regions.size() == 1);
    auto ad = remove_curve(refined, "b0");
    CHECK(ad.points.size() == 2);
    CHECK(ad.regions.size() == 2);
    CHECK_FALSE(same_diagram(ab, load("s3_three_point")));
}

TEST_CASE("Dehn twist generator counts") {
    for (int n : {0, 2, 3}) {
        auto name = "twist_n" + std::to_string(n);
        auto t = dehn_twist_beta1(load(name + "_base"), load(name + "_delta"));
        CHECK(generators(t.twisted).size() == static_cast<std::size_t>(1 + n));
        CHECK(generators(t.alpha_beta).size() == 1);
        CHECK(generators(t.alpha_delta).size() == static_cast<std::size_t>(n));
        CHECK(t.twisted.regions.size() == load(name + "_delta").regions.size() - 1);
        // the twisted diagram is again a valid diagram and its z region carries w
        CHECK(t.twisted.z == t.twisted.w);
        auto again = diagram_from_json(to_json(t.twisted));
        CHECK(same_diagram(again, t.twisted));
    }
}

TEST_CASE("bad delta positions") {
    CHECK(error_code([] { dehn_twist_beta1(load("twist_double_base"), load("twist_double_delta")); }) ==
          "BadDeltaPosition");
    CHECK(error_code([] { dehn_twist_beta1(load("twist_wrong_corner_base"), load("twist_wrong_corner_delta")); }) ==
          "BadDeltaPosition");
    // base and refined diagrams must agree
    CHECK(error_code([] { dehn_twist_beta1(load("s3_three_point"), load("twist_n2_delta")); }) == "BaseMismatch");
    // twisting the twisted diagram again along the same data is not possible: it has no delta
    auto t = dehn_twist_beta1(load("twist_n2_base"), load("twist_n2_delta"));
    CHECK(error_code([&] { dehn_twist_beta1(t.twisted, t.twisted); }) == "BadDeltaPosition");
}

TEST_CASE("block triangularity of the twisted differential") {
    for (int n : {0, 2, 3}) {
        auto name = "twist_n" + std::to_string(n);
        auto t = dehn_twist_beta1(load(name + "_base"), load(name + "_delta"));
        auto rep = block_triangularity_check(t);
        CHECK_MESSAGE(rep.ok(), name);
        CHECK(rep.lower_block_zero);
        CHECK(rep.ab_block_matches);
        CHECK(rep.ad_block_matches);
        CHECK(rep.f_is_chain_map);
        CHECK(rep.twisted_rank == rep.cone_rank);
        CHECK(rep.ab_generators + rep.ad_generators == static_cast<std::size_t>(1 + n));
        if (n == 0) CHECK(rep.f.matrix.is_zero());
        auto j = to_json(rep);
        CHECK(j["ok"] == true);
    }
}
