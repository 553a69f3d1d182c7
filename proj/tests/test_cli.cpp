#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "floer/cli.hpp"
#include "floer/diagram.hpp"
#include "floer/grid.hpp"
#include "floer/knot.hpp"
#include "floer/legendrian.hpp"
#include "floer/surgery.hpp"

using namespace floer;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kFix = FIXTURE_DIR;

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return (kFix / rel).string(); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("exit codes and report envelope") {
    auto r = call({"grid", "hfk", fx("unknot2.json"), "--json"});
    REQUIRE(r.code == 0);
    auto j = r.report();
    CHECK(j["status"] == "ok");
    CHECK(j["result"]["total_rank"] == 1);
    CHECK(j["result"]["ranks"][0] == json{{"alexander", 0}, {"maslov", 0}, {"rank", 1}});
    CHECK(j["input_digest"].get<std::string>().rfind("sha256:", 0) == 0);
    CHECK(j.contains("timing_ms"));
    CHECK(j["command"].get<std::string>().find("grid hfk") != std::string::npos);

    auto s = call({"surgery", "check", fx("convanish.json"), "--json"});
    REQUIRE(s.code == 0);
    CHECK(s.report()["result"]["certificate"]["rule"] == "ConvanishConfiguration");
    CHECK(s.report()["result"]["certificate"]["verdict"] == "VANISHES");

    std::string bad = (fs::temp_directory_path() / "floercalc_bad.json").string();
    std::ofstream(bad) << "{\"n\": 2, \"X\": [0,";
    auto m = call({"grid", "hfk", bad});
    CHECK(m.code == 2);
    CHECK(m.err.find("parse error") != std::string::npos);
    CHECK(call({"grid", "hfk", bad, "--json"}).report()["error"]["kind"] == "InputError");
    CHECK(call({"grid", "hfk", fx("does/not/exist.json")}).code == 2);
    CHECK(call({"grid"}).code == 2);
    CHECK(call({"bogus"}).code == 2);

    auto d = call({"grid", "hfk", fx("grids/hopf4.json")});
    CHECK(d.code == 1);
    CHECK(d.report()["error"]["code"] == "NotAKnot");
}

TEST_CASE("text output is the default") {
    auto r = call({"knot", "signature", fx("knots/trefoil_left.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("signature: 2") != std::string::npos);
    auto m = call({"knot", "signature", fx("knots/trefoil_left.json"), "--mirror", "--json"});
    CHECK(m.report()["result"]["signature"] == -2);
}

TEST_CASE("grid size limit and FLOERCALC_MAX_N") {
    auto f = fx("grids/stevedore8.json");
    CHECK(call({"grid", "euler", f, "--max-n", "7", "--json"}).report()["error"]["code"] == "SizeLimit");
    setenv("FLOERCALC_MAX_N", "7", 1);
    CHECK(call({"grid", "euler", f}).code == 1);
    setenv("FLOERCALC_MAX_N", "seven", 1);
    CHECK(call({"grid", "euler", f}).code == 2);
    unsetenv("FLOERCALC_MAX_N");
    auto ok = call({"grid", "euler", fx("grids/trefoil5.json"), "--json"});
    REQUIRE(ok.code == 0);
    CHECK(ok.report()["result"]["match"] == true);
}

TEST_CASE("seeded verifier is deterministic") {
    auto a = call({"cone", "verify", "--seed", "11", "--trials", "30", "--max-dim", "12", "--json"}).report();
    auto b = call({"cone", "verify", "--seed", "11", "--trials", "30", "--max-dim", "12", "--json"}).report();
    CHECK(a["result"] == b["result"]);
    CHECK(a["input_digest"] == b["input_digest"]);
    CHECK(a["result"]["failures"] == 0);
}

TEST_CASE("diagram, legendrian and knot commands") {
    auto h = call({"diagram", "homology", fx("diagrams/s2s1_knot.json"), "--flavor", "knot-hat", "--json"});
    REQUIRE(h.code == 0);
    CHECK(h.report()["result"]["rank"] == 0);
    CHECK(call({"diagram", "homology", fx("diagrams/s2s1_knot.json"), "--flavor", "minus"}).code == 2);
    auto a = call({"diagram", "admissible", fx("diagrams/s2s1_parallel.json"), "--json"});
    CHECK(a.report()["result"]["weak"]["admissible"] == false);
    auto t = call({"diagram", "twist", fx("diagrams/twist_n2_base.json"), "--delta", fx("diagrams/twist_n2_delta.json"),
                   "--json"});
    REQUIRE(t.code == 0);
    CHECK(t.report()["result"]["blocks"]["ok"] == true);
    auto again = diagram::diagram_from_json(t.report()["result"]["twisted"]);
    CHECK(diagram::generators(again).size() == 3);

    auto li = call({"legendrian", "invariants", fx("fronts/L_m2.front"), "--json"});
    CHECK(li.report()["result"]["invariants"]["tb"] == -4);
    CHECK(li.report()["result"]["invariants"]["rot"] == 1);
    auto lv = call({"legendrian", "vanishing", fx("fronts/unknot.front"), "--hfk", fx("hfk/unknot.json"), "--json"});
    CHECK(lv.report()["result"]["verdict"] == "INCONCLUSIVE");

    auto k = call({"knot", "alexander", fx("knots/twist_m2.json"), "--json"});
    CHECK(k.report()["result"]["text"] == "-T + 3 - T^-1");
}

TEST_CASE("fixture corpus round-trips") {
    std::size_t seen = 0;
    for (const auto& e : fs::recursive_directory_iterator(kFix)) {
        if (!e.is_regular_file()) continue;
        auto p = e.path();
        auto rel = fs::relative(p, kFix).string();
        auto dir = rel.substr(0, rel.find('/'));
        CAPTURE(rel);
        if (p.extension() == ".front") {
            auto f = legendrian::parse_front(slurp(p));
            CHECK(legendrian::parse_front(legendrian::to_text(f)) == f);
            ++seen;
            continue;
        }
        if (p.extension() != ".json") continue;
        auto j = json::parse(slurp(p));
        if (dir == "diagrams") {
            auto d = diagram::diagram_from_json(j);
            CHECK(diagram::to_json(diagram::diagram_from_json(diagram::to_json(d))) == diagram::to_json(d));
        } else if (dir == "grids" || rel == "unknot2.json") {
            auto g = grid::grid_from_json(j);
            CHECK(grid::grid_from_json(grid::to_json(g)) == g);
        } else if (dir == "knots") {
            auto d = knot::diagram_from_json(j);
            CHECK(knot::diagram_from_json(knot::to_json(d)) == d);
        } else if (dir == "hfk") {
            auto r = ranks_from_json(j);
            CHECK(ranks_from_json(to_json(r)) == r);
        } else if (dir == "surgery" || rel == "convanish.json") {
            auto d = surgery::diagram_from_json(j, p.parent_path());
            CHECK(surgery::same_diagram(surgery::diagram_from_json(surgery::to_json(d)), d));
        } else {
            FAIL("fixture without a round-trip check: " << rel);
        }
        ++seen;
    }
    CHECK(seen > 50);
}
