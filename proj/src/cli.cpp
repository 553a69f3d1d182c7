#include "floer/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "floer/cone.hpp"
#include "floer/diagram.hpp"
#include "floer/errors.hpp"
#include "floer/grid.hpp"
#include "floer/knot.hpp"
#include "floer/legendrian.hpp"
#include "floer/surgery.hpp"

namespace floer::cli {

namespace {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream s;
    for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return s.str();
}

// Inputs read by a command, digested in the order they were opened.
struct Inputs {
    std::vector<std::pair<std::string, std::string>> files; // path, sha256

    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        files.emplace_back(path, sha256_hex(ss.str()));
        return ss.str();
    }

    json read_json(const std::string& path) {
        auto text = read(path);
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw InputError(path + ": " + e.what());
        }
    }

    // Commands without input files digest their argument list instead.
    json digest(const std::string& command) const {
        if (files.empty()) return "sha256:" + sha256_hex(command);
        std::string all;
        for (const auto& [p, h] : files) all += h;
        return "sha256:" + (files.size() == 1 ? files[0].second : sha256_hex(all));
    }
};

struct Outcome {
    json result;
    std::string summary; // plain-text rendering
};

std::string ranks_text(const BigradedRanks& r) {
    std::ostringstream s;
    for (const auto& [am, n] : r.ranks)
        if (n) s << "  (A, M) = (" << am.first << ", " << am.second << "): " << n << "\n";
    return s.str();
}

int grid_limit(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("FLOERCALC_MAX_N")) {
        try {
            std::size_t used = 0;
            int v = std::stoi(env, &used);
            if (used == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("FLOERCALC_MAX_N must be a positive integer, got '") + env + "'");
    }
    return 8;
}

diagram::Flavor parse_flavor(const std::string& s) {
    if (s == "hat") return diagram::Flavor::Hat;
    if (s == "knot-hat") return diagram::Flavor::KnotHat;
    throw InputError("flavor must be hat or knot-hat");
}

json admissibility_json(const diagram::AdmissibilityReport& r) {
    json j{{"admissible", r.admissible}, {"lattice_rank", r.lattice_rank}};
    j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
    return j;
}

Outcome cone_verify(std::uint64_t seed, int trials, int max_dim) {
    if (trials < 0 || max_dim < 0) throw InputError("trials and max-dim must be nonnegative");
    std::mt19937_64 rng(seed);
    json failures = json::array();
    std::size_t checked = 0;
    for (int t = 0; t < trials; ++t) {
        auto C = cone::random_complex(rng, static_cast<std::size_t>(max_dim));
        auto D = cone::random_complex(rng, static_cast<std::size_t>(max_dim));
        auto f = cone::random_chain_map(rng, D, C);
        for (auto o : {cone::Orientation::MapIntoFirst, cone::Orientation::MapIntoSecond}) {
            auto rep = cone::les_verify(f, o);
            ++checked;
            if (!rep.all_exact() && failures.size() < 5) failures.push_back({{"trial", t}, {"report", cone::to_json(rep)}});
        }
    }
    json res{{"seed", seed}, {"trials", trials}, {"max_dim", max_dim}, {"sequences_checked", checked},
             {"failures", failures.size()}, {"failure_examples", failures}};
    if (!failures.empty()) throw DomainError("LESViolation", "long exact sequence check failed", res);
    return {res, "cone verify: " + std::to_string(checked) + " long exact sequences exact (seed " +
                     std::to_string(seed) + ")\n"};
}

Outcome diagram_homology(Inputs& in, const std::string& file, const std::string& flavor) {
    auto d = diagram::diagram_from_json(in.read_json(file));
    auto c = diagram::nice_differential(d, parse_flavor(flavor));
    auto h = gf2::homology(c.complex);
    json gens = json::array();
    for (const auto& x : c.generators) gens.push_back(diagram::generator_name(d, x));
    auto rank = gf2::total_rank(h);
    json res{{"flavor", flavor}, {"generators", gens}, {"differential_nonzeros", c.complex.differential.nnz()},
             {"rank", rank}};
    return {res, "diagram homology (" + flavor + "): " + std::to_string(c.generators.size()) + " generators, rank " +
                     std::to_string(rank) + "\n"};
}

Outcome diagram_admissible(Inputs& in, const std::string& file) {
    auto d = diagram::diagram_from_json(in.read_json(file));
    auto weak = diagram::check_admissibility(d, diagram::AdmissibilityMode::WeakAllSpinc);
    auto ext = diagram::check_admissibility(d, diagram::AdmissibilityMode::ExtremelyWeakConservative);
    json res{{"weak", admissibility_json(weak)}, {"extremely_weak", admissibility_json(ext)}};
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    return {res, "weakly admissible: " + yn(weak.admissible) + "\nextremely weakly admissible: " + yn(ext.admissible) + "\n"};
}

Outcome diagram_twist(Inputs& in, const std::string& base, const std::string& delta) {
    auto b = diagram::diagram_from_json(in.read_json(base));
    auto r = diagram::diagram_from_json(in.read_json(delta));
    auto t = diagram::dehn_twist_beta1(b, r);
    auto rep = diagram::block_triangularity_check(t);
    json res{{"beta1", t.beta1},
             {"crossing", t.crossing},
             {"delta_reversed", t.delta_reversed},
             {"twisted", diagram::to_json(t.twisted)},
             {"generators", {{"twisted", diagram::generators(t.twisted).size()},
                             {"alpha_beta", diagram::generators(t.alpha_beta).size()},
                             {"alpha_delta", diagram::generators(t.alpha_delta).size()}}},
             {"blocks", diagram::to_json(rep)}};
    return {res, "twisted along " + t.beta1 + " at " + t.crossing + ": block triangular " +
                     (rep.ok() ? "yes" : "no") + ", twisted rank " + std::to_string(rep.twisted_rank) + ", cone rank " +
                     std::to_string(rep.cone_rank) + "\n"};
}

grid::GridDiagram load_grid(Inputs& in, const std::string& file) { return grid::grid_from_json(in.read_json(file)); }

Outcome grid_hfk(Inputs& in, const std::string& file, int max_n) {
    auto g = load_grid(in, file);
    grid::GridOptions opt{grid_limit(max_n)};
    auto h = grid::hfk_hat(g, opt);
    json res{{"n", g.n}, {"max_n", opt.max_n}, {"ranks", to_json(h)}, {"total_rank", h.total()}};
    return {res, "HFK-hat (n = " + std::to_string(g.n) + "), total rank " + std::to_string(h.total()) + "\n" + ranks_text(h)};
}

Outcome grid_euler(Inputs& in, const std::string& file, int max_n) {
    auto g = load_grid(in, file);
    grid::GridOptions opt{grid_limit(max_n)};
    auto chi = grid::hfk_hat(g, opt).euler_characteristic();
    auto delta = knot::alexander_conway(grid::to_pd(g));
    json res{{"n", g.n}, {"euler_characteristic", to_json(chi)}, {"alexander", to_json(delta)}, {"match", chi == delta}};
    return {res, "graded Euler characteristic: " + chi.to_string() + "\nAlexander polynomial: " + delta.to_string() +
                     "\nmatch: " + (chi == delta ? "yes" : "no") + "\n"};
}

knot::LinkDiagram load_knot(Inputs& in, const std::string& file, bool mirror) {
    auto d = knot::diagram_from_json(in.read_json(file));
    return mirror ? knot::mirror(d) : d;
}

Outcome knot_command(Inputs& in, const std::string& what, const std::string& file, bool mirror) {
    auto d = load_knot(in, file, mirror);
    json res{{"mirror", mirror}, {"crossings", d.pd.size()}};
    if (what == "alexander") {
        auto a = knot::alexander_conway(d);
        res["alexander"] = to_json(a);
        res["text"] = a.to_string();
        return {res, "Alexander polynomial: " + a.to_string() + "\n"};
    }
    if (what == "signature") {
        int s = knot::signature(d);
        res["signature"] = s;
        return {res, "signature: " + std::to_string(s) + "\n"};
    }
    auto a = knot::alexander_conway(d);
    int s = knot::signature(d);
    auto h = knot::alternating_hfk(a, s);
    res["alexander"] = to_json(a);
    res["signature"] = s;
    res["ranks"] = to_json(h);
    return {res, "HFK-hat from the alternating-knot formula (sigma = " + std::to_string(s) + ")\n" + ranks_text(h)};
}

Outcome legendrian_invariants(Inputs& in, const std::string& file) {
    auto f = legendrian::parse_front(in.read(file));
    auto ci = legendrian::classical_invariants(f);
    auto g = legendrian::loss_gradings(ci);
    json zz = json::array();
    for (const auto& z : legendrian::all_zigzags(f)) zz.push_back(legendrian::to_json(z));
    json res{{"invariants", legendrian::to_json(ci)}, {"gradings", legendrian::to_json(g)}, {"zigzags", zz},
             {"events", f.events.size()}};
    return {res, "tb = " + std::to_string(ci.tb) + ", rot = " + std::to_string(ci.rot) + "\n2A = " +
                     std::to_string(g.twice_alexander) + ", M = " + std::to_string(g.maslov) + "\n"};
}

Outcome legendrian_vanishing(Inputs& in, const std::string& file, const std::string& table) {
    auto f = legendrian::parse_front(in.read(file));
    auto h = ranks_from_json(in.read_json(table));
    auto r = legendrian::loss_vanishing_report(f, h);
    auto j = legendrian::to_json(r);
    std::string verdict = j["verdict"];
    return {j, verdict + (r.reason.empty() ? "" : " (" + r.reason + ")") + "\n"};
}

Outcome surgery_check(Inputs& in, const std::string& file) {
    auto j = in.read_json(file);
    auto d = surgery::diagram_from_json(j, std::filesystem::path(file).parent_path());
    auto c = surgery::detect_vanishing(d);
    json comps = json::array();
    for (const auto& comp : d.components) {
        auto ci = legendrian::classical_invariants(comp.front);
        json cj{{"front", comp.source}, {"coeff", surgery::coefficient_string(comp.coeff)}, {"tb", ci.tb},
                {"rot", ci.rot}, {"unknotted", comp.unknotted}};
        cj["smooth_framing"] = comp.coeff.denominator() == 1 ? json(surgery::smooth_framing(comp)) : json(nullptr);
        comps.push_back(cj);
    }
    auto cert = surgery::to_json(c);
    cert["verified"] = surgery::verify_certificate(d, c);
    json res{{"certificate", cert}, {"components", comps}};
    std::string line = cert["verdict"].get<std::string>();
    if (c.rule) line += " (" + surgery::rule_name(*c.rule) + ")";
    return {res, line + "\n"};
}

json error_json(const std::string& kind, const std::string& code, const std::string& msg, const json& detail) {
    return {{"kind", kind}, {"code", code}, {"message", msg}, {"detail", detail}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heegaard Floer and Legendrian knot calculator", "floercalc"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit a JSON report");

    std::string file, second, flavor = "hat";
    std::uint64_t seed = 1;
    int trials = 200, max_dim = 20, max_n = 0;
    bool mirror = false;
    std::function<Outcome(Inputs&)> action;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    auto group = [&](const std::string& name, const std::string& help) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };

    auto* cone_g = group("cone", "mapping cones over GF(2)");
    auto* cone_v = leaf(cone_g, "verify", "check the long exact sequence on random chain maps");
    cone_v->add_option("--seed", seed, "random seed");
    cone_v->add_option("--trials", trials, "number of random chain maps");
    cone_v->add_option("--max-dim", max_dim, "largest complex dimension");
    cone_v->callback([&] { action = [&](Inputs&) { return cone_verify(seed, trials, max_dim); }; });

    auto* dia_g = group("diagram", "combinatorial Heegaard diagrams");
    auto* dia_h = leaf(dia_g, "homology", "nice-diagram homology");
    dia_h->add_option("file", file)->required();
    dia_h->add_option("--flavor", flavor, "hat or knot-hat");
    dia_h->callback([&] { action = [&](Inputs& in) { return diagram_homology(in, file, flavor); }; });
    auto* dia_a = leaf(dia_g, "admissible", "admissibility of the periodic domains");
    dia_a->add_option("file", file)->required();
    dia_a->callback([&] { action = [&](Inputs& in) { return diagram_admissible(in, file); }; });
    auto* dia_t = leaf(dia_g, "twist", "Dehn twist of the first beta curve along delta");
    dia_t->add_option("file", file, "base diagram")->required();
    dia_t->add_option("--delta", second, "base diagram with delta drawn in")->required();
    dia_t->callback([&] { action = [&](Inputs& in) { return diagram_twist(in, file, second); }; });

    auto* grid_g = group("grid", "grid diagrams");
    auto* grid_h = leaf(grid_g, "hfk", "knot Floer homology of a grid");
    grid_h->add_option("file", file)->required();
    grid_h->add_option("--max-n", max_n, "grid size limit (default: FLOERCALC_MAX_N or 8)");
    grid_h->callback([&] { action = [&](Inputs& in) { return grid_hfk(in, file, max_n); }; });
    auto* grid_e = leaf(grid_g, "euler", "graded Euler characteristic against the Alexander polynomial");
    grid_e->add_option("file", file)->required();
    grid_e->add_option("--max-n", max_n, "grid size limit (default: FLOERCALC_MAX_N or 8)");
    grid_e->callback([&] { action = [&](Inputs& in) { return grid_euler(in, file, max_n); }; });

    auto* knot_g = group("knot", "planar diagram invariants");
    for (const char* what : {"alexander", "signature", "alternating-hfk"}) {
        auto* k = leaf(knot_g, what, std::string(what) + " of a PD code");
        k->add_option("file", file)->required();
        k->add_flag("--mirror", mirror, "use the mirror knot");
        std::string w = what;
        k->callback([&, w] { action = [&, w](Inputs& in) { return knot_command(in, w, file, mirror); }; });
    }

    auto* leg_g = group("legendrian", "Legendrian fronts");
    auto* leg_i = leaf(leg_g, "invariants", "tb, rot and LOSS gradings");
    leg_i->add_option("file", file)->required();
    leg_i->callback([&] { action = [&](Inputs& in) { return legendrian_invariants(in, file); }; });
    auto* leg_v = leaf(leg_g, "vanishing", "vanishing certificate for the LOSS invariant");
    leg_v->add_option("file", file)->required();
    leg_v->add_option("--hfk", second, "rank table of HFK-hat of the mirror")->required();
    leg_v->callback([&] { action = [&](Inputs& in) { return legendrian_vanishing(in, file, second); }; });

    auto* sur_g = group("surgery", "contact surgery diagrams");
    auto* sur_c = leaf(sur_g, "check", "vanishing rules for the contact element");
    sur_c->add_option("file", file)->required();
    sur_c->callback([&] { action = [&](Inputs& in) { return surgery_check(in, file); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    json report{{"command", "floercalc"}};
    for (const auto& a : args) report["command"] = report["command"].get<std::string>() + " " + a;
    try {
        app.parse(rev);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        report["status"] = "error";
        report["error"] = error_json("InputError", "Usage", e.what(), nullptr);
        if (as_json) out << report.dump(2) << "\n";
        return 2;
    }

    Inputs inputs;
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    int code = 0;
    std::string text;
    try {
        auto o = action(inputs);
        report["status"] = "ok";
        report["result"] = o.result;
        text = o.summary;
    } catch (const DomainError& e) {
        code = 1;
        report["status"] = "error";
        report["error"] = error_json("DomainError", e.code(), e.what(), e.detail());
    } catch (const InputError& e) {
        code = 2;
        report["status"] = "error";
        report["error"] = error_json("InputError", "MalformedInput", e.what(), nullptr);
    }
    report["input_digest"] = inputs.digest(report["command"].get<std::string>());
    json files = json::array();
    for (const auto& [p, h] : inputs.files) files.push_back({{"path", p}, {"sha256", h}});
    report["inputs"] = files;
    report["timing_ms"] = elapsed();

    if (as_json || code == 1) {
        out << report.dump(2) << "\n";
    } else if (code == 0) {
        out << text;
        out << "input " << report["input_digest"].get<std::string>()
            << ", " << std::fixed << std::setprecision(1) << report["timing_ms"].get<double>() << " ms\n";
    }
    if (code == 2) err << "floercalc: " << report["error"]["message"].get<std::string>() << "\n";
    if (code == 1 && !as_json) err << "floercalc: " << report["error"]["code"].get<std::string>() << ": "
                                   << report["error"]["message"].get<std::string>() << "\n";
    return code;
}

} // namespace floer::cli
