#include "floer/surgery.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "floer/errors.hpp"

namespace floer::surgery {

namespace {

[[noreturn]] void invalid(const std::string& msg, nlohmann::json detail = nullptr) {
    throw DomainError("InvalidSurgeryDiagram", msg, std::move(detail));
}

legendrian::FrontDiagram read_front(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot open front file " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return legendrian::parse_front(ss.str());
}

bool is_pm_one(const Rational& r) { return r == Rational(1) || r == Rational(-1); }

bool destabilizable_witness(const Component& c, legendrian::ZigzagWitness& out) {
    for (const auto& f : {c.front, legendrian::reverse(c.front)}) {
        if (auto w = legendrian::detect_destabilizable(f)) {
            out = *w;
            return true;
        }
    }
    return false;
}

bool pair_rule_holds(const ContactSurgeryDiagram& d, std::size_t k, std::size_t kp) {
    const auto& K = d.components[k];
    if (k == kp || !K.unknotted || K.coeff != Rational(1) || d.components[kp].coeff != Rational(1)) return false;
    if (legendrian::classical_invariants(K.front).tb != -1) return false;
    if (std::llabs(d.linking[k][kp]) != 1) return false;
    for (std::size_t o = 0; o < d.components.size(); ++o)
        if (o != k && o != kp && d.linking[k][o] != 0) return false;
    return true;
}

const char* kUnknot = "open 0\nclose 0\n";
const char* kShark = "open 0\nopen 1\nclose 0\nclose 0\n";

} // namespace

Rational parse_coefficient(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    try {
        std::size_t used = 0;
        auto slash = t.find('/');
        long long num = std::stoll(t.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? t.size() : slash)) throw InputError("");
        long long den = 1;
        if (slash != std::string::npos) {
            auto rest = t.substr(slash + 1);
            den = std::stoll(rest, &used);
            if (used != rest.size() || rest.empty() || !std::isdigit(static_cast<unsigned char>(rest[0])))
                throw InputError("");
            if (den == 0) throw InputError("");
        }
        return Rational(num, den);
    } catch (const std::exception&) {
        throw InputError("bad contact coefficient '" + s + "'");
    }
}

std::string coefficient_string(const Rational& r) {
    std::string s = (r > 0 ? "+" : "") + std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

void validate(const ContactSurgeryDiagram& d) {
    auto n = d.components.size();
    if (d.linking.size() != n) invalid("linking matrix has the wrong size", {{"components", n}, {"rows", d.linking.size()}});
    for (std::size_t i = 0; i < n; ++i) {
        if (d.linking[i].size() != n) invalid("linking matrix is not square", {{"row", i}});
        if (d.components[i].coeff == Rational(0)) invalid("contact coefficient 0", {{"component", i}});
        if (d.linking[i][i] != 0) invalid("linking matrix diagonal must be 0", {{"row", i}});
        for (std::size_t j = 0; j < i; ++j)
            if (d.linking[i][j] != d.linking[j][i]) invalid("linking matrix is not symmetric", {{"row", i}, {"col", j}});
    }
}

ContactSurgeryDiagram diagram_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    ContactSurgeryDiagram d;
    try {
        for (const auto& c : j.at("components")) {
            Component comp;
            if (c.contains("front_text")) {
                comp.source = c.value("front", std::string("inline"));
                comp.front = legendrian::parse_front(c.at("front_text").get<std::string>());
            } else {
                comp.source = c.at("front").get<std::string>();
                comp.front = read_front(base_dir / comp.source);
            }
            const auto& co = c.at("coeff");
            comp.coeff = co.is_string() ? parse_coefficient(co.get<std::string>()) : Rational(co.get<long long>());
            comp.unknotted = c.value("unknotted", false);
            d.components.push_back(std::move(comp));
        }
        if (j.contains("linking")) {
            d.linking = j.at("linking").get<std::vector<std::vector<long long>>>();
        } else {
            d.linking.assign(d.components.size(), std::vector<long long>(d.components.size(), 0));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed surgery diagram JSON: ") + e.what());
    }
    validate(d);
    return d;
}

nlohmann::json to_json(const ContactSurgeryDiagram& d) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : d.components)
        comps.push_back({{"front", c.source},
                         {"front_text", legendrian::to_text(c.front)},
                         {"coeff", coefficient_string(c.coeff)},
                         {"unknotted", c.unknotted}});
    return {{"components", comps}, {"linking", d.linking}};
}

bool same_diagram(const ContactSurgeryDiagram& a, const ContactSurgeryDiagram& b) {
    if (a.components.size() != b.components.size() || a.linking != b.linking) return false;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        const auto& x = a.components[i];
        const auto& y = b.components[i];
        if (!(x.front == y.front) || x.coeff != y.coeff || x.unknotted != y.unknotted) return false;
    }
    return true;
}

long long smooth_framing(const Component& c) {
    if (c.coeff.denominator() != 1)
        throw DomainError("NonIntegerCoefficient", "smooth framing needs an integer contact coefficient",
                          {{"coeff", coefficient_string(c.coeff)}});
    return legendrian::classical_invariants(c.front).tb + c.coeff.numerator();
}

VanishingCertificate detect_vanishing(const ContactSurgeryDiagram& d) {
    validate(d);
    VanishingCertificate cert;
    for (std::size_t i = 0; i < d.components.size(); ++i)
        if (!is_pm_one(d.components[i].coeff))
            cert.notes.push_back("component " + std::to_string(i) + " has coefficient " +
                                 coefficient_string(d.components[i].coeff) + " and takes part in no rule");
    for (std::size_t i = 0; i < d.components.size(); ++i) {
        legendrian::ZigzagWitness w;
        if (d.components[i].coeff == Rational(1) && destabilizable_witness(d.components[i], w)) {
            cert.verdict = legendrian::Verdict::Vanishes;
            cert.rule = Rule::DestabilizablePlusOne;
            cert.witness = {i};
            cert.zigzag = w;
            return cert;
        }
    }
    for (std::size_t k = 0; k < d.components.size(); ++k) {
        for (std::size_t kp = 0; kp < d.components.size(); ++kp) {
            if (pair_rule_holds(d, k, kp)) {
                cert.verdict = legendrian::Verdict::Vanishes;
                cert.rule = Rule::ConvanishConfiguration;
                cert.witness = {k, kp};
                return cert;
            }
        }
    }
    return cert;
}

bool verify_certificate(const ContactSurgeryDiagram& d, const VanishingCertificate& c) {
    if (c.verdict == legendrian::Verdict::Inconclusive) return !c.rule && c.witness.empty();
    if (!c.rule) return false;
    for (auto i : c.witness)
        if (i >= d.components.size()) return false;
    if (*c.rule == Rule::DestabilizablePlusOne) {
        if (c.witness.size() != 1 || !c.zigzag) return false;
        const auto& comp = d.components[c.witness[0]];
        if (comp.coeff != Rational(1)) return false;
        auto f = comp.front;
        f.reversed = c.zigzag->reversed;
        for (const auto& z : legendrian::all_zigzags(f))
            if (z.event == c.zigzag->event) return true;
        return false;
    }
    return c.witness.size() == 2 && pair_rule_holds(d, c.witness[0], c.witness[1]);
}

ContactSurgeryDiagram disjoint_union(const ContactSurgeryDiagram& a, const ContactSurgeryDiagram& b) {
    ContactSurgeryDiagram u;
    u.components = a.components;
    u.components.insert(u.components.end(), b.components.begin(), b.components.end());
    auto n = u.components.size(), na = a.components.size();
    u.linking.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) u.linking[i][j] = a.linking[i][j];
    for (std::size_t i = 0; i < b.components.size(); ++i)
        for (std::size_t j = 0; j < b.components.size(); ++j) u.linking[na + i][na + j] = b.linking[i][j];
    return u;
}

ContactSurgeryDiagram remove_component(const ContactSurgeryDiagram& d, std::size_t i) {
    if (i >= d.components.size()) throw InputError("no component " + std::to_string(i));
    auto r = d;
    r.components.erase(r.components.begin() + static_cast<long>(i));
    r.linking.erase(r.linking.begin() + static_cast<long>(i));
    for (auto& row : r.linking) row.erase(row.begin() + static_cast<long>(i));
    return r;
}

ContactSurgeryDiagram overtwisted_s3_fixture() {
    ContactSurgeryDiagram d;
    d.components.push_back({"fronts/shark.front", legendrian::parse_front(kShark), Rational(1), true});
    d.components.push_back({"fronts/unknot.front", legendrian::parse_front(kUnknot), Rational(1), true});
    d.components.push_back({"fronts/unknot.front", legendrian::parse_front(kUnknot), Rational(-1), true});
    d.linking = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    return d;
}

std::string rule_name(Rule r) {
    return r == Rule::DestabilizablePlusOne ? "DestabilizablePlusOne" : "ConvanishConfiguration";
}

nlohmann::json to_json(const VanishingCertificate& c) {
    nlohmann::json j{{"verdict", c.verdict == legendrian::Verdict::Vanishes ? "VANISHES" : "INCONCLUSIVE"},
                     {"rule", c.rule ? nlohmann::json(rule_name(*c.rule)) : nlohmann::json(nullptr)},
                     {"witness", c.witness},
                     {"notes", c.notes}};
    j["zigzag"] = c.zigzag ? legendrian::to_json(*c.zigzag) : nlohmann::json(nullptr);
    return j;
}

} // namespace floer::surgery
