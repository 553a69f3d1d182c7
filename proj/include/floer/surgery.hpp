#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "floer/legendrian.hpp"

namespace floer::surgery {

using Rational = boost::rational<long long>;

struct Component {
    std::string source;  // where the front came from (file name or a label); not compared
    legendrian::FrontDiagram front;
    Rational coeff{1};   // contact surgery coefficient, nonzero
    bool unknotted = false; // trusted input flag
};

struct ContactSurgeryDiagram {
    std::vector<Component> components;
    std::vector<std::vector<long long>> linking; // symmetric, zero diagonal
};

bool same_diagram(const ContactSurgeryDiagram& a, const ContactSurgeryDiagram& b);

// {"components": [{"front": "file", "coeff": "+1", "unknotted": true}], "linking": [[...]]}.
// Front files are resolved against base_dir; "front_text" may hold the front inline.
// InputError on malformed data, DomainError("InvalidSurgeryDiagram") on a zero coefficient
// or a linking matrix that is not symmetric with zero diagonal.
ContactSurgeryDiagram diagram_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");
// Fronts are written inline so the result stands alone.
nlohmann::json to_json(const ContactSurgeryDiagram& d);
void validate(const ContactSurgeryDiagram& d);

Rational parse_coefficient(const std::string& s); // "+1", "-1", "3", "1/2"
std::string coefficient_string(const Rational& r);

// tb + contact coefficient; DomainError("NonIntegerCoefficient") otherwise.
long long smooth_framing(const Component& c);

enum class Rule { DestabilizablePlusOne, ConvanishConfiguration };

struct VanishingCertificate {
    legendrian::Verdict verdict = legendrian::Verdict::Inconclusive;
    std::optional<Rule> rule;
    std::vector<std::size_t> witness;              // component indices (K, then K' for the pair rule)
    std::optional<legendrian::ZigzagWitness> zigzag; // for the destabilization rule
    std::vector<std::string> notes;
};

VanishingCertificate detect_vanishing(const ContactSurgeryDiagram& d);

// Re-checks the per-component predicates named by a certificate.
bool verify_certificate(const ContactSurgeryDiagram& d, const VanishingCertificate& c);

// Unlinked union.
ContactSurgeryDiagram disjoint_union(const ContactSurgeryDiagram& a, const ContactSurgeryDiagram& b);
ContactSurgeryDiagram remove_component(const ContactSurgeryDiagram& d, std::size_t i);

// Overtwisted S^3: a shark with +1 unlinked from a +1 unknot (tb -1) that links a -1 unknot.
ContactSurgeryDiagram overtwisted_s3_fixture();

nlohmann::json to_json(const VanishingCertificate& c);
std::string rule_name(Rule r);

} // namespace floer::surgery
