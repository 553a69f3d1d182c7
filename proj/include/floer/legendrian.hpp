#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floer/bigraded.hpp"
#include "floer/knot.hpp"

namespace floer::legendrian {

// Front of a Legendrian knot read left to right. Strands are numbered 0.. from the top.
//   open i   a left cusp inserts two strands at positions i, i+1
//   close i  a right cusp joins strands i and i+1
//   cross i  strands i and i+1 cross; the one moving down (smaller slope) is in front
enum class EventKind { Open, Close, Cross };

struct Event {
    EventKind kind = EventKind::Open;
    int index = 0;
    bool operator==(const Event&) const = default;
};

// Default orientation leaves the first left cusp along its upper strand; reversed flips it.
struct FrontDiagram {
    std::vector<Event> events;
    bool reversed = false;
    bool operator==(const FrontDiagram&) const = default;
};

// Text form: one event per line ("open 2", "cross 3", "close 1"), '#' comments, and an
// optional line "orient reversed". InputError on syntax, DomainError("MalformedFront") on
// strand bookkeeping or more than one component.
FrontDiagram parse_front(const std::string& text);
std::string to_text(const FrontDiagram& f);
void validate(const FrontDiagram& f);

FrontDiagram reverse(const FrontDiagram& f);

struct ClassicalInvariants {
    int tb = 0;
    int rot = 0;
    int writhe = 0;
    int cusps = 0;
    int down_cusps = 0, up_cusps = 0;
};

ClassicalInvariants classical_invariants(const FrontDiagram& f);

// Strand counts between events: counts[t] strands sit between event t-1 and event t.
std::vector<int> strand_counts(const FrontDiagram& f);

// Inserts a zigzag on strand `strand` right before event `before` (default: the first
// strand segment). sign +1 adds two down cusps (rot + 1), -1 two up cusps.
FrontDiagram stabilize(const FrontDiagram& f, int sign, std::optional<std::pair<int, int>> at = std::nullopt);

struct ZigzagWitness {
    std::size_t event = 0; // index of the left cusp; the right cusp follows it
    int sign = 0;          // +1 if both cusps are traversed downwards
    bool reversed = false; // orientation of the front the sign refers to
};

// A left cusp immediately followed by a right cusp on the adjacent pair of strands that
// shares one of its strands. Sound, not complete.
std::optional<ZigzagWitness> detect_destabilizable(const FrontDiagram& f);
std::vector<ZigzagWitness> all_zigzags(const FrontDiagram& f);
FrontDiagram destabilize(const FrontDiagram& f, const ZigzagWitness& w);

// The underlying smooth knot as a PD code (oriented as the front).
knot::LinkDiagram to_pd(const FrontDiagram& f);

// Twice the Alexander grading, and the Maslov grading M = 2A (d3 = 0 in the standard S^3).
struct LossGradings {
    int twice_alexander = 0;
    int maslov = 0;
    bool alexander_integral() const { return twice_alexander % 2 == 0; }
};

LossGradings loss_gradings(const ClassicalInvariants& ci);

enum class Verdict { Vanishes, Inconclusive };

struct LossReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;               // primary reason, empty when inconclusive
    std::vector<std::string> reasons; // every rule that applies
    ClassicalInvariants invariants;
    LossGradings gradings;
    std::size_t rank_at_gradings = 0;
    std::optional<ZigzagWitness> witness;
};

// hfk: ranks of HFK-hat(S^3, mirror of K) indexed by (A, M).
LossReport loss_vanishing_report(const FrontDiagram& f, const BigradedRanks& hfk);

nlohmann::json to_json(const ClassicalInvariants& ci);
nlohmann::json to_json(const LossGradings& g);
nlohmann::json to_json(const ZigzagWitness& w);
nlohmann::json to_json(const LossReport& r);

} // namespace floer::legendrian
