#include "floer/legendrian.hpp"

#include <map>
#include <sstream>

#include "floer/errors.hpp"

namespace floer::legendrian {

namespace {

[[noreturn]] void malformed(const std::string& msg, nlohmann::json detail = nullptr) {
    throw DomainError("MalformedFront", msg, std::move(detail));
}

enum End { NW, SW, SE, NE };

struct Passage {
    int event;
    bool over;
    int dir;  // +1 moving right
    End in, out;
};

struct Cusp {
    int event;
    bool down;
};

// Walk along the knot in the default orientation.
struct Trace {
    std::vector<int> counts;
    std::vector<Passage> passages;
    std::vector<Cusp> cusps;
    std::map<std::pair<int, int>, int> slot_dir; // (t, p) -> direction of travel
};

std::vector<int> checked_counts(const FrontDiagram& f) {
    std::vector<int> c{0};
    for (std::size_t t = 0; t < f.events.size(); ++t) {
        const auto& e = f.events[t];
        int k = c.back();
        int lim = e.kind == EventKind::Open ? k : k - 2;
        if (e.index < 0 || e.index > lim)
            malformed("event " + std::to_string(t) + " uses strand " + std::to_string(e.index) + " with " +
                          std::to_string(k) + " strands present",
                      {{"event", t}});
        c.push_back(e.kind == EventKind::Open ? k + 2 : e.kind == EventKind::Close ? k - 2 : k);
    }
    if (c.back() != 0) malformed("front does not close up", {{"strands_left", c.back()}});
    if (f.events.empty()) malformed("empty front");
    return c;
}

Trace trace(const FrontDiagram& f) {
    Trace tr;
    tr.counts = checked_counts(f);
    const auto& ev = f.events;
    int t = 1, p = ev[0].index, dir = 1;
    const std::pair<int, int> start{t, p};
    std::size_t guard = 0, total = 0;
    for (std::size_t k = 1; k + 1 < tr.counts.size(); ++k) total += static_cast<std::size_t>(tr.counts[k]);
    do {
        if (!tr.slot_dir.emplace(std::pair{t, p}, dir).second || ++guard > total) malformed("front does not trace");
        if (dir > 0) {
            const auto& e = ev[static_cast<std::size_t>(t)];
            int i = e.index;
            switch (e.kind) {
            case EventKind::Cross:
                if (p == i || p == i + 1) {
                    bool over = p == i;
                    tr.passages.push_back({t, over, 1, over ? NW : SW, over ? SE : NE});
                    p = over ? i + 1 : i;
                }
                ++t;
                break;
            case EventKind::Close:
                if (p == i || p == i + 1) {
                    tr.cusps.push_back({t, p == i});
                    p = p == i ? i + 1 : i;
                    dir = -1;
                } else {
                    p = p < i ? p : p - 2;
                    ++t;
                }
                break;
            case EventKind::Open:
                p = p < i ? p : p + 2;
                ++t;
                break;
            }
        } else {
            const auto& e = ev[static_cast<std::size_t>(t - 1)];
            int i = e.index;
            switch (e.kind) {
            case EventKind::Cross:
                if (p == i || p == i + 1) {
                    bool over = p == i + 1;
                    tr.passages.push_back({t - 1, over, -1, over ? SE : NE, over ? NW : SW});
                    p = p == i ? i + 1 : i;
                }
                --t;
                break;
            case EventKind::Open:
                if (p == i || p == i + 1) {
                    tr.cusps.push_back({t - 1, p == i});
                    p = p == i ? i + 1 : i;
                    dir = 1;
                } else {
                    p = p < i ? p : p - 2;
                    --t;
                }
                break;
            case EventKind::Close:
                p = p < i ? p : p + 2;
                --t;
                break;
            }
        }
    } while (std::pair{t, p} != start || dir != 1);
    if (tr.slot_dir.size() != total)
        malformed("front has more than one component", {{"traced_segments", tr.slot_dir.size()}, {"segments", total}});
    return tr;
}

int orient_sign(const FrontDiagram& f) { return f.reversed ? -1 : 1; }

} // namespace

std::vector<int> strand_counts(const FrontDiagram& f) { return checked_counts(f); }

void validate(const FrontDiagram& f) { trace(f); }

FrontDiagram parse_front(const std::string& text) {
    FrontDiagram f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string word, arg, extra;
        if (!(ls >> word)) continue;
        ls >> arg;
        if (ls >> extra) throw InputError("front line " + std::to_string(lineno) + ": trailing text");
        if (word == "orient") {
            if (arg != "reversed" && arg != "default")
                throw InputError("front line " + std::to_string(lineno) + ": orient takes 'default' or 'reversed'");
            f.reversed = arg == "reversed";
            continue;
        }
        Event e;
        if (word == "open") e.kind = EventKind::Open;
        else if (word == "close") e.kind = EventKind::Close;
        else if (word == "cross") e.kind = EventKind::Cross;
        else throw InputError("front line " + std::to_string(lineno) + ": unknown event '" + word + "'");
        std::size_t used = 0;
        try {
            e.index = std::stoi(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (arg.empty() || used != arg.size())
            throw InputError("front line " + std::to_string(lineno) + ": expected a strand index");
        f.events.push_back(e);
    }
    validate(f);
    return f;
}

std::string to_text(const FrontDiagram& f) {
    std::string s;
    if (f.reversed) s += "orient reversed\n";
    for (const auto& e : f.events) {
        s += e.kind == EventKind::Open ? "open " : e.kind == EventKind::Close ? "close " : "cross ";
        s += std::to_string(e.index) + "\n";
    }
    return s;
}

FrontDiagram reverse(const FrontDiagram& f) {
    auto r = f;
    r.reversed = !f.reversed;
    return r;
}

ClassicalInvariants classical_invariants(const FrontDiagram& f) {
    auto tr = trace(f);
    ClassicalInvariants ci;
    std::map<int, int> dirs; // crossing event -> product of directions
    for (const auto& p : tr.passages) {
        auto [it, fresh] = dirs.emplace(p.event, p.dir);
        if (!fresh) it->second *= p.dir;
    }
    // both strands moving the same way make a positive crossing; reversal keeps signs
    for (const auto& [_, s] : dirs) ci.writhe += s;
    ci.cusps = static_cast<int>(tr.cusps.size());
    for (const auto& c : tr.cusps) (c.down == !f.reversed ? ci.down_cusps : ci.up_cusps)++;
    ci.tb = ci.writhe - ci.cusps / 2;
    ci.rot = (ci.down_cusps - ci.up_cusps) / 2;
    return ci;
}

FrontDiagram stabilize(const FrontDiagram& f, int sign, std::optional<std::pair<int, int>> at) {
    if (sign != 1 && sign != -1) throw InputError("stabilization sign must be +1 or -1");
    auto tr = trace(f);
    auto slot = at.value_or(std::pair{1, f.events[0].index});
    auto it = tr.slot_dir.find(slot);
    if (it == tr.slot_dir.end())
        malformed("no strand segment to host the zigzag", {{"before", slot.first}, {"strand", slot.second}});
    int dir = it->second * orient_sign(f);
    auto [t, p] = slot;
    // open p+1 / close p drops the strand by two positions (down cusps moving right);
    // open p / close p+1 lifts it (up cusps moving right).
    bool lower = (sign > 0) == (dir > 0);
    std::vector<Event> zig = lower ? std::vector<Event>{{EventKind::Open, p + 1}, {EventKind::Close, p}}
                                   : std::vector<Event>{{EventKind::Open, p}, {EventKind::Close, p + 1}};
    auto g = f;
    g.events.insert(g.events.begin() + t, zig.begin(), zig.end());
    auto before = classical_invariants(f), after = classical_invariants(g);
    if (after.tb != before.tb - 1 || after.rot != before.rot + sign)
        throw std::logic_error("stabilization changed (tb, rot) by an unexpected amount");
    return g;
}

std::vector<ZigzagWitness> all_zigzags(const FrontDiagram& f) {
    auto tr = trace(f);
    std::map<int, bool> down;
    for (const auto& c : tr.cusps) down[c.event] = c.down == !f.reversed;
    std::vector<ZigzagWitness> out;
    for (std::size_t i = 0; i + 1 < f.events.size(); ++i) {
        const auto& a = f.events[i];
        const auto& b = f.events[i + 1];
        if (a.kind != EventKind::Open || b.kind != EventKind::Close || std::abs(a.index - b.index) != 1) continue;
        int li = static_cast<int>(i), ri = li + 1;
        if (down[li] != down[ri]) continue; // cannot happen for a zigzag; kept as a guard
        out.push_back({i, down[li] ? 1 : -1, f.reversed});
    }
    return out;
}

std::optional<ZigzagWitness> detect_destabilizable(const FrontDiagram& f) {
    auto z = all_zigzags(f);
    if (z.empty()) return std::nullopt;
    return z.front();
}

FrontDiagram destabilize(const FrontDiagram& f, const ZigzagWitness& w) {
    auto zs = all_zigzags(f);
    bool found = false;
    for (const auto& z : zs) found = found || z.event == w.event;
    if (!found) malformed("no zigzag at the witnessed position", {{"event", w.event}});
    auto g = f;
    g.events.erase(g.events.begin() + static_cast<long>(w.event), g.events.begin() + static_cast<long>(w.event) + 2);
    validate(g);
    return g;
}

knot::LinkDiagram to_pd(const FrontDiagram& f) {
    auto tr = trace(f);
    knot::LinkDiagram d;
    int m = static_cast<int>(tr.passages.size());
    if (m == 0) {
        d.free_loops = 1;
        return d;
    }
    std::map<int, std::array<int, 4>> ends; // crossing event -> label at each end
    std::map<int, int> under_in;
    for (int k = 0; k < m; ++k) {
        const auto& p = tr.passages[static_cast<std::size_t>(k)];
        int in = k == 0 ? m : k, out = k + 1;
        if (f.reversed) { // walking backwards visits the labels in decreasing order
            in = m + 1 - in;
            out = m + 1 - out;
        }
        auto& e = ends[p.event];
        e[p.in] = in;
        e[p.out] = out;
        if (!p.over) under_in[p.event] = f.reversed ? p.out : p.in;
    }
    for (const auto& [ev, e] : ends) {
        if (under_in.at(ev) == SW) d.pd.push_back({e[SW], e[SE], e[NE], e[NW]});
        else d.pd.push_back({e[NE], e[NW], e[SW], e[SE]});
    }
    return d;
}

LossGradings loss_gradings(const ClassicalInvariants& ci) {
    LossGradings g;
    g.twice_alexander = ci.tb - ci.rot + 1;
    g.maslov = g.twice_alexander;
    return g;
}

LossReport loss_vanishing_report(const FrontDiagram& f, const BigradedRanks& hfk) {
    LossReport r;
    r.invariants = classical_invariants(f);
    r.gradings = loss_gradings(r.invariants);
    // the syntactic witness does not depend on the table, so it is preferred
    for (const auto& g : {f, reverse(f)}) {
        for (const auto& z : all_zigzags(g)) {
            if (z.sign > 0 && !r.witness) r.witness = z;
        }
    }
    if (r.witness) r.reasons.push_back("PositiveStabilization");
    if (r.gradings.alexander_integral()) {
        r.rank_at_gradings = hfk.at(r.gradings.twice_alexander / 2, r.gradings.maslov);
        if (r.rank_at_gradings == 0) r.reasons.push_back("ZeroGroup");
    }
    if (!r.reasons.empty()) {
        r.verdict = Verdict::Vanishes;
        r.reason = r.reasons.front();
    }
    return r;
}

nlohmann::json to_json(const ClassicalInvariants& ci) {
    return {{"tb", ci.tb},         {"rot", ci.rot},
            {"writhe", ci.writhe}, {"cusps", ci.cusps},
            {"down_cusps", ci.down_cusps}, {"up_cusps", ci.up_cusps}};
}

nlohmann::json to_json(const LossGradings& g) {
    nlohmann::json j{{"twice_alexander", g.twice_alexander}, {"maslov", g.maslov}};
    if (g.alexander_integral()) j["alexander"] = g.twice_alexander / 2;
    else j["alexander"] = g.twice_alexander / 2.0;
    return j;
}

nlohmann::json to_json(const ZigzagWitness& w) {
    return {{"event", w.event}, {"sign", w.sign > 0 ? "+" : "-"}, {"orientation", w.reversed ? "reversed" : "default"}};
}

nlohmann::json to_json(const LossReport& r) {
    nlohmann::json j{{"verdict", r.verdict == Verdict::Vanishes ? "VANISHES" : "INCONCLUSIVE"},
                     {"invariants", to_json(r.invariants)},
                     {"gradings", to_json(r.gradings)},
                     {"rank_at_gradings", r.rank_at_gradings}};
    j["reason"] = r.reason.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.reason);
    j["reasons"] = r.reasons;
    j["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json(nullptr);
    return j;
}

} // namespace floer::legendrian
