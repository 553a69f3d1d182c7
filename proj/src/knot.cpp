#include "floer/knot.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>
#include <set>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "floer/errors.hpp"

namespace floer::knot {

namespace {

using Rational = boost::multiprecision::cpp_rational;

[[noreturn]] void invalid(const std::string& msg, nlohmann::json detail = nullptr) {
    throw DomainError("NotAKnotOrLink", msg, std::move(detail));
}

} // namespace

LinkDiagram diagram_from_json(const nlohmann::json& j) {
    LinkDiagram d;
    try {
        const auto& pd = j.at("pd");
        if (pd.is_string()) {
            static const std::regex cross(R"(X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\])");
            const auto text = pd.get<std::string>();
            std::string rest = text;
            for (std::sregex_iterator it(text.begin(), text.end(), cross), end; it != end; ++it) {
                d.pd.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), std::stoi((*it)[3]), std::stoi((*it)[4])});
            }
            std::string stripped = std::regex_replace(text, cross, "");
            if (stripped.find_first_not_of(" ,\t\n") != std::string::npos)
                throw InputError("unrecognized text in PD string: " + stripped);
        } else {
            for (const auto& c : pd) {
                if (c.size() != 4) throw InputError("PD crossing must have 4 labels");
                d.pd.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>(), c[3].get<int>()});
            }
        }
        d.free_loops = j.value("free_loops", 0);
        if (j.contains("successors"))
            for (const auto& h : j.at("successors")) d.successors.push_back({h.at(0).get<int>(), h.at(1).get<int>()});
        if (d.free_loops < 0) throw InputError("free_loops must be non-negative");
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed PD JSON: ") + e.what());
    }
    return d;
}

nlohmann::json to_json(const LinkDiagram& d) {
    nlohmann::json pd = nlohmann::json::array();
    for (const auto& c : d.pd) pd.push_back({c[0], c[1], c[2], c[3]});
    nlohmann::json j = {{"pd", pd}};
    if (d.free_loops) j["free_loops"] = d.free_loops;
    if (!d.successors.empty()) j["successors"] = d.successors;
    return j;
}

int OrientedDiagram::components() const {
    std::vector<bool> seen(static_cast<std::size_t>(edge_count), false);
    int comps = free_loops;
    for (int e = 0; e < edge_count; ++e) {
        if (seen[static_cast<std::size_t>(e)]) continue;
        ++comps;
        int cur = e;
        while (!seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = true;
            auto [c, s] = head[static_cast<std::size_t>(cur)];
            cur = crossings[static_cast<std::size_t>(c)].edge[static_cast<std::size_t>((s + 2) % 4)];
        }
    }
    return comps;
}

int OrientedDiagram::writhe() const {
    int w = 0;
    for (const auto& c : crossings) w += c.sign;
    return w;
}

OrientedDiagram orient(const LinkDiagram& d) {
    OrientedDiagram od;
    od.free_loops = d.free_loops;
    if (d.pd.empty()) {
        if (od.free_loops == 0) od.free_loops = 1;
        return od;
    }
    std::map<int, int> index;
    std::map<int, int> count;
    for (const auto& c : d.pd)
        for (int l : c) ++count[l];
    for (auto [l, k] : count) {
        if (k != 2) invalid("edge label " + std::to_string(l) + " appears " + std::to_string(k) + " times");
        index[l] = static_cast<int>(index.size());
    }
    const int n = static_cast<int>(d.pd.size());
    od.edge_count = static_cast<int>(index.size());
    std::vector<std::vector<std::array<int, 2>>> ends(static_cast<std::size_t>(od.edge_count));
    od.crossings.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) {
            int e = index[d.pd[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)]];
            od.crossings[static_cast<std::size_t>(c)].edge[static_cast<std::size_t>(s)] = e;
            ends[static_cast<std::size_t>(e)].push_back({c, s});
        }

    // dir: 0 unknown, 1 edge enters the crossing at this slot, 2 edge leaves.
    std::vector<std::array<int, 4>> dir(static_cast<std::size_t>(n), {0, 0, 0, 0});
    std::deque<std::array<int, 2>> queue;
    auto assign = [&](int c, int s, int v) {
        int& cur = dir[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)];
        if (cur == v) return;
        if (cur != 0) invalid("inconsistent orientation at crossing " + std::to_string(c));
        cur = v;
        queue.push_back({c, s});
    };
    auto propagate = [&]() {
        while (!queue.empty()) {
            auto [c, s] = queue.front();
            queue.pop_front();
            int v = dir[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)];
            assign(c, (s + 2) % 4, 3 - v);
            int e = od.crossings[static_cast<std::size_t>(c)].edge[static_cast<std::size_t>(s)];
            for (auto [c2, s2] : ends[static_cast<std::size_t>(e)])
                if (c2 != c || s2 != s) assign(c2, s2, 3 - v);
        }
    };
    for (int c = 0; c < n; ++c) {
        assign(c, 0, 1);
        assign(c, 2, 2);
    }
    propagate();
    // Over-only components: use the successor hints, else the label order b -> d when d = b + 1.
    std::set<std::array<int, 2>> hints(d.successors.begin(), d.successors.end());
    for (int c = 0; c < n; ++c) {
        if (dir[static_cast<std::size_t>(c)][1] != 0) continue;
        int b = d.pd[static_cast<std::size_t>(c)][1], dd = d.pd[static_cast<std::size_t>(c)][3];
        bool b_to_d;
        if (hints.count({b, dd})) b_to_d = true;
        else if (hints.count({dd, b})) b_to_d = false;
        else b_to_d = (dd == b + 1) || (b != dd + 1 && b > dd);
        assign(c, b_to_d ? 1 : 3, 1);
        propagate();
    }

    od.tail.assign(static_cast<std::size_t>(od.edge_count), {-1, -1});
    od.head.assign(static_cast<std::size_t>(od.edge_count), {-1, -1});
    for (int c = 0; c < n; ++c) {
        auto& x = od.crossings[static_cast<std::size_t>(c)];
        for (int s = 0; s < 4; ++s) {
            int e = x.edge[static_cast<std::size_t>(s)];
            if (dir[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] == 1) od.head[static_cast<std::size_t>(e)] = {c, s};
            else od.tail[static_cast<std::size_t>(e)] = {c, s};
        }
        x.over_in = dir[static_cast<std::size_t>(c)][1] == 1 ? 1 : 3;
        x.sign = x.over_in == 3 ? 1 : -1;
    }
    for (int e = 0; e < od.edge_count; ++e)
        if (od.head[static_cast<std::size_t>(e)][0] < 0 || od.tail[static_cast<std::size_t>(e)][0] < 0)
            invalid("edge does not run from one crossing end to another");
    return od;
}

namespace {

// (in, out) labels of the strand that is over at crossing c after an optional crossing change.
std::array<int, 2> over_pair(const LinkDiagram& d, const OrientedDiagram& od, std::size_t c, bool switched) {
    const auto& x = d.pd[c];
    if (switched) return {x[0], x[2]};
    auto o = static_cast<std::size_t>(od.crossings[c].over_in);
    return {x[o], x[(o + 2) % 4]};
}

} // namespace

LinkDiagram mirror(const LinkDiagram& d) {
    OrientedDiagram od = orient(d);
    LinkDiagram m;
    m.free_loops = d.free_loops;
    for (std::size_t c = 0; c < d.pd.size(); ++c) {
        const auto& x = d.pd[c];
        // The old over-strand becomes the under-strand; start at its incoming slot.
        int o = od.crossings[c].over_in;
        m.pd.push_back({x[static_cast<std::size_t>(o)], x[static_cast<std::size_t>((o + 1) % 4)],
                        x[static_cast<std::size_t>((o + 2) % 4)], x[static_cast<std::size_t>((o + 3) % 4)]});
        m.successors.push_back(over_pair(d, od, c, true));
    }
    return m;
}

LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t c) {
    if (c >= d.pd.size()) throw std::out_of_range("crossing index");
    OrientedDiagram od = orient(d);
    LinkDiagram r = d;
    const auto& x = d.pd[c];
    int o = od.crossings[c].over_in;
    r.pd[c] = {x[static_cast<std::size_t>(o)], x[static_cast<std::size_t>((o + 1) % 4)],
               x[static_cast<std::size_t>((o + 2) % 4)], x[static_cast<std::size_t>((o + 3) % 4)]};
    r.successors.clear();
    for (std::size_t i = 0; i < d.pd.size(); ++i) r.successors.push_back(over_pair(d, od, i, i == c));
    return r;
}

LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t c) {
    if (c >= d.pd.size()) throw std::out_of_range("crossing index");
    OrientedDiagram od = orient(d);
    const auto& x = d.pd[c];
    auto o = static_cast<std::size_t>(od.crossings[c].over_in);
    std::map<int, int> parent;
    for (int l : x) parent[l] = l;
    auto find = [&](int l) {
        while (parent[l] != l) l = parent[l];
        return l;
    };
    // under-in joins over-out, over-in joins under-out
    parent[find(x[0])] = find(x[(o + 2) % 4]);
    parent[find(x[o])] = find(x[2]);
    LinkDiagram r;
    r.free_loops = d.free_loops;
    std::set<int> remaining;
    for (std::size_t i = 0; i < d.pd.size(); ++i) {
        if (i == c) continue;
        auto y = d.pd[i];
        for (int& l : y)
            if (parent.count(l)) l = find(l);
        for (int l : y) remaining.insert(l);
        r.pd.push_back(y);
        auto h = over_pair(d, od, i, false);
        for (int& l : h)
            if (parent.count(l)) l = find(l);
        r.successors.push_back(h);
    }
    std::set<int> classes;
    for (int l : x) classes.insert(find(l));
    for (int root : classes)
        if (!remaining.count(root)) ++r.free_loops;
    return r;
}

namespace {

// Conway skein recursion over per-crossing states: 0 original, 1 switched, 2 smoothed.
class Skein {
public:
    explicit Skein(const OrientedDiagram& od) : od_(od) {}

    std::vector<long long> run() { return eval(std::string(od_.crossings.size(), '0')); }

    // Result of walking the diagram in a given state.
    struct Walk {
        int bad = -1;
        int components = 0;
    };

    Walk walk(const std::string& st) const {
        Walk w;
        const auto n = static_cast<std::size_t>(od_.edge_count);
        std::vector<bool> seen(n, false), visited(od_.crossings.size(), false);
        w.components = od_.free_loops;
        for (std::size_t e0 = 0; e0 < n; ++e0) {
            if (seen[e0]) continue;
            ++w.components;
            auto cur = e0;
            while (!seen[cur]) {
                seen[cur] = true;
                auto [c, s] = od_.head[cur];
                const auto& x = od_.crossings[static_cast<std::size_t>(c)];
                char state = st[static_cast<std::size_t>(c)];
                int out;
                if (state == '2') {
                    out = s == 0 ? (x.over_in + 2) % 4 : 2;
                } else {
                    out = (s + 2) % 4;
                    bool under = state == '0' ? s == 0 : s == x.over_in;
                    if (!visited[static_cast<std::size_t>(c)]) {
                        visited[static_cast<std::size_t>(c)] = true;
                        if (under && w.bad < 0) w.bad = c;
                    }
                }
                cur = static_cast<std::size_t>(x.edge[static_cast<std::size_t>(out)]);
            }
        }
        return w;
    }

private:
    std::vector<long long> eval(const std::string& st) {
        auto it = memo_.find(st);
        if (it != memo_.end()) return it->second;
        Walk w = walk(st);
        std::vector<long long> result;
        if (w.bad < 0) {
            result = {w.components == 1 ? 1 : 0};
        } else {
            auto c = static_cast<std::size_t>(w.bad);
            int sign = od_.crossings[c].sign * (st[c] == '1' ? -1 : 1);
            std::string sw = st, sm = st;
            sw[c] = st[c] == '0' ? '1' : '0';
            sm[c] = '2';
            result = eval(sw);
            auto zero = eval(sm);
            if (result.size() < zero.size() + 1) result.resize(zero.size() + 1, 0);
            for (std::size_t k = 0; k < zero.size(); ++k) result[k + 1] += sign * zero[k];
        }
        while (result.size() > 1 && result.back() == 0) result.pop_back();
        memo_[st] = result;
        return result;
    }

    const OrientedDiagram& od_;
    std::unordered_map<std::string, std::vector<long long>> memo_;
};

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::vector<long long> conway_polynomial(const LinkDiagram& d, std::size_t max_crossings) {
    if (d.pd.size() > max_crossings)
        throw DomainError("TooManyCrossings", "diagram has " + std::to_string(d.pd.size()) + " crossings, bound is " +
                                                  std::to_string(max_crossings));
    OrientedDiagram od = orient(d);
    Skein sk(od);
    return sk.run();
}

LaurentPolynomial alexander_conway(const LinkDiagram& d, std::size_t max_crossings) {
    auto nabla = conway_polynomial(d, max_crossings);
    if (orient(d).components() != 1) throw DomainError("NotAKnot", "Alexander output is defined here for knots only");
    // z = T^(1/2) - T^(-1/2); keep doubled exponents until the end.
    std::map<int, long long> doubled;
    for (std::size_t k = 0; k < nabla.size(); ++k) {
        if (nabla[k] == 0) continue;
        for (int j = 0; j <= static_cast<int>(k); ++j) {
            long long c = binomial(static_cast<int>(k), j) * ((j % 2) ? -1 : 1);
            doubled[static_cast<int>(k) - 2 * j] += nabla[k] * c;
        }
    }
    LaurentPolynomial p;
    for (auto [e2, c] : doubled) {
        if (c == 0) continue;
        if (e2 % 2 != 0) throw std::logic_error("half-integer exponent in a knot Alexander polynomial");
        p.add(e2 / 2, c);
    }
    if (p.eval_at_one() != 1 || !p.is_symmetric())
        throw std::logic_error("Alexander polynomial failed normalization: " + p.to_string());
    return p;
}

namespace {

int rational_signature(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    int sig = 0;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a[i][i] != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // All remaining diagonal entries vanish: add row/col j to row/col i for some a_ij != 0.
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break; // remaining block is zero
            for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
            for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
            p = pi;
        }
        done[p] = true;
        sig += a[p][p] > 0 ? 1 : -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][p] == 0) continue;
            Rational f = a[i][p] / a[p][p];
            for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
        }
        for (std::size_t k = 0; k < n; ++k)
            if (!done[k]) a[p][k] = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) a[i][p] = 0;
    }
    return sig;
}

} // namespace

namespace detail {

int signature_with_coloring(const LinkDiagram& d, int white) {
    OrientedDiagram od = orient(d);
    if (od.components() != 1) throw DomainError("NotAKnot", "signature is defined here for knots only");
    const std::size_t n = od.crossings.size();
    if (n == 0) return 0;
    // Darts are arrival slots (c, s); the face through (c, s) owns the corner between s and s+1.
    std::vector<int> face(4 * n, -1);
    int faces = 0;
    auto other_end = [&](int c, int s) {
        int e = od.crossings[static_cast<std::size_t>(c)].edge[static_cast<std::size_t>(s)];
        auto t = od.tail[static_cast<std::size_t>(e)];
        auto h = od.head[static_cast<std::size_t>(e)];
        return (t[0] == c && t[1] == s) ? h : t;
    };
    for (std::size_t start = 0; start < 4 * n; ++start) {
        if (face[start] >= 0) continue;
        auto cur = start;
        while (face[cur] < 0) {
            face[cur] = faces;
            int c = static_cast<int>(cur / 4), s = static_cast<int>(cur % 4);
            auto nxt = other_end(c, (s + 1) % 4);
            cur = static_cast<std::size_t>(nxt[0] * 4 + nxt[1]);
        }
        ++faces;
    }
    if (faces != static_cast<int>(n) + 2) invalid("diagram is not a connected planar diagram (faces != crossings + 2)");

    // Checkerboard colouring: the two arrival darts of an edge lie on its two sides.
    std::vector<int> color(static_cast<std::size_t>(faces), -1);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(faces));
    for (int e = 0; e < od.edge_count; ++e) {
        auto t = od.tail[static_cast<std::size_t>(e)];
        auto h = od.head[static_cast<std::size_t>(e)];
        int f1 = face[static_cast<std::size_t>(t[0] * 4 + t[1])];
        int f2 = face[static_cast<std::size_t>(h[0] * 4 + h[1])];
        adj[static_cast<std::size_t>(f1)].push_back(f2);
        adj[static_cast<std::size_t>(f2)].push_back(f1);
    }
    color[0] = 0;
    std::deque<int> q{0};
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        for (int g : adj[static_cast<std::size_t>(f)]) {
            if (color[static_cast<std::size_t>(g)] < 0) {
                color[static_cast<std::size_t>(g)] = 1 - color[static_cast<std::size_t>(f)];
                q.push_back(g);
            } else if (color[static_cast<std::size_t>(g)] == color[static_cast<std::size_t>(f)]) {
                invalid("faces admit no checkerboard colouring");
            }
        }
    }

    std::map<int, int> white_index;
    for (int f = 0; f < faces; ++f)
        if (color[static_cast<std::size_t>(f)] == white) white_index[f] = static_cast<int>(white_index.size());
    const std::size_t m = white_index.size();
    std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m, 0));
    int mu = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<int> ws;
        for (int s = 0; s < 4; ++s)
            if (color[static_cast<std::size_t>(face[c * 4 + static_cast<std::size_t>(s)])] == white) ws.push_back(s);
        if (ws.size() != 2 || (ws[1] - ws[0]) != 2) invalid("white corners at a crossing are not opposite");
        int eta = ws[0] == 0 ? 1 : -1;
        // The oriented smoothing merges the corners starting at slots 0 and 2 when the crossing is negative.
        bool merged = (ws[0] == 0) == (od.crossings[c].sign < 0);
        if (!merged) mu += eta;
        auto i = static_cast<std::size_t>(white_index[face[c * 4 + static_cast<std::size_t>(ws[0])]]);
        auto j = static_cast<std::size_t>(white_index[face[c * 4 + static_cast<std::size_t>(ws[1])]]);
        if (i == j) continue;
        g[i][j] -= eta;
        g[j][i] -= eta;
        g[i][i] += eta;
        g[j][j] += eta;
    }
    if (m == 0) return -mu;
    g.pop_back();
    for (auto& row : g) row.pop_back();
    return rational_signature(g) - mu;
}

} // namespace detail

int signature(const LinkDiagram& d) {
    int a = detail::signature_with_coloring(d, 0);
    int b = detail::signature_with_coloring(d, 1);
    if (a != b) throw std::logic_error("signature depends on the checkerboard colouring");
    return a;
}

BigradedRanks alternating_hfk(const LaurentPolynomial& delta, int sigma) {
    if (sigma % 2 != 0) throw DomainError("OddSignature", "signature must be even for a knot");
    BigradedRanks r;
    for (auto [i, a] : delta.terms()) r.add(i, i + sigma / 2, static_cast<std::size_t>(a < 0 ? -a : a));
    return r;
}

} // namespace floer::knot
