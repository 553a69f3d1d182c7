#include "floer/diagram.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "floer/cone.hpp"
#include "floer/errors.hpp"
#include "floer/grid.hpp"

namespace floer::diagram {

using nlohmann::json;
using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

namespace {

[[noreturn]] void invalid(const std::string& msg, json detail = nullptr) {
    throw DomainError("InvalidDiagram", msg, std::move(detail));
}

int mod(int a, int m) { return ((a % m) + m) % m; }

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

// Start and end point of a dart (-1 for loop arcs).
std::pair<int, int> dart_ends(const CombinatorialDiagram& d, const Dart& e) {
    auto [a, b] = d.arc_ends(e.curve, e.arc);
    return e.sign > 0 ? std::pair{a, b} : std::pair{b, a};
}

// Recompute point memberships from the curve point lists.
void attach_points(CombinatorialDiagram& d) {
    for (auto& p : d.points) p.curve[0] = p.curve[1] = p.pos[0] = p.pos[1] = -1;
    for (std::size_t c = 0; c < d.curves.size(); ++c) {
        const auto& pts = d.curves[c].points;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            int p = pts[k];
            if (p < 0 || sz(p) >= d.points.size()) throw InputError("curve " + d.curves[c].name + " lists unknown point " + std::to_string(p));
            auto& pt = d.points[sz(p)];
            int slot = pt.curve[0] < 0 ? 0 : pt.curve[1] < 0 ? 1 : -1;
            if (slot < 0) invalid("point " + pt.name + " lies on more than two curves");
            if (slot == 1 && pt.curve[0] == static_cast<int>(c)) invalid("point " + pt.name + " appears twice on " + d.curves[c].name);
            pt.curve[slot] = static_cast<int>(c);
            pt.pos[slot] = static_cast<int>(k);
        }
    }
    for (const auto& pt : d.points) {
        if (pt.curve[1] < 0) invalid("point " + pt.name + " must lie on exactly two curves");
        if (d.curves[sz(pt.curve[0])].family == d.curves[sz(pt.curve[1])].family)
            invalid("point " + pt.name + " joins two curves of the same family");
    }
}

std::vector<Dart> collapse(const std::vector<Dart>& word) {
    std::vector<Dart> out;
    for (const auto& e : word)
        if (out.empty() || !(out.back() == e)) out.push_back(e);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

// Rotate a cyclic word to its lexicographically smallest rotation.
template <class T>
std::vector<T> min_rotation(const std::vector<T>& w) {
    std::vector<T> best = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
        std::vector<T> cand(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
        cand.insert(cand.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
        best = std::min(best, cand);
    }
    return best;
}

std::vector<int> index_list(const json& j, const char* what) {
    std::vector<int> out;
    if (j.is_null()) return out;
    if (j.is_number_integer()) return {j.get<int>()};
    if (!j.is_array()) throw InputError(std::string(what) + " must be a region id or a list of region ids");
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw InputError(std::string(what) + " must hold integers");
        out.push_back(v.get<int>());
    }
    return out;
}

// Exact phase-one simplex with Bland's rule: a point x >= 0 with A x = b, if any.
std::optional<std::vector<Q>> feasible_point(std::vector<std::vector<Q>> A, std::vector<Q> b) {
    std::size_t m = A.size(), n = m ? A[0].size() : 0;
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (auto& v : A[i]) v = -v;
            b[i] = -b[i];
        }
    // tableau columns: n originals, m artificials, rhs
    std::size_t cols = n + m;
    std::vector<std::vector<Q>> T(m, std::vector<Q>(cols + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][cols] = b[i];
        basis[i] = n + i;
    }
    // reduced costs of minimizing the artificial sum
    std::vector<Q> red(cols + 1);
    for (std::size_t j = n; j < cols; ++j) red[j] = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j) red[j] -= T[i][j];
    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (red[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Q best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Q ratio = T[i][cols] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break; // unbounded cannot happen for a bounded-below objective
        Q piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Q f = T[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
        }
        if (red[enter] != 0) {
            Q f = red[enter];
            for (std::size_t j = 0; j <= cols; ++j) red[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (red[cols] != 0) return std::nullopt; // -objective; nonzero means artificials remain
    std::vector<Q> x(n);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = T[i][cols];
    return x;
}

Domain primitive(const std::vector<Q>& v) {
    Z l = 1;
    for (const auto& q : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(q));
    std::vector<Z> ints;
    Z g = 0;
    for (const auto& q : v) {
        Z k = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
        ints.push_back(k);
        g = boost::multiprecision::gcd(g, k);
    }
    Domain out;
    for (auto& k : ints) out.push_back(static_cast<long long>(g == 0 ? k : k / g));
    return out;
}

} // namespace

// ---------------------------------------------------------------- basics

int CombinatorialDiagram::curve_index(const std::string& name) const {
    for (std::size_t c = 0; c < curves.size(); ++c)
        if (curves[c].name == name) return static_cast<int>(c);
    return -1;
}

int CombinatorialDiagram::arc_count(int curve) const {
    return std::max<int>(1, static_cast<int>(curves[sz(curve)].points.size()));
}

std::pair<int, int> CombinatorialDiagram::arc_ends(int curve, int arc) const {
    const auto& pts = curves[sz(curve)].points;
    if (pts.empty()) return {-1, -1};
    int m = static_cast<int>(pts.size());
    return {pts[sz(arc)], pts[sz((arc + 1) % m)]};
}

std::vector<int> CombinatorialDiagram::curves_of(char family) const {
    std::vector<int> out;
    for (std::size_t c = 0; c < curves.size(); ++c)
        if (curves[c].family == family) out.push_back(static_cast<int>(c));
    return out;
}

Topology topology(const CombinatorialDiagram& d) {
    Topology t;
    int total = 0;
    for (std::size_t c = 0; c < d.curves.size(); ++c) {
        int k = d.arc_count(static_cast<int>(c));
        t.arc_offset.emplace_back(total, k);
        total += k;
    }
    t.left.assign(sz(total), -1);
    t.right.assign(sz(total), -1);
    t.quadrant.assign(d.points.size(), {-1, -1, -1, -1});
    for (std::size_t r = 0; r < d.regions.size(); ++r) {
        for (const auto& comp : d.regions[r].components) {
            if (comp.empty()) invalid("region " + std::to_string(r) + " has an empty boundary component");
            for (std::size_t i = 0; i < comp.size(); ++i) {
                const Dart& e = comp[i];
                if (e.curve < 0 || sz(e.curve) >= d.curves.size() || e.arc < 0 || e.arc >= d.arc_count(e.curve) || (e.sign != 1 && e.sign != -1))
                    invalid("region " + std::to_string(r) + " references a nonexistent arc");
                auto& side = e.sign > 0 ? t.left : t.right;
                int g = t.global_arc(e.curve, e.arc);
                if (side[sz(g)] >= 0) invalid("arc " + d.curves[sz(e.curve)].name + "/" + std::to_string(e.arc) + " is used twice on the same side");
                side[sz(g)] = static_cast<int>(r);
                const Dart& f = comp[(i + 1) % comp.size()];
                int p = dart_ends(d, e).second;
                if (p < 0) {
                    if (comp.size() != 1) invalid("a closed curve without intersections must be a boundary component on its own");
                    continue;
                }
                if (dart_ends(d, f).first != p || f.curve == e.curve)
                    invalid("boundary of region " + std::to_string(r) + " is not a closed path turning at intersection points");
                const auto& pt = d.points[sz(p)];
                Corner cn{static_cast<int>(r), p, {0, 0}};
                int se = pt.curve[0] == e.curve ? 0 : 1;
                int sf = 1 - se;
                if (pt.curve[sf] != f.curve) invalid("corner at " + pt.name + " uses a curve not through it");
                cn.side[se] = e.sign > 0 ? 0 : 1;
                cn.side[sf] = f.sign > 0 ? 1 : 0;
                auto& q = t.quadrant[sz(p)][sz(cn.side[0] + 2 * cn.side[1])];
                if (q >= 0) invalid("point " + pt.name + " has a quadrant filled twice");
                q = static_cast<int>(r);
                t.corners.push_back(cn);
            }
        }
    }
    for (int g = 0; g < total; ++g)
        if (t.left[sz(g)] < 0 || t.right[sz(g)] < 0) invalid("every arc must border a region on each side");
    for (std::size_t p = 0; p < d.points.size(); ++p)
        for (int q : t.quadrant[p])
            if (q < 0) invalid("point " + d.points[p].name + " is not surrounded by four region corners");
    return t;
}

void validate(const CombinatorialDiagram& d) {
    if (d.genus < 0) invalid("genus must be nonnegative");
    if (d.regions.empty()) invalid("diagram has no regions");
    if (d.z.empty()) invalid("basepoint z is required");
    for (const auto* bp : {&d.z, &d.w})
        for (int r : *bp)
            if (r < 0 || sz(r) >= d.regions.size()) invalid("basepoint in nonexistent region " + std::to_string(r));
    std::size_t expect = sz(d.genus) + d.z.size() - 1;
    if (d.curves_of('a').size() != expect || d.curves_of('b').size() != expect)
        invalid("need " + std::to_string(expect) + " alpha and beta curves (genus + basepoints - 1)");
    auto t = topology(d);
    long long chi = static_cast<long long>(d.points.size());
    for (std::size_t c = 0; c < d.curves.size(); ++c)
        if (!d.curves[c].points.empty()) chi -= static_cast<long long>(d.curves[c].points.size());
    for (const auto& r : d.regions) chi += r.euler;
    if (chi != 2 - 2LL * d.genus)
        invalid("Euler characteristic " + std::to_string(chi) + " does not match genus " + std::to_string(d.genus),
                {{"euler", chi}, {"expected", 2 - 2 * d.genus}});
}

CombinatorialDiagram diagram_from_json(const json& j) {
    if (!j.is_object()) throw InputError("diagram must be a JSON object");
    CombinatorialDiagram d;
    try {
        if (!j.contains("genus") || !j["genus"].is_number_integer()) throw InputError("diagram needs an integer genus");
        d.genus = j["genus"].get<int>();
        if (!j.contains("points") || !j["points"].is_array()) throw InputError("diagram needs a points array");
        for (std::size_t i = 0; i < j["points"].size(); ++i) {
            const auto& p = j["points"][i];
            Point pt;
            pt.name = "p" + std::to_string(i);
            if (p.is_string()) pt.name = p.get<std::string>();
            else if (p.is_object() && p.contains("name")) pt.name = p["name"].get<std::string>();
            else if (!p.is_object()) throw InputError("point entries must be names or objects");
            d.points.push_back(pt);
        }
        std::set<std::string> names;
        for (const auto& p : d.points)
            if (!names.insert(p.name).second) throw InputError("duplicate point name " + p.name);
        for (auto [key, fam] : {std::pair{"alpha", 'a'}, std::pair{"beta", 'b'}, std::pair{"delta", 'd'}}) {
            if (!j.contains(key)) {
                if (fam == 'd') continue;
                throw InputError(std::string("diagram needs ") + key + " curves");
            }
            if (!j[key].is_array()) throw InputError(std::string(key) + " must be an array of curves");
            int idx = 0;
            for (const auto& c : j[key]) {
                Curve cv;
                cv.family = fam;
                cv.name = std::string(1, fam) + std::to_string(idx++);
                const json* pts = &c;
                if (c.is_object()) {
                    if (c.contains("name")) cv.name = c["name"].get<std::string>();
                    if (!c.contains("points")) throw InputError("curve object needs points");
                    pts = &c["points"];
                }
                if (!pts->is_array()) throw InputError("curve points must be an array");
                for (const auto& p : *pts) cv.points.push_back(p.get<int>());
                if (d.curve_index(cv.name) >= 0) throw InputError("duplicate curve name " + cv.name);
                d.curves.push_back(cv);
            }
        }
        attach_points(d);
        if (!j.contains("regions") || !j["regions"].is_array()) throw InputError("diagram needs a regions array");
        for (const auto& r : j["regions"]) {
            Region reg;
            std::vector<const json*> comps;
            if (r.is_object() && r.contains("components")) {
                for (const auto& c : r["components"]) comps.push_back(&c);
            } else if (r.is_object() && r.contains("boundary")) {
                comps.push_back(&r["boundary"]);
            } else if (r.is_array()) {
                comps.push_back(&r);
            } else {
                throw InputError("region needs a boundary or components");
            }
            for (const auto* c : comps) {
                std::vector<Dart> word;
                for (const auto& e : *c) {
                    if (!e.is_array() || e.size() != 3) throw InputError("boundary entries are [curve, arc, orientation]");
                    int ci = e[0].is_string() ? d.curve_index(e[0].get<std::string>()) : -1;
                    if (ci < 0) throw InputError("unknown curve in boundary: " + e[0].dump());
                    word.push_back({ci, e[1].get<int>(), e[2].get<int>()});
                }
                reg.components.push_back(std::move(word));
            }
            reg.euler = 2 - static_cast<int>(reg.components.size());
            if (r.is_object() && r.contains("euler")) reg.euler = r["euler"].get<int>();
            d.regions.push_back(std::move(reg));
        }
        d.z = index_list(j.value("z", json()), "z");
        d.w = index_list(j.value("w", json()), "w");
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed diagram: ") + e.what());
    }
    validate(d);
    return d;
}

json to_json(const CombinatorialDiagram& d) {
    json j;
    j["genus"] = d.genus;
    json pts = json::array();
    for (const auto& p : d.points) pts.push_back({{"name", p.name}});
    j["points"] = pts;
    for (auto [key, fam] : {std::pair{"alpha", 'a'}, std::pair{"beta", 'b'}, std::pair{"delta", 'd'}}) {
        json cs = json::array();
        for (const auto& c : d.curves)
            if (c.family == fam) cs.push_back({{"name", c.name}, {"points", c.points}});
        if (fam != 'd' || !cs.empty()) j[key] = cs;
    }
    json regs = json::array();
    for (const auto& r : d.regions) {
        json comps = json::array();
        for (const auto& comp : r.components) {
            json w = json::array();
            for (const auto& e : comp) w.push_back({d.curves[sz(e.curve)].name, e.arc, e.sign});
            comps.push_back(w);
        }
        if (comps.size() == 1 && r.euler == 1) regs.push_back({{"boundary", comps[0]}});
        else regs.push_back({{"components", comps}, {"euler", r.euler}});
    }
    j["regions"] = regs;
    j["z"] = d.z;
    j["w"] = d.w;
    return j;
}

long long point_multiplicity(const CombinatorialDiagram& d, const Domain& dom, int region) {
    if (region < 0 || sz(region) >= d.regions.size())
        throw DomainError("UnknownRegion", "no region " + std::to_string(region), {{"region", region}});
    return sz(region) < dom.size() ? dom[sz(region)] : 0;
}

// ---------------------------------------------------------------- periodic domains

std::vector<Domain> periodic_domains(const CombinatorialDiagram& d, bool also_w) {
    auto t = topology(d);
    std::size_t R = d.regions.size(), C = d.curves.size(), nv = R + C;
    std::vector<std::vector<Q>> rows;
    for (std::size_t c = 0; c < C; ++c)
        for (int a = 0; a < t.arc_offset[c].second; ++a) {
            int g = t.global_arc(static_cast<int>(c), a);
            std::vector<Q> row(nv);
            row[sz(t.left[sz(g)])] += 1;
            row[sz(t.right[sz(g)])] -= 1;
            row[R + c] -= 1;
            rows.push_back(row);
        }
    auto pin = [&](int r) {
        std::vector<Q> row(nv);
        row[sz(r)] = 1;
        rows.push_back(row);
    };
    for (int r : d.z) pin(r);
    if (also_w)
        for (int r : d.w) pin(r);
    // reduced row echelon form
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nv && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        Q inv = 1 / rows[rank][col];
        for (auto& v : rows[rank]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Q f = rows[i][col];
            for (std::size_t k = 0; k < nv; ++k) rows[i][k] -= f * rows[rank][k];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    std::vector<bool> is_pivot(nv, false);
    for (int c : pivot_col) is_pivot[sz(c)] = true;
    std::vector<Domain> basis;
    for (std::size_t free = 0; free < nv; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Q> v(nv);
        v[free] = 1;
        for (std::size_t i = 0; i < rank; ++i) v[sz(pivot_col[i])] = -rows[i][free];
        auto dom = primitive(std::vector<Q>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(R)));
        // c = 0 whenever m = 0, so projection to regions is injective
        if (std::all_of(dom.begin(), dom.end(), [](long long x) { return x == 0; }))
            throw std::logic_error("periodic domain with zero multiplicities");
        basis.push_back(dom);
    }
    // re-verify: constant jump along every curve, n_z = 0
    for (const auto& dom : basis) {
        for (std::size_t c = 0; c < C; ++c) {
            std::optional<long long> jump;
            for (int a = 0; a < t.arc_offset[c].second; ++a) {
                int g = t.global_arc(static_cast<int>(c), a);
                long long j = dom[sz(t.left[sz(g)])] - dom[sz(t.right[sz(g)])];
                if (jump && *jump != j) throw std::logic_error("periodic domain jump not constant");
                jump = j;
            }
        }
        for (int r : d.z)
            if (dom[sz(r)] != 0) throw std::logic_error("periodic domain with n_z != 0");
    }
    return basis;
}

AdmissibilityReport check_admissibility(const CombinatorialDiagram& d, AdmissibilityMode mode) {
    auto basis = periodic_domains(d, mode == AdmissibilityMode::ExtremelyWeakConservative);
    AdmissibilityReport rep;
    rep.lattice_rank = basis.size();
    if (basis.empty()) return rep;
    // look for a nonzero s = sum_k lambda_k P_k with s >= 0, normalized by sum(s) = 1
    std::size_t R = d.regions.size(), K = basis.size();
    std::size_t n = 2 * K + R;
    std::vector<std::vector<Q>> A;
    std::vector<Q> b;
    for (std::size_t r = 0; r < R; ++r) {
        std::vector<Q> row(n);
        for (std::size_t k = 0; k < K; ++k) {
            row[k] = basis[k][r];
            row[K + k] = -basis[k][r];
        }
        row[2 * K + r] = -1;
        A.push_back(row);
        b.push_back(0);
    }
    std::vector<Q> total(n);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t r = 0; r < R; ++r) {
            total[k] += basis[k][r];
            total[K + k] -= basis[k][r];
        }
    A.push_back(total);
    b.push_back(1);
    auto x = feasible_point(A, b);
    if (!x) return rep;
    rep.admissible = false;
    std::vector<Q> s(R);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t k = 0; k < K; ++k) s[r] += ((*x)[k] - (*x)[K + k]) * basis[k][r];
    rep.witness = primitive(s);
    return rep;
}

// ---------------------------------------------------------------- generators and the differential

std::vector<std::vector<int>> generators(const CombinatorialDiagram& d) {
    auto alphas = d.curves_of('a');
    std::vector<std::vector<std::pair<int, int>>> options; // (point, beta curve)
    for (int a : alphas) {
        std::vector<std::pair<int, int>> opt;
        for (int p : d.curves[sz(a)].points) {
            const auto& pt = d.points[sz(p)];
            int other = pt.curve[0] == a ? pt.curve[1] : pt.curve[0];
            if (d.curves[sz(other)].family == 'b') opt.emplace_back(p, other);
        }
        options.push_back(opt);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::set<int> used;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == options.size()) {
            out.push_back(cur);
            return;
        }
        for (auto [p, b] : options[i]) {
            if (used.count(b)) continue;
            used.insert(b);
            cur.push_back(p);
            self(self, i + 1);
            cur.pop_back();
            used.erase(b);
        }
    };
    rec(rec, 0);
    return out;
}

std::string generator_name(const CombinatorialDiagram& d, const std::vector<int>& x) {
    std::string s;
    for (int p : x) {
        if (!s.empty()) s += ",";
        s += d.points[sz(p)].name;
    }
    return s;
}

namespace {

struct DiscCounter {
    const CombinatorialDiagram& d;
    Topology t;
    std::vector<int> forbidden;
    std::vector<std::vector<std::pair<int, int>>> adj; // region -> (global arc, +1 if region is left)
    std::vector<bool> bounded_arc;                     // arc has endpoints (is not a bare circle)

    DiscCounter(const CombinatorialDiagram& dd, std::vector<int> forb) : d(dd), t(topology(dd)), forbidden(std::move(forb)) {
        for (std::size_t c = 0; c < d.curves.size(); ++c)
            for (int a = 0; a < t.arc_offset[c].second; ++a) bounded_arc.push_back(!d.curves[c].points.empty());
        adj.resize(d.regions.size());
        for (std::size_t g = 0; g < t.left.size(); ++g) {
            adj[sz(t.left[g])].emplace_back(static_cast<int>(g), 1);
            adj[sz(t.right[g])].emplace_back(static_cast<int>(g), -1);
        }
    }

    // Arcs of curve c from position i to position j (forward if dir > 0), each with coefficient dir.
    void add_path(std::vector<int>& coef, int c, int i, int j, int dir) const {
        int m = static_cast<int>(d.curves[sz(c)].points.size());
        for (int k = i; k != j;) {
            int arc = dir > 0 ? k : mod(k - 1, m);
            coef[sz(t.global_arc(c, arc))] += dir;
            k = mod(k + dir, m);
        }
    }

    int pos_on(int p, int c) const {
        const auto& pt = d.points[sz(p)];
        return pt.curve[0] == c ? pt.pos[0] : pt.pos[1];
    }

    int other_curve(int p, int c) const {
        const auto& pt = d.points[sz(p)];
        return pt.curve[0] == c ? pt.curve[1] : pt.curve[0];
    }

    // Multiplicities with m(forbidden[0]) = 0 and boundary coef; nullopt if inconsistent.
    std::optional<std::vector<int>> solve(const std::vector<int>& coef) const {
        std::vector<int> m(d.regions.size(), 0);
        std::vector<bool> seen(d.regions.size(), false);
        std::deque<int> q{forbidden[0]};
        seen[sz(forbidden[0])] = true;
        while (!q.empty()) {
            int r = q.front();
            q.pop_front();
            for (auto [g, side] : adj[sz(r)]) {
                int other = side > 0 ? t.right[sz(g)] : t.left[sz(g)];
                int val = side > 0 ? m[sz(r)] - coef[sz(g)] : m[sz(r)] + coef[sz(g)];
                if (!seen[sz(other)]) {
                    seen[sz(other)] = true;
                    m[sz(other)] = val;
                    q.push_back(other);
                } else if (m[sz(other)] != val) {
                    return std::nullopt;
                }
            }
        }
        return m;
    }

    int quadrant_sum(const std::vector<int>& m, int p) const {
        int s = 0;
        for (int r : t.quadrant[sz(p)]) s += m[sz(r)];
        return s;
    }

    bool ones_at(const std::vector<int>& m, int p) const {
        int ones = 0;
        for (int r : t.quadrant[sz(p)]) ones += m[sz(r)];
        return ones == 1;
    }

    // Number of empty embedded discs from x to y (which differ exactly at the coordinates in moved).
    int count(const std::vector<int>& x, const std::vector<int>& y, const std::vector<std::size_t>& moved,
              const std::vector<int>& alphas) const {
        // beta paths run from y to x: y's point on beta b to x's point on b
        std::vector<std::tuple<int, int, int>> apaths, bpaths; // (curve, from pos, to pos)
        for (std::size_t i : moved) {
            int a = alphas[i];
            apaths.emplace_back(a, pos_on(x[i], a), pos_on(y[i], a));
        }
        for (std::size_t i : moved) {
            int b = other_curve(y[i], alphas[i]);
            int xp = -1;
            for (std::size_t k : moved)
                if (other_curve(x[k], alphas[k]) == b) xp = x[k];
            bpaths.emplace_back(b, pos_on(y[i], b), pos_on(xp, b));
        }
        std::size_t npath = apaths.size() + bpaths.size();
        int found = 0;
        for (unsigned mask = 0; mask < (1U << npath); ++mask) {
            std::vector<int> coef(t.left.size(), 0);
            for (std::size_t k = 0; k < npath; ++k) {
                auto [c, from, to] = k < apaths.size() ? apaths[k] : bpaths[k - apaths.size()];
                int dir = (mask >> k) & 1U ? -1 : 1;
                add_path(coef, c, from, to, dir);
            }
            // boundary of D: alpha paths x -> y plus beta paths y -> x
            auto m = solve(coef);
            if (!m) continue;
            if (!accept(*m, x, y, moved)) continue;
            ++found;
        }
        return found;
    }

    bool accept(const std::vector<int>& m, const std::vector<int>& x, const std::vector<int>& y,
                const std::vector<std::size_t>& moved) const {
        bool any = false;
        for (int v : m) {
            if (v != 0 && v != 1) return false;
            any = any || v == 1;
        }
        if (!any) return false;
        for (int r : forbidden)
            if (m[sz(r)] != 0) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            bool mv = std::find(moved.begin(), moved.end(), i) != moved.end();
            if (mv) {
                if (!ones_at(m, x[i]) || !ones_at(m, y[i])) return false;
            } else if (quadrant_sum(m, x[i]) != 0) {
                return false;
            }
        }
        // the support must be an open disc
        long long chi = 0;
        for (std::size_t r = 0; r < m.size(); ++r)
            if (m[r]) chi += d.regions[r].euler;
        for (std::size_t g = 0; g < t.left.size(); ++g)
            if (m[sz(t.left[g])] && m[sz(t.right[g])] && bounded_arc[g]) chi -= 1;
        for (std::size_t p = 0; p < d.points.size(); ++p)
            if (quadrant_sum(m, static_cast<int>(p)) == 4) chi += 1;
        return chi == 1;
    }
};

} // namespace

NiceComplex nice_differential(const CombinatorialDiagram& d, Flavor flavor) {
    std::vector<int> forbidden = d.z;
    if (flavor == Flavor::KnotHat) forbidden.insert(forbidden.end(), d.w.begin(), d.w.end());
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
    for (std::size_t r = 0; r < d.regions.size(); ++r) {
        if (std::binary_search(forbidden.begin(), forbidden.end(), static_cast<int>(r))) continue;
        const auto& reg = d.regions[r];
        bool disc = reg.components.size() == 1 && reg.euler == 1;
        std::size_t corners = disc ? reg.components[0].size() : 0;
        if (!disc || (corners != 2 && corners != 4) || dart_ends(d, reg.components[0][0]).first < 0)
            throw DomainError("NotNice", "region " + std::to_string(r) + " is not a bigon or a square",
                              {{"region", r}, {"corners", corners}, {"disc", disc}});
    }
    DiscCounter dc(d, forbidden);
    NiceComplex out;
    out.generators = generators(d);
    auto alphas = d.curves_of('a');
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < out.generators.size(); ++i) index[out.generators[i]] = i;
    std::size_t N = out.generators.size();
    gf2::GF2Matrix diff(N, N);
    for (std::size_t xi = 0; xi < N; ++xi) {
        const auto& x = out.generators[xi];
        std::set<std::pair<std::vector<int>, std::vector<std::size_t>>> cands;
        for (std::size_t i = 0; i < x.size(); ++i) {
            int a = alphas[i];
            int b = dc.other_curve(x[i], a);
            for (int p : d.curves[sz(a)].points)
                if (p != x[i] && dc.other_curve(p, a) == b) {
                    auto y = x;
                    y[i] = p;
                    cands.insert({y, {i}});
                }
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                int a2 = alphas[j];
                int b2 = dc.other_curve(x[j], a2);
                for (int p : d.curves[sz(a)].points) {
                    if (dc.other_curve(p, a) != b2) continue;
                    for (int p2 : d.curves[sz(a2)].points) {
                        if (dc.other_curve(p2, a2) != b) continue;
                        auto y = x;
                        y[i] = p;
                        y[j] = p2;
                        cands.insert({y, {i, j}});
                    }
                }
            }
        }
        for (const auto& [y, moved] : cands) {
            int n = dc.count(x, y, moved, alphas);
            if (n % 2) diff.toggle(index.at(y), xi);
        }
    }
    if (!(diff * diff).is_zero()) throw std::logic_error("nice differential does not square to zero");
    out.complex.graded = false;
    for (const auto& g : out.generators) out.complex.basis.generators.push_back({generator_name(d, g), 0});
    out.complex.differential = diff;
    return out;
}

// ---------------------------------------------------------------- curve removal and comparison

CombinatorialDiagram remove_curve(const CombinatorialDiagram& d, const std::string& name) {
    int c = d.curve_index(name);
    if (c < 0) throw InputError("no curve named " + name);
    auto t = topology(d);
    // next dart along each boundary word
    std::map<Dart, Dart> next;
    std::map<Dart, int> owner;
    for (std::size_t r = 0; r < d.regions.size(); ++r)
        for (const auto& comp : d.regions[r].components)
            for (std::size_t i = 0; i < comp.size(); ++i) {
                next[comp[i]] = comp[(i + 1) % comp.size()];
                owner[comp[i]] = static_cast<int>(r);
            }
    // union the faces on both sides of the deleted curve
    std::vector<int> parent(d.regions.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int r) {
        while (parent[sz(r)] != r) r = parent[sz(r)] = parent[sz(parent[sz(r)])];
        return r;
    };
    std::vector<int> lost_edges(d.regions.size(), 0);
    for (int a = 0; a < d.arc_count(c); ++a) {
        int g = t.global_arc(c, a);
        int l = find(t.left[sz(g)]), r = find(t.right[sz(g)]);
        if (l != r) parent[sz(r)] = l;
    }
    if (!d.curves[sz(c)].points.empty())
        for (int a = 0; a < d.arc_count(c); ++a) lost_edges[sz(find(t.left[sz(t.global_arc(c, a))]))] += 1;

    // surviving points and the new curve data
    std::vector<int> new_point(d.points.size(), -1);
    CombinatorialDiagram out;
    out.genus = d.genus;
    for (std::size_t p = 0; p < d.points.size(); ++p) {
        const auto& pt = d.points[p];
        if (pt.curve[0] == c || pt.curve[1] == c) continue;
        new_point[p] = static_cast<int>(out.points.size());
        out.points.push_back({pt.name, {-1, -1}, {-1, -1}});
    }
    std::vector<int> new_curve(d.curves.size(), -1);
    std::vector<std::vector<int>> arc_map(d.curves.size());
    for (std::size_t k = 0; k < d.curves.size(); ++k) {
        if (static_cast<int>(k) == c) continue;
        const auto& cv = d.curves[k];
        new_curve[k] = static_cast<int>(out.curves.size());
        Curve nc{cv.name, cv.family, {}};
        std::vector<int> survivor_rank(cv.points.size(), -1);
        for (std::size_t i = 0; i < cv.points.size(); ++i)
            if (new_point[sz(cv.points[i])] >= 0) {
                survivor_rank[i] = static_cast<int>(nc.points.size());
                nc.points.push_back(new_point[sz(cv.points[i])]);
            }
        auto& am = arc_map[k];
        int na = d.arc_count(static_cast<int>(k));
        am.assign(sz(na), 0);
        if (!nc.points.empty()) {
            int last = static_cast<int>(nc.points.size()) - 1;
            for (int a = 0; a < na; ++a) {
                int r = -1;
                for (int i = a; i >= 0 && r < 0; --i) r = survivor_rank[sz(i)];
                am[sz(a)] = r < 0 ? last : r;
            }
        }
        out.curves.push_back(nc);
    }
    attach_points(out);

    // trace the merged faces
    auto step = [&](Dart e) {
        Dart n = next.at(e);
        std::size_t guard = 0;
        while (n.curve == c) {
            n = next.at(Dart{n.curve, n.arc, -n.sign});
            if (++guard > next.size()) throw std::logic_error("face tracing did not terminate");
        }
        return n;
    };
    std::vector<int> group_index(d.regions.size(), -1);
    for (std::size_t r = 0; r < d.regions.size(); ++r) {
        int g = find(static_cast<int>(r));
        if (group_index[sz(g)] < 0) {
            group_index[sz(g)] = static_cast<int>(out.regions.size());
            out.regions.push_back({});
            out.regions.back().euler = 0;
        }
    }
    for (std::size_t r = 0; r < d.regions.size(); ++r) {
        int g = find(static_cast<int>(r));
        out.regions[sz(group_index[sz(g)])].euler += d.regions[r].euler;
    }
    for (std::size_t r = 0; r < d.regions.size(); ++r)
        if (find(static_cast<int>(r)) == static_cast<int>(r)) out.regions[sz(group_index[r])].euler -= lost_edges[r];
    std::set<Dart> done;
    for (const auto& [e, _] : next) {
        if (e.curve == c || done.count(e)) continue;
        std::vector<Dart> word;
        Dart cur = e;
        do {
            done.insert(cur);
            word.push_back({new_curve[sz(cur.curve)], arc_map[sz(cur.curve)][sz(cur.arc)], cur.sign});
            cur = step(cur);
        } while (!(cur == e));
        int reg = group_index[sz(find(owner.at(e)))];
        out.regions[sz(reg)].components.push_back(collapse(word));
    }
    auto map_bp = [&](const std::vector<int>& v) {
        std::vector<int> o;
        for (int r : v) {
            int n = group_index[sz(find(r))];
            if (std::find(o.begin(), o.end(), n) == o.end()) o.push_back(n);
        }
        return o;
    };
    out.z = map_bp(d.z);
    out.w = map_bp(d.w);
    return out;
}

bool same_diagram(const CombinatorialDiagram& a, const CombinatorialDiagram& b) {
    if (a.genus != b.genus || a.curves.size() != b.curves.size() || a.points.size() != b.points.size() ||
        a.regions.size() != b.regions.size())
        return false;
    std::map<std::string, int> bpoint;
    for (std::size_t p = 0; p < b.points.size(); ++p) bpoint[b.points[p].name] = static_cast<int>(p);
    // per curve of a: matching curve of b and the rotation of the point list
    std::vector<int> rot(a.curves.size(), 0);
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        int bc = b.curve_index(a.curves[c].name);
        if (bc < 0 || b.curves[sz(bc)].family != a.curves[c].family) return false;
        const auto& ap = a.curves[c].points;
        const auto& bp = b.curves[sz(bc)].points;
        if (ap.size() != bp.size()) return false;
        if (ap.empty()) continue;
        int m = static_cast<int>(ap.size());
        int start = -1;
        for (int i = 0; i < m; ++i)
            if (b.points[sz(bp[sz(i)])].name == a.points[sz(ap[0])].name) start = i;
        if (start < 0) return false;
        for (int i = 0; i < m; ++i)
            if (b.points[sz(bp[sz((start + i) % m)])].name != a.points[sz(ap[sz(i)])].name) return false;
        rot[c] = start;
    }
    auto canon = [](const CombinatorialDiagram& d, const Region& r, auto&& dart_key) {
        std::vector<std::vector<std::tuple<std::string, int, int>>> comps;
        for (const auto& comp : r.components) {
            std::vector<std::tuple<std::string, int, int>> w;
            for (const auto& e : comp) w.push_back(dart_key(d, e));
            comps.push_back(min_rotation(w));
        }
        std::sort(comps.begin(), comps.end());
        return std::pair{comps, r.euler};
    };
    // a's arc j corresponds to b's arc j + rot; express both in a's numbering
    auto key_b = [&](const CombinatorialDiagram& d, const Dart& e) {
        int ac = a.curve_index(d.curves[sz(e.curve)].name);
        int m = d.arc_count(e.curve);
        return std::tuple{d.curves[sz(e.curve)].name, mod(e.arc - rot[sz(ac)], m), e.sign};
    };
    auto key_plain = [](const CombinatorialDiagram& d, const Dart& e) {
        return std::tuple{d.curves[sz(e.curve)].name, e.arc, e.sign};
    };
    std::vector<std::pair<std::vector<std::vector<std::tuple<std::string, int, int>>>, int>> ra, rb;
    for (const auto& r : a.regions) ra.push_back(canon(a, r, key_plain));
    for (const auto& r : b.regions) rb.push_back(canon(b, r, key_b));
    auto za = a.z, zb = b.z;
    std::vector<std::pair<std::vector<std::vector<std::tuple<std::string, int, int>>>, int>> zra, zrb;
    for (int r : za) zra.push_back(ra[sz(r)]);
    for (int r : zb) zrb.push_back(rb[sz(r)]);
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    std::sort(zra.begin(), zra.end());
    std::sort(zrb.begin(), zrb.end());
    return ra == rb && zra == zrb;
}

// ---------------------------------------------------------------- the Dehn twist

TwistResult dehn_twist_beta1(const CombinatorialDiagram& base, const CombinatorialDiagram& refined) {
    auto bad = [](const std::string& msg, json detail = nullptr) {
        throw DomainError("BadDeltaPosition", msg, std::move(detail));
    };
    auto deltas = refined.curves_of('d');
    if (deltas.size() != 1) bad("the refined diagram must contain exactly one delta curve");
    int D = deltas[0];
    const auto& dcurve = refined.curves[sz(D)];
    int B = -1, q = -1, hits = 0;
    for (int p : dcurve.points) {
        const auto& pt = refined.points[sz(p)];
        int other = pt.curve[0] == D ? pt.curve[1] : pt.curve[0];
        if (refined.curves[sz(other)].family != 'b') continue;
        ++hits;
        B = other;
        q = p;
    }
    if (hits != 1) bad("delta must meet the beta curves in exactly one point", {{"beta_intersections", hits}});
    if (refined.z.size() != 1) bad("the twist needs a single basepoint z");
    validate(refined);
    const auto& qp = refined.points[sz(q)];
    int bslot = qp.curve[0] == B ? 0 : 1;
    int zr = refined.z[0];

    // corners at q as (in dart, out dart, region)
    struct QCorner {
        Dart in, out;
        int region;
    };
    std::vector<QCorner> qc;
    std::map<Dart, Dart> next;
    std::map<Dart, int> owner;
    for (std::size_t reg = 0; reg < refined.regions.size(); ++reg)
        for (const auto& comp : refined.regions[reg].components)
            for (std::size_t i = 0; i < comp.size(); ++i) {
                const Dart& e = comp[i];
                const Dart& f = comp[(i + 1) % comp.size()];
                next[e] = f;
                owner[e] = static_cast<int>(reg);
                if (dart_ends(refined, e).second == q) qc.push_back({e, f, static_cast<int>(reg)});
            }
    // turning right from beta_1 onto delta merges the two corners bounded by (beta in, delta out)
    std::vector<QCorner> merged;
    for (const auto& c : qc)
        if (c.in.curve == B && c.out.curve == D) merged.push_back(c);
    if (merged.size() != 2) throw std::logic_error("crossing does not have two merging corners");
    int zcount = (merged[0].region == zr) + (merged[1].region == zr);
    if (zcount != 1)
        bad("the z region must fill exactly one of the two corners at " + qp.name + " that the twist joins",
            {{"z_corners", zcount}});
    const QCorner& cz = merged[0].region == zr ? merged[0] : merged[1];
    const QCorner& co = merged[0].region == zr ? merged[1] : merged[0];
    int Fz = cz.region, Fo = co.region;

    TwistResult res;
    res.beta1 = refined.curves[sz(B)].name;
    res.crossing = qp.name;

    CombinatorialDiagram withw = refined;
    withw.w = {Fo};
    auto ab = remove_curve(withw, dcurve.name);
    validate(ab);
    if (!same_diagram(ab, base)) throw DomainError("BaseMismatch", "refined diagram minus delta is not the base diagram");
    res.alpha_beta = ab;
    auto ad = remove_curve(withw, res.beta1);
    int di = ad.curve_index(dcurve.name);
    ad.curves[sz(di)].family = 'b';
    validate(ad);
    res.alpha_delta = ad;

    // beta_1' runs along beta_1 from q back to q, then along delta in the direction that
    // continues the beta ray arriving at q (side 0)
    auto arrive_side = [](const Dart& e) { return e.sign > 0 ? 0 : 1; };
    auto leave_side = [](const Dart& e) { return e.sign > 0 ? 1 : 0; };
    int joined_to_before = arrive_side(cz.in) == 0 ? leave_side(co.out) : leave_side(cz.out);
    bool forward = joined_to_before == 1;
    res.delta_reversed = !forward;

    const auto& bpts = refined.curves[sz(B)].points;
    const auto& dpts = dcurve.points;
    int m = static_cast<int>(bpts.size()), r = static_cast<int>(dpts.size());
    int k = qp.pos[bslot], l = qp.pos[1 - bslot];
    struct Token {
        bool point;
        int id; // point index, or curve for pieces
        int arc;
        int sign;
    };
    std::vector<Token> tok;
    for (int i = 0; i < m; ++i) {
        tok.push_back({false, B, mod(k + i, m), 1});
        if (i < m - 1) tok.push_back({true, bpts[sz(mod(k + i + 1, m))], 0, 0});
    }
    for (int i = 0; i < r; ++i) {
        if (forward) {
            tok.push_back({false, D, mod(l + i, r), 1});
            if (i < r - 1) tok.push_back({true, dpts[sz(mod(l + i + 1, r))], 0, 0});
        } else {
            tok.push_back({false, D, mod(l - 1 - i, r), -1});
            if (i < r - 1) tok.push_back({true, dpts[sz(mod(l - 1 - i, r))], 0, 0});
        }
    }
    auto first_pt = std::find_if(tok.begin(), tok.end(), [](const Token& x) { return x.point; });
    std::rotate(tok.begin(), first_pt == tok.end() ? tok.begin() : first_pt, tok.end());
    std::vector<int> newpts;
    std::map<std::pair<int, int>, std::pair<int, int>> piece; // (curve, arc) -> (new arc, sign)
    for (const auto& x : tok) {
        if (x.point) newpts.push_back(x.id);
        else piece[{x.id, x.arc}] = {std::max<int>(0, static_cast<int>(newpts.size()) - 1), x.sign};
    }

    CombinatorialDiagram out;
    out.genus = refined.genus;
    std::vector<int> new_point(refined.points.size(), -1);
    for (std::size_t p = 0; p < refined.points.size(); ++p) {
        if (static_cast<int>(p) == q) continue;
        new_point[p] = static_cast<int>(out.points.size());
        out.points.push_back({refined.points[p].name, {-1, -1}, {-1, -1}});
    }
    std::vector<int> new_curve(refined.curves.size(), -1);
    for (std::size_t cc = 0; cc < refined.curves.size(); ++cc) {
        if (static_cast<int>(cc) == D) continue;
        new_curve[cc] = static_cast<int>(out.curves.size());
        Curve nc = refined.curves[cc];
        if (static_cast<int>(cc) == B) nc.points = newpts;
        for (auto& p : nc.points) p = new_point[sz(p)];
        out.curves.push_back(nc);
    }
    attach_points(out);
    int Bn = new_curve[sz(B)];
    auto map_dart = [&](const Dart& e) {
        if (e.curve == B || e.curve == D) {
            auto [a, sg] = piece.at({e.curve, e.arc});
            return Dart{Bn, a, e.sign * sg};
        }
        return Dart{new_curve[sz(e.curve)], e.arc, e.sign};
    };

    // re-wire the two merged corners and retrace every boundary cycle
    next[cz.in] = co.out;
    next[co.in] = cz.out;
    std::vector<int> new_region(refined.regions.size(), -1);
    for (std::size_t reg = 0; reg < refined.regions.size(); ++reg) {
        if (static_cast<int>(reg) == Fo) continue;
        new_region[reg] = static_cast<int>(out.regions.size());
        out.regions.push_back({{}, refined.regions[reg].euler});
    }
    new_region[sz(Fo)] = new_region[sz(Fz)];
    out.regions[sz(new_region[sz(Fz)])].euler += refined.regions[sz(Fo)].euler - 1;
    std::set<Dart> done;
    for (const auto& [e, _] : next) {
        if (done.count(e)) continue;
        std::vector<Dart> word;
        Dart cur = e;
        do {
            done.insert(cur);
            word.push_back(map_dart(cur));
            cur = next.at(cur);
        } while (!(cur == e));
        out.regions[sz(new_region[sz(owner.at(e))])].components.push_back(collapse(word));
    }
    out.z = {new_region[sz(Fz)]};
    out.w = {new_region[sz(Fz)]};
    validate(out);
    res.twisted = out;
    return res;
}

BlockReport block_triangularity_check(const TwistResult& t) {
    auto tw = nice_differential(t.twisted, Flavor::KnotHat);
    auto ab = nice_differential(t.alpha_beta, Flavor::KnotHat);
    auto ad = nice_differential(t.alpha_delta, Flavor::KnotHat);
    auto key = [](const CombinatorialDiagram& d, const std::vector<int>& g) {
        std::vector<std::string> names;
        for (int p : g) names.push_back(d.points[sz(p)].name);
        std::sort(names.begin(), names.end());
        return names;
    };
    std::map<std::vector<std::string>, std::size_t> tw_index;
    for (std::size_t i = 0; i < tw.generators.size(); ++i) tw_index[key(t.twisted, tw.generators[i])] = i;
    auto positions = [&](const CombinatorialDiagram& d, const NiceComplex& nc) {
        std::vector<std::size_t> pos;
        for (const auto& g : nc.generators) {
            auto it = tw_index.find(key(d, g));
            if (it == tw_index.end()) throw std::logic_error("untwisted generator missing from the twisted diagram");
            pos.push_back(it->second);
        }
        return pos;
    };
    auto pab = positions(t.alpha_beta, ab);
    auto pad = positions(t.alpha_delta, ad);
    if (pab.size() + pad.size() != tw.generators.size())
        throw std::logic_error("twisted generators are not the union of the alpha-beta and alpha-delta generators");
    const auto& dm = tw.complex.differential;
    BlockReport rep;
    rep.ab_generators = pab.size();
    rep.ad_generators = pad.size();
    rep.lower_block_zero = dm.submatrix(pad, pab).is_zero();
    rep.ab_block_matches = dm.submatrix(pab, pab) == ab.complex.differential;
    rep.ad_block_matches = dm.submatrix(pad, pad) == ad.complex.differential;
    rep.f.source = ad.complex;
    rep.f.target = ab.complex;
    rep.f.matrix = dm.submatrix(pab, pad);
    rep.f_is_chain_map = gf2::verify_chain_map(rep.f).ok;
    rep.twisted_rank = gf2::total_rank(gf2::homology(tw.complex));
    if (rep.f_is_chain_map) {
        auto c = cone::mapping_cone(rep.f, cone::Orientation::MapIntoFirst);
        rep.cone_rank = gf2::total_rank(gf2::homology(c.underlying));
    }
    return rep;
}

json to_json(const BlockReport& r) {
    json f = json::array();
    for (auto [row, col] : r.f.matrix.positions())
        f.push_back({r.f.source.basis.generators[col].id, r.f.target.basis.generators[row].id});
    return {{"ab_generators", r.ab_generators},
            {"ad_generators", r.ad_generators},
            {"lower_block_zero", r.lower_block_zero},
            {"ab_block_matches", r.ab_block_matches},
            {"ad_block_matches", r.ad_block_matches},
            {"f_is_chain_map", r.f_is_chain_map},
            {"f_entries", f},
            {"twisted_rank", r.twisted_rank},
            {"cone_rank", r.cone_rank},
            {"ok", r.ok()}};
}

// ---------------------------------------------------------------- grids

CombinatorialDiagram from_grid(const grid::GridDiagram& g) {
    grid::validate(g);
    int n = g.n;
    CombinatorialDiagram d;
    d.genus = 1;
    auto pid = [n](int col, int row) { return mod(row, n) * n + mod(col, n); };
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col) d.points.push_back({"p" + std::to_string(col) + "_" + std::to_string(row), {-1, -1}, {-1, -1}});
    for (int row = 0; row < n; ++row) {
        Curve c{"a" + std::to_string(row), 'a', {}};
        for (int col = 0; col < n; ++col) c.points.push_back(pid(col, row));
        d.curves.push_back(c);
    }
    for (int col = 0; col < n; ++col) {
        Curve c{"b" + std::to_string(col), 'b', {}};
        for (int row = 0; row < n; ++row) c.points.push_back(pid(col, row));
        d.curves.push_back(c);
    }
    attach_points(d);
    auto alpha = [](int row) { return row; };
    auto beta = [n](int col) { return n + col; };
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col) {
            Region r;
            r.components.push_back({{alpha(row), col, 1},
                                    {beta(mod(col + 1, n)), row, 1},
                                    {alpha(mod(row + 1, n)), col, -1},
                                    {beta(col), row, -1}});
            d.regions.push_back(r);
        }
    for (int col = 0; col < n; ++col) {
        d.z.push_back(pid(col, g.X[sz(col)]));
        d.w.push_back(pid(col, g.O[sz(col)]));
    }
    validate(d);
    return d;
}

} // namespace floer::diagram
