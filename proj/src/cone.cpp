#include "floer/cone.hpp"

#include <algorithm>
#include <set>

#include "floer/errors.hpp"
#include "floer/gf2_dense.hpp"

namespace floer::cone {

using gf2::BitVec;
using gf2::ChainComplex;
using gf2::ChainMap;
using gf2::Echelon;
using gf2::GF2Matrix;

std::string to_string(Orientation o) {
    return o == Orientation::MapIntoFirst ? "map-into-first" : "map-into-second";
}

MappingCone mapping_cone(const ChainMap& f, Orientation orientation) {
    auto check = gf2::verify_chain_map(f);
    if (!check.ok) {
        nlohmann::json detail = {{"reason", check.reason}};
        if (check.witness) detail["generator"] = f.source.basis.generators[*check.witness].id;
        throw DomainError("NotAChainMap", "input is not a chain map: " + check.reason, detail);
    }
    const bool into_first = orientation == Orientation::MapIntoFirst;
    const ChainComplex& C = into_first ? f.target : f.source;
    const ChainComplex& D = into_first ? f.source : f.target;
    const bool graded = C.graded && D.graded;
    const int shift = graded ? 1 : 0;

    MappingCone mc;
    mc.orientation = orientation;
    mc.first_dim = C.dim();
    mc.source_shift = shift;
    auto& X = mc.underlying;
    X.graded = graded;
    for (const auto& g : C.basis.generators)
        X.basis.generators.push_back({"C:" + g.id, g.grading + (into_first ? 0 : shift)});
    for (const auto& g : D.basis.generators)
        X.basis.generators.push_back({"D:" + g.id, g.grading + (into_first ? shift : 0)});

    const std::size_t nc = C.dim(), n = C.dim() + D.dim();
    X.differential = GF2Matrix(n, n);
    for (std::size_t c = 0; c < nc; ++c) {
        std::vector<std::uint32_t> col(C.differential.column(c).begin(), C.differential.column(c).end());
        if (!into_first)
            for (auto r : f.matrix.column(c)) col.push_back(static_cast<std::uint32_t>(nc + r));
        X.differential.set_column(c, std::move(col));
    }
    for (std::size_t c = 0; c < D.dim(); ++c) {
        std::vector<std::uint32_t> col;
        for (auto r : D.differential.column(c)) col.push_back(static_cast<std::uint32_t>(nc + r));
        if (into_first)
            for (auto r : f.matrix.column(c)) col.push_back(r);
        X.differential.set_column(nc + c, std::move(col));
    }
    X.validate();
    return mc;
}

namespace {

// Homology of one grading with explicit cycle representatives.
struct HomologyAt {
    std::vector<BitVec> reps;
    Echelon ech{0, 0};

    HomologyAt(const ChainComplex& Y, int k) {
        auto groups = Y.basis.by_grading();
        std::vector<std::size_t> cols_k, cols_up;
        if (groups.count(k)) cols_k = groups[k];
        if (groups.count(k + 1)) cols_up = groups[k + 1];
        auto ker = gf2::kernel_basis(Y.differential, cols_k);
        ech = Echelon(Y.dim(), ker.size());
        if (Y.graded)
            for (auto c : cols_up) ech.insert(gf2::column_vec(Y.differential, c), BitVec(ker.size()));
        else
            for (auto c : cols_k) ech.insert(gf2::column_vec(Y.differential, c), BitVec(ker.size()));
        for (auto& z : ker) {
            BitVec tag = gf2::unit(ker.size(), reps.size());
            if (ech.insert(z, tag)) reps.push_back(z);
        }
    }

    std::size_t rank() const { return reps.size(); }

    // Coordinates of the class of a cycle; throws if z is not in span(cycles).
    BitVec coords(const BitVec& z) const {
        auto [r, t] = ech.reduce(z, BitVec(ech.tag_dim()));
        if (r.any()) throw std::logic_error("vector is not a cycle of the expected grading");
        BitVec out(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (t.get(i)) out.set(i);
        return out;
    }
};

// Linear map between homology groups; one column per source basis class.
struct HMap {
    std::size_t src = 0, dst = 0;
    std::vector<BitVec> cols;
};

std::size_t rank_of(const HMap& m) {
    Echelon e(m.dst, 0);
    for (const auto& c : m.cols) e.insert(c, BitVec(0));
    return e.rank();
}

BitVec apply(const HMap& m, const BitVec& v) {
    BitVec out(m.dst);
    for (std::size_t i = 0; i < m.src; ++i)
        if (v.get(i)) out ^= m.cols[i];
    return out;
}

std::string describe(const BitVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += v.get(i) ? '1' : '0';
    return s;
}

NodeVerdict check_node(const std::string& name, int k, const HMap& in, const HMap& out, std::size_t dim) {
    NodeVerdict v{name, k, true, ""};
    for (std::size_t i = 0; i < in.src; ++i) {
        BitVec img = apply(out, in.cols[i]);
        if (img.any()) {
            v.exact = false;
            v.witness = "composite nonzero on class " + std::to_string(i) + " -> " + describe(img);
            return v;
        }
    }
    std::size_t ri = rank_of(in), ro = rank_of(out);
    if (ri + ro != dim) {
        v.exact = false;
        v.witness = "rank(in) + rank(out) = " + std::to_string(ri) + " + " + std::to_string(ro) +
                    " != dim " + std::to_string(dim);
    }
    return v;
}

std::set<int> gradings_of(const ChainComplex& c) {
    std::set<int> g;
    for (const auto& x : c.basis.generators) g.insert(x.grading);
    return g;
}

} // namespace

bool LESReport::all_exact() const {
    return connecting_ok && std::all_of(nodes.begin(), nodes.end(), [](const NodeVerdict& n) { return n.exact; });
}

LESReport les_verify(const ChainMap& f, Orientation orientation) {
    MappingCone mc = mapping_cone(f, orientation);
    const ChainComplex& X = mc.underlying;
    const bool into_first = orientation == Orientation::MapIntoFirst;
    // T receives the inclusion, S is the quotient.
    const ChainComplex& T = f.target;
    const ChainComplex& S = f.source;
    const std::size_t t_off = into_first ? 0 : S.dim();
    const std::size_t s_off = into_first ? T.dim() : 0;
    const int s = mc.source_shift;

    GF2Matrix iota(X.dim(), T.dim()), pi(S.dim(), X.dim());
    for (std::size_t i = 0; i < T.dim(); ++i) iota.set(t_off + i, i);
    for (std::size_t i = 0; i < S.dim(); ++i) pi.set(i, s_off + i);

    auto xg = X.basis.by_grading();
    std::set<int> grades = gradings_of(T);
    for (int g : gradings_of(S)) grades.insert(g);
    for (int g : gradings_of(X)) grades.insert(g);
    std::set<int> all;
    for (int g : grades) {
        all.insert(g);
        all.insert(g - s);
        all.insert(g + s);
    }

    std::map<int, HomologyAt> HT, HS, HX;
    for (int g : all) {
        HT.emplace(g, HomologyAt(T, g));
        HS.emplace(g, HomologyAt(S, g));
        HX.emplace(g, HomologyAt(X, g));
    }

    auto embed = [&](const BitVec& v, std::size_t off, std::size_t n) {
        BitVec out(n);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v.get(i)) out.set(off + i);
        return out;
    };

    std::map<int, HMap> G1, G2, Dstar;
    LESReport rep;
    rep.orientation = orientation;
    for (int k : all) {
        // Gamma1_k : H_k(T) -> H_k(X)
        HMap g1{HT.at(k).rank(), HX.at(k).rank(), {}};
        for (const auto& h : HT.at(k).reps) g1.cols.push_back(HX.at(k).coords(embed(h, t_off, X.dim())));
        G1[k] = g1;
        // Gamma2_k : H_k(X) -> H_{k-s}(S)
        HMap g2{HX.at(k).rank(), all.count(k - s) ? HS.at(k - s).rank() : 0, {}};
        for (const auto& h : HX.at(k).reps) g2.cols.push_back(HS.at(k - s).coords(pi.apply(h)));
        G2[k] = g2;
        // connecting map on H_k(S) -> H_k(T) via the snake recipe
        HMap d{HS.at(k).rank(), HT.at(k).rank(), {}};
        HMap fstar = d;
        std::vector<std::size_t> xcols;
        if (xg.count(k + s)) xcols = xg[k + s];
        for (const auto& h : HS.at(k).reps) {
            auto lift = gf2::solve(pi, xcols, h);
            if (!lift) throw std::logic_error("projection is not surjective on chains");
            BitVec bx = X.differential.apply(*lift);
            std::vector<std::size_t> tcols;
            for (std::size_t i = 0; i < T.dim(); ++i)
                if (T.basis.grading(i) == k) tcols.push_back(i);
            auto back = gf2::solve(iota, tcols, bx);
            if (!back) throw std::logic_error("boundary of lift does not lie in the subcomplex");
            d.cols.push_back(HT.at(k).coords(*back));
            fstar.cols.push_back(HT.at(k).coords(f.matrix.apply(h)));
        }
        Dstar[k] = d;
        for (std::size_t i = 0; i < d.cols.size(); ++i)
            if (!(d.cols[i] == fstar.cols[i]) && rep.connecting_ok) {
                rep.connecting_ok = false;
                rep.connecting_witness = "grading " + std::to_string(k) + ", class " + std::to_string(i) + ": d* = " +
                                         describe(d.cols[i]) + ", f* = " + describe(fstar.cols[i]);
            }
    }

    const std::string tname = into_first ? "H(C)" : "H(D)";
    const std::string sname = into_first ? "H(D)" : "H(C)";
    for (int k : all) {
        rep.nodes.push_back(check_node(tname, k, Dstar.at(k), G1.at(k), HT.at(k).rank()));
        rep.nodes.push_back(check_node("H(cone)", k, G1.at(k), G2.at(k), HX.at(k).rank()));
        if (all.count(k + s))
            rep.nodes.push_back(check_node(sname, k, G2.at(k + s), Dstar.at(k), HS.at(k).rank()));
    }
    std::sort(rep.nodes.begin(), rep.nodes.end(),
              [](const NodeVerdict& a, const NodeVerdict& b) { return std::tie(a.grading, a.node) < std::tie(b.grading, b.node); });

    const ChainComplex& C = into_first ? T : S;
    const ChainComplex& D = into_first ? S : T;
    for (int k : all) {
        auto hc = HomologyAt(C, k).rank();
        auto hd = HomologyAt(D, k).rank();
        auto hx = HX.at(k).rank();
        if (hc || hd || hx) rep.ranks[k] = {hc, hx, hd};
    }
    return rep;
}

nlohmann::json to_json(const LESReport& r) {
    nlohmann::json ranks = nlohmann::json::array();
    for (const auto& [k, t] : r.ranks) ranks.push_back({{"grading", k}, {"C", t[0]}, {"cone", t[1]}, {"D", t[2]}});
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : r.nodes) {
        nlohmann::json j = {{"node", n.node}, {"grading", n.grading}, {"exact", n.exact}};
        if (!n.exact) j["witness"] = n.witness;
        nodes.push_back(j);
    }
    nlohmann::json out = {{"orientation", to_string(r.orientation)},
                          {"ranks", ranks},
                          {"nodes", nodes},
                          {"connecting_map_equals_f_star", r.connecting_ok},
                          {"all_exact", r.all_exact()}};
    if (!r.connecting_ok) out["connecting_witness"] = r.connecting_witness;
    return out;
}

ChainComplex random_complex(std::mt19937_64& rng, std::size_t max_dim) {
    std::uniform_int_distribution<std::size_t> dn(1, std::max<std::size_t>(1, max_dim));
    std::uniform_int_distribution<int> dg(0, 3);
    std::bernoulli_distribution coin(0.5);
    const std::size_t n = dn(rng);
    ChainComplex c;
    for (std::size_t i = 0; i < n; ++i) c.basis.generators.push_back({"g" + std::to_string(i), dg(rng)});

    // Normal form: disjoint acyclic pairs plus free generators.
    std::vector<BitVec> d(n, BitVec(n)); // d[col]
    std::vector<bool> used(n, false);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (auto a : order) {
        if (used[a] || !coin(rng)) continue;
        for (auto b : order)
            if (!used[b] && b != a && c.basis.grading(b) == c.basis.grading(a) - 1) {
                d[a].set(b);
                used[a] = used[b] = true;
                break;
            }
    }
    // Conjugate by elementary grading-preserving changes of basis E = I + e_ij (E = E^-1).
    std::uniform_int_distribution<std::size_t> di(0, n - 1);
    for (std::size_t step = 0; step < 4 * n; ++step) {
        std::size_t i = di(rng), j = di(rng);
        if (i == j || c.basis.grading(i) != c.basis.grading(j)) continue;
        for (auto& col : d)
            if (col.get(j)) col.flip(i); // row i += row j
        d[j] ^= d[i];                    // column j += column i
    }
    c.differential = GF2Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t r = 0; r < n; ++r)
            if (d[col].get(r)) c.differential.set(r, col);
    c.validate();
    return c;
}

ChainMap random_chain_map(std::mt19937_64& rng, const ChainComplex& source, const ChainComplex& target) {
    // Unknowns: f(r, c) with equal gradings. Equations: (dT f + f dS)(r, c) = 0.
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> var_index;
    for (std::size_t c = 0; c < source.dim(); ++c)
        for (std::size_t r = 0; r < target.dim(); ++r)
            if (!source.graded || target.basis.grading(r) == source.basis.grading(c)) {
                var_index[{r, c}] = vars.size();
                vars.emplace_back(r, c);
            }
    const std::size_t neq = target.dim() * source.dim();
    GF2Matrix eq(neq, vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
        auto [r, c] = vars[v];
        // (dT f)(r', c) gets f(r, c) for each r' in dT column r
        for (auto rp : target.differential.column(r)) eq.toggle(rp * source.dim() + c, v);
        // (f dS)(r, c') gets f(r, c) for each c' whose dS column contains c
        for (std::size_t cp = 0; cp < source.dim(); ++cp)
            if (source.differential.get(c, cp)) eq.toggle(r * source.dim() + cp, v);
    }
    std::vector<std::size_t> all(vars.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto ker = gf2::kernel_basis(eq, all);
    BitVec sol(vars.size());
    std::bernoulli_distribution coin(0.5);
    for (const auto& k : ker)
        if (coin(rng)) sol ^= k;
    ChainMap f{source, target, GF2Matrix(target.dim(), source.dim())};
    for (std::size_t v = 0; v < vars.size(); ++v)
        if (sol.get(v)) f.matrix.set(vars[v].first, vars[v].second);
    return f;
}

} // namespace floer::cone
