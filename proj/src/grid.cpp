#include "floer/grid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <exception>
#include <thread>

#include "floer/errors.hpp"

namespace floer::grid {

namespace {

bool is_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : p) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

std::vector<int> inverse(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return q;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// Pairs (p, q) with p strictly south-west of q, in doubled coordinates.
struct Points {
    std::vector<int> x, y;
};

long long count_sw(const Points& p, const Points& q) {
    long long k = 0;
    for (std::size_t i = 0; i < p.x.size(); ++i)
        for (std::size_t j = 0; j < q.x.size(); ++j)
            if (p.x[i] < q.x[j] && p.y[i] < q.y[j]) ++k;
    return k;
}

Points dots(const GridState& s) {
    Points p;
    for (std::size_t c = 0; c < s.size(); ++c) {
        p.x.push_back(2 * static_cast<int>(c));
        p.y.push_back(2 * s[c]);
    }
    return p;
}

Points marks(const std::vector<int>& rows) {
    Points p;
    for (std::size_t c = 0; c < rows.size(); ++c) {
        p.x.push_back(2 * static_cast<int>(c) + 1);
        p.y.push_back(2 * rows[c] + 1);
    }
    return p;
}

// M_P(x) = J(x,x) - 2J(x,P) + J(P,P) + 1 with J symmetrized.
long long m_formula(const Points& x, const Points& p, long long xx, long long pp) {
    return xx - count_sw(x, p) - count_sw(p, x) + pp + 1;
}

void require_knot(const GridDiagram& g) {
    int k = components(g);
    if (k != 1)
        throw DomainError("NotAKnot", "grid encodes a link with " + std::to_string(k) + " components",
                          {{"components", k}});
}

void require_size(const GridDiagram& g, const GridOptions& opt) {
    if (g.n > opt.max_n)
        throw DomainError("SizeLimit",
                          "grid size " + std::to_string(g.n) + " exceeds the limit " + std::to_string(opt.max_n),
                          {{"n", g.n}, {"max_n", opt.max_n}});
    if (g.n > 12) throw DomainError("SizeLimit", "grid size above 12 is not supported", {{"n", g.n}});
}

// Precomputed grading data: every state's Alexander and Maslov grading uses the same
// marking-marking counts, so only the dot terms vary.
struct Grader {
    const GridDiagram& g;
    Points xm, om;
    long long xx_marks, oo_marks;

    explicit Grader(const GridDiagram& gg) : g(gg), xm(marks(gg.X)), om(marks(gg.O)) {
        xx_marks = count_sw(xm, xm);
        oo_marks = count_sw(om, om);
    }

    std::pair<int, int> gradings(const GridState& s) const {
        Points d = dots(s);
        long long self = count_sw(d, d);
        long long mo = m_formula(d, om, self, oo_marks);
        long long mx = m_formula(d, xm, self, xx_marks);
        long long twice_a = mo - mx - (g.n - 1);
        if (twice_a % 2 != 0) throw std::logic_error("half-integer Alexander grading on a knot grid");
        return {static_cast<int>(twice_a / 2), static_cast<int>(mo)};
    }
};

// Empty rectangles out of a state; calls emit(a, b) for each, where the target swaps x[a], x[b].
template <class F>
void empty_rectangles(const GridDiagram& g, const GridState& x, F&& emit) {
    const int n = g.n;
    for (int a = 0; a < n; ++a) {
        for (int w = 1; w < n; ++w) {
            int b = (a + w) % n;
            int h = ((x[static_cast<std::size_t>(b)] - x[static_cast<std::size_t>(a)]) % n + n) % n;
            bool empty = true;
            for (int k = 0; k < w && empty; ++k) {
                auto c = static_cast<std::size_t>((a + k) % n);
                int base = x[static_cast<std::size_t>(a)];
                if (k > 0) {
                    int off = ((x[c] - base) % n + n) % n;
                    if (off >= 1 && off < h) empty = false;
                }
                int ox = ((g.X[c] - base) % n + n) % n;
                int oo = ((g.O[c] - base) % n + n) % n;
                if (ox < h || oo < h) empty = false;
            }
            if (empty) emit(a, b);
        }
    }
}

unsigned worker_count() {
    unsigned t = std::thread::hardware_concurrency();
    return t == 0 ? 1 : std::min(t, 16u);
}

template <class F>
void parallel_for(std::size_t count, F&& body) {
    unsigned t = worker_count();
    if (t <= 1 || count < 4096) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    std::size_t chunk = (count + t - 1) / t;
    for (unsigned i = 0; i < t; ++i) {
        std::size_t lo = i * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, i, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

void validate(const GridDiagram& g) {
    if (g.n < 1) throw InputError("grid size must be positive");
    if (!is_permutation(g.X, g.n)) throw InputError("X is not a permutation of 0..n-1");
    if (!is_permutation(g.O, g.n)) throw InputError("O is not a permutation of 0..n-1");
    for (int c = 0; c < g.n; ++c)
        if (g.X[static_cast<std::size_t>(c)] == g.O[static_cast<std::size_t>(c)])
            throw InputError("column " + std::to_string(c) + " has X and O in the same cell");
}

GridDiagram grid_from_json(const nlohmann::json& j) {
    GridDiagram g;
    try {
        g.X = j.at("X").get<std::vector<int>>();
        g.O = j.at("O").get<std::vector<int>>();
        g.n = j.value("n", static_cast<int>(g.X.size()));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed grid JSON: ") + e.what());
    }
    validate(g);
    return g;
}

nlohmann::json to_json(const GridDiagram& g) { return {{"n", g.n}, {"X", g.X}, {"O", g.O}}; }

int components(const GridDiagram& g) {
    validate(g);
    auto oinv = inverse(g.O);
    std::vector<bool> seen(static_cast<std::size_t>(g.n), false);
    int k = 0;
    for (int c = 0; c < g.n; ++c) {
        if (seen[static_cast<std::size_t>(c)]) continue;
        ++k;
        for (int d = c; !seen[static_cast<std::size_t>(d)]; d = oinv[static_cast<std::size_t>(g.X[static_cast<std::size_t>(d)])])
            seen[static_cast<std::size_t>(d)] = true;
    }
    return k;
}

int maslov(const GridDiagram& g, const GridState& x) {
    validate(g);
    if (!is_permutation(x, g.n)) throw InputError("state is not a permutation");
    Points d = dots(x), om = marks(g.O);
    return static_cast<int>(m_formula(d, om, count_sw(d, d), count_sw(om, om)));
}

int alexander(const GridDiagram& g, const GridState& x) {
    validate(g);
    if (!is_permutation(x, g.n)) throw InputError("state is not a permutation");
    require_knot(g);
    return Grader(g).gradings(x).first;
}

std::uint64_t perm_rank(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(i)]) ++smaller;
        r = r * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller);
    }
    return r;
}

std::vector<int> perm_unrank(std::uint64_t r, int n) {
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        auto base = static_cast<std::uint64_t>(n - i);
        digits[static_cast<std::size_t>(i)] = static_cast<int>(r % base);
        r /= base;
    }
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> p;
    p.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto it = pool.begin() + digits[static_cast<std::size_t>(i)];
        p.push_back(*it);
        pool.erase(it);
    }
    return p;
}

TildeComplex tilde_complex(const GridDiagram& g, const GridOptions& opt) {
    validate(g);
    require_knot(g);
    require_size(g, opt);
    const std::uint64_t total = factorial(g.n);
    Grader grader(g);
    TildeComplex t;
    t.complex.graded = true;
    t.complex.differential = gf2::GF2Matrix(total, total);
    GridState x(static_cast<std::size_t>(g.n));
    std::iota(x.begin(), x.end(), 0);
    std::uint64_t idx = 0;
    do {
        auto [a, m] = grader.gradings(x);
        std::string id;
        for (int v : x) id += (id.empty() ? "" : ",") + std::to_string(v);
        t.complex.basis.generators.push_back({id, m});
        t.alexander.push_back(a);
        empty_rectangles(g, x, [&](int p, int q) {
            GridState y = x;
            std::swap(y[static_cast<std::size_t>(p)], y[static_cast<std::size_t>(q)]);
            t.complex.differential.toggle(perm_rank(y), idx);
        });
        ++idx;
    } while (std::next_permutation(x.begin(), x.end()));
    return t;
}

BigradedRanks tilde_homology(const GridDiagram& g, const GridOptions& opt) {
    validate(g);
    require_knot(g);
    require_size(g, opt);
    const std::uint64_t total = factorial(g.n);
    Grader grader(g);
    std::vector<std::int16_t> agr(total), mgr(total);
    parallel_for(total, [&](std::size_t lo, std::size_t hi) {
        if (lo >= hi) return;
        GridState x = perm_unrank(lo, g.n);
        for (std::size_t i = lo; i < hi; ++i) {
            auto [a, m] = grader.gradings(x);
            agr[i] = static_cast<std::int16_t>(a);
            mgr[i] = static_cast<std::int16_t>(m);
            std::next_permutation(x.begin(), x.end());
        }
    });
    std::map<int, std::vector<std::uint32_t>> blocks;
    for (std::uint64_t i = 0; i < total; ++i) blocks[agr[i]].push_back(static_cast<std::uint32_t>(i));

    BigradedRanks out;
    std::vector<std::uint32_t> local(total);
    for (auto& [a, members] : blocks) {
        for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = static_cast<std::uint32_t>(k);
        std::vector<std::vector<std::uint32_t>> adj(members.size());
        parallel_for(members.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) {
                GridState x = perm_unrank(members[k], g.n);
                empty_rectangles(g, x, [&](int p, int q) {
                    GridState y = x;
                    std::swap(y[static_cast<std::size_t>(p)], y[static_cast<std::size_t>(q)]);
                    auto r = perm_rank(y);
                    if (agr[r] != a || mgr[r] != mgr[members[k]] - 1)
                        throw std::logic_error("rectangle does not preserve Alexander / drop Maslov by one");
                    adj[k].push_back(local[r]);
                });
            }
        });
        auto alive = gf2::cancel_complex(std::move(adj));
        for (std::size_t k = 0; k < members.size(); ++k)
            if (alive[k]) out.add(a, mgr[members[k]], 1);
    }
    return out;
}

BigradedRanks divide_by_v(const BigradedRanks& tilde, int k) {
    // Multiplying by (1 + u), u = t^-1 q^-1, acts separately on each diagonal M - A = const.
    std::map<int, std::map<int, long long>> diag; // (M - A) -> A -> coefficient
    for (const auto& [key, r] : tilde.ranks) diag[key.second - key.first][key.first] = static_cast<long long>(r);
    for (int step = 0; step < k; ++step) {
        for (auto& [dm, row] : diag) {
            if (row.empty()) continue;
            const int lo = row.begin()->first, hi = row.rbegin()->first;
            std::map<int, long long> q;
            long long above = 0;
            for (int a = hi; a > lo; --a) {
                auto it = row.find(a);
                long long v = (it == row.end() ? 0 : it->second) - above;
                if (v < 0)
                    throw DomainError("DivisionNotExact", "negative coefficient while dividing by (1 + t^-1 q^-1)",
                                      {{"step", step}, {"alexander", a}, {"maslov", a + dm}});
                if (v != 0) q[a] = v;
                above = v;
            }
            if (row.at(lo) != above)
                throw DomainError("DivisionNotExact", "nonzero remainder while dividing by (1 + t^-1 q^-1)",
                                  {{"step", step}, {"alexander", lo}, {"maslov", lo + dm}});
            row = std::move(q);
        }
    }
    BigradedRanks r;
    for (const auto& [dm, row] : diag)
        for (auto [a, v] : row) r.add(a, a + dm, static_cast<std::size_t>(v));
    return r;
}

BigradedRanks hfk_hat(const GridDiagram& g, const GridOptions& opt) {
    return divide_by_v(tilde_homology(g, opt), g.n - 1);
}

GridDiagram translate(const GridDiagram& g, int dc, int dr) {
    validate(g);
    GridDiagram t = g;
    for (int c = 0; c < g.n; ++c) {
        auto nc = static_cast<std::size_t>(((c + dc) % g.n + g.n) % g.n);
        t.X[nc] = ((g.X[static_cast<std::size_t>(c)] + dr) % g.n + g.n) % g.n;
        t.O[nc] = ((g.O[static_cast<std::size_t>(c)] + dr) % g.n + g.n) % g.n;
    }
    return t;
}

GridDiagram stabilize(const GridDiagram& g, int column) {
    validate(g);
    if (column < 0 || column >= g.n) throw std::out_of_range("stabilize column");
    // New column c+1 and row r+1 next to the X at (c, r); the X moves up one row and
    // the new column gets X at r and O at r+1.
    const int c = column, r = g.X[static_cast<std::size_t>(c)];
    auto shift = [&](int row) { return row > r ? row + 1 : row; };
    GridDiagram s;
    s.n = g.n + 1;
    for (int k = 0; k < g.n; ++k) {
        s.X.push_back(shift(g.X[static_cast<std::size_t>(k)]));
        s.O.push_back(shift(g.O[static_cast<std::size_t>(k)]));
        if (k == c) {
            s.X.back() = r + 1;
            s.X.push_back(r);
            s.O.push_back(r + 1);
        }
    }
    validate(s);
    return s;
}

GridDiagram commute_columns(const GridDiagram& g, int c) {
    validate(g);
    if (c < 0 || c + 1 >= g.n) throw std::out_of_range("commute_columns index");
    auto span = [&](int k) {
        int a = g.X[static_cast<std::size_t>(k)], b = g.O[static_cast<std::size_t>(k)];
        return std::pair{std::min(a, b), std::max(a, b)};
    };
    auto [a1, b1] = span(c);
    auto [a2, b2] = span(c + 1);
    bool distinct = a1 != a2 && a1 != b2 && b1 != a2 && b1 != b2;
    bool disjoint = b1 < a2 || b2 < a1;
    bool nested = (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2);
    if (!distinct || !(disjoint || nested))
        throw DomainError("IllegalMove", "segments in columns " + std::to_string(c) + " and " + std::to_string(c + 1) +
                                             " interleave");
    GridDiagram t = g;
    std::swap(t.X[static_cast<std::size_t>(c)], t.X[static_cast<std::size_t>(c + 1)]);
    std::swap(t.O[static_cast<std::size_t>(c)], t.O[static_cast<std::size_t>(c + 1)]);
    return t;
}

GridDiagram transpose(const GridDiagram& g) {
    validate(g);
    return {g.n, inverse(g.X), inverse(g.O)};
}

GridDiagram reflect(const GridDiagram& g) {
    validate(g);
    GridDiagram r = g;
    std::reverse(r.X.begin(), r.X.end());
    std::reverse(r.O.begin(), r.O.end());
    return r;
}

GridDiagram connected_sum(const GridDiagram& g1, const GridDiagram& g2) {
    require_knot(g1);
    require_knot(g2);
    // Put an X in the top-right cell of g1 and the bottom-left cell of g2, stack the two
    // grids diagonally, then exchange those two X rows to join the components.
    GridDiagram a = translate(g1, g1.n - 1, g1.n - 1 - g1.X[0]);
    GridDiagram b = translate(g2, 0, -g2.X[0]);
    GridDiagram s;
    s.n = a.n + b.n;
    s.X = a.X;
    s.O = a.O;
    for (int k = 0; k < b.n; ++k) {
        s.X.push_back(b.X[static_cast<std::size_t>(k)] + a.n);
        s.O.push_back(b.O[static_cast<std::size_t>(k)] + a.n);
    }
    std::swap(s.X[static_cast<std::size_t>(a.n - 1)], s.X[static_cast<std::size_t>(a.n)]);
    validate(s);
    return s;
}

knot::LinkDiagram to_pd(const GridDiagram& g) {
    validate(g);
    const int n = g.n;
    auto oinv = inverse(g.O), xinv = inverse(g.X);
    auto strictly_between = [](int v, int p, int q) { return v > std::min(p, q) && v < std::max(p, q); };

    struct Passage {
        int crossing;
        bool over;
        int dx, dy; // direction of travel
        int in_label, out_label;
    };
    std::map<std::pair<int, int>, int> crossing_id; // (column, row) -> id
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) {
            int oc = oinv[static_cast<std::size_t>(r)], xc = xinv[static_cast<std::size_t>(r)];
            if (strictly_between(c, oc, xc) && strictly_between(r, g.X[static_cast<std::size_t>(c)], g.O[static_cast<std::size_t>(c)]))
                crossing_id[{c, r}] = static_cast<int>(crossing_id.size());
        }

    std::vector<Passage> passages;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    int label = 1, free_loops = 0;
    for (int start = 0; start < n; ++start) {
        if (used[static_cast<std::size_t>(start)]) continue;
        const int first_label = label;
        std::size_t first_passage = passages.size();
        int c = start;
        while (!used[static_cast<std::size_t>(c)]) {
            used[static_cast<std::size_t>(c)] = true;
            // vertical: X -> O in column c
            int r0 = g.X[static_cast<std::size_t>(c)], r1 = g.O[static_cast<std::size_t>(c)];
            int step = r1 > r0 ? 1 : -1;
            for (int r = r0 + step; r != r1; r += step) {
                auto it = crossing_id.find({c, r});
                if (it == crossing_id.end()) continue;
                passages.push_back({it->second, true, 0, step, label, label + 1});
                ++label;
            }
            // horizontal: O -> X in row r1
            int c1 = xinv[static_cast<std::size_t>(r1)];
            int hstep = c1 > c ? 1 : -1;
            for (int k = c + hstep; k != c1; k += hstep) {
                auto it = crossing_id.find({k, r1});
                if (it == crossing_id.end()) continue;
                passages.push_back({it->second, false, hstep, 0, label, label + 1});
                ++label;
            }
            c = c1;
        }
        if (passages.size() == first_passage) {
            ++free_loops;
            continue;
        }
        passages.back().out_label = first_label; // close up the component
    }

    knot::LinkDiagram d;
    d.free_loops = free_loops;
    d.pd.assign(crossing_id.size(), {0, 0, 0, 0});
    std::vector<const Passage*> under(crossing_id.size()), over(crossing_id.size());
    for (const auto& p : passages) (p.over ? over : under)[static_cast<std::size_t>(p.crossing)] = &p;
    for (std::size_t k = 0; k < crossing_id.size(); ++k) {
        const Passage* u = under[k];
        const Passage* o = over[k];
        // end directions, counterclockwise from the incoming under-strand
        int dx = -u->dx, dy = -u->dy;
        for (int s = 0; s < 4; ++s) {
            int lbl;
            if (dx == -u->dx && dy == -u->dy) lbl = u->in_label;
            else if (dx == u->dx && dy == u->dy) lbl = u->out_label;
            else if (dx == -o->dx && dy == -o->dy) lbl = o->in_label;
            else lbl = o->out_label;
            d.pd[k][static_cast<std::size_t>(s)] = lbl;
            int nx = -dy, ny = dx;
            dx = nx;
            dy = ny;
        }
    }
    return d;
}

} // namespace floer::grid
