#include "floer/gf2.hpp"

#include <algorithm>
#include <bit>

#include "floer/errors.hpp"

namespace floer::gf2 {

namespace {

// Symmetric difference of two sorted lists.
std::vector<std::uint32_t> sym_diff(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void erase_sorted(std::vector<std::uint32_t>& v, std::uint32_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
}

} // namespace

bool BitVec::any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVec::first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
    return n_;
}

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.col_[i] = {static_cast<std::uint32_t>(i)};
    return m;
}

bool GF2Matrix::get(std::size_t r, std::size_t c) const {
    const auto& v = col_.at(c);
    return std::binary_search(v.begin(), v.end(), static_cast<std::uint32_t>(r));
}

void GF2Matrix::set(std::size_t r, std::size_t c, bool v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("GF2Matrix::set out of bounds");
    auto& col = col_[c];
    auto it = std::lower_bound(col.begin(), col.end(), static_cast<std::uint32_t>(r));
    bool present = it != col.end() && *it == r;
    if (v && !present) col.insert(it, static_cast<std::uint32_t>(r));
    if (!v && present) col.erase(it);
}

void GF2Matrix::toggle(std::size_t r, std::size_t c) { set(r, c, !get(r, c)); }

void GF2Matrix::set_column(std::size_t c, std::vector<std::uint32_t> rows) {
    std::sort(rows.begin(), rows.end());
    // duplicates cancel in pairs
    std::vector<std::uint32_t> clean;
    for (std::size_t i = 0; i < rows.size();) {
        std::size_t j = i;
        while (j < rows.size() && rows[j] == rows[i]) ++j;
        if ((j - i) % 2 == 1) {
            if (rows[i] >= rows_) throw std::out_of_range("GF2Matrix::set_column row out of bounds");
            clean.push_back(rows[i]);
        }
        i = j;
    }
    col_.at(c) = std::move(clean);
}

std::size_t GF2Matrix::nnz() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
}

std::vector<std::pair<std::size_t, std::size_t>> GF2Matrix::positions() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t c = 0; c < cols_; ++c)
        for (auto r : col_[c]) out.emplace_back(r, c);
    std::sort(out.begin(), out.end());
    return out;
}

GF2Matrix GF2Matrix::transpose() const {
    GF2Matrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (auto r : col_[c]) t.col_[r].push_back(static_cast<std::uint32_t>(c));
    return t;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("GF2Matrix product shape mismatch");
    GF2Matrix p(rows_, o.cols_);
    std::vector<std::uint8_t> parity(rows_, 0), seen(rows_, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t c = 0; c < o.cols_; ++c) {
        touched.clear();
        for (auto k : o.col_[c])
            for (auto r : col_[k]) {
                if (!seen[r]) {
                    seen[r] = 1;
                    touched.push_back(r);
                }
                parity[r] ^= 1U;
            }
        std::vector<std::uint32_t> col;
        for (auto r : touched) {
            if (parity[r]) col.push_back(r);
            parity[r] = seen[r] = 0;
        }
        std::sort(col.begin(), col.end());
        p.col_[c] = std::move(col);
    }
    return p;
}

GF2Matrix GF2Matrix::operator+(const GF2Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("GF2Matrix sum shape mismatch");
    GF2Matrix s(rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c) s.col_[c] = sym_diff(col_[c], o.col_[c]);
    return s;
}

BitVec GF2Matrix::apply(const BitVec& v) const {
    BitVec out(rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        if (v.get(c))
            for (auto r : col_[c]) out.flip(r);
    return out;
}

GF2Matrix GF2Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    std::vector<std::int64_t> rmap(rows_, -1);
    for (std::size_t i = 0; i < rows.size(); ++i) rmap[rows[i]] = static_cast<std::int64_t>(i);
    GF2Matrix s(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<std::uint32_t> col;
        for (auto r : col_[cols[j]])
            if (rmap[r] >= 0) col.push_back(static_cast<std::uint32_t>(rmap[r]));
        std::sort(col.begin(), col.end());
        s.col_[j] = std::move(col);
    }
    return s;
}

std::size_t rank_gf2(const GF2Matrix& m) {
    const GF2Matrix& a = m;
    std::vector<BitVec> vecs;
    vecs.reserve(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        BitVec v(a.rows());
        for (auto r : a.column(c)) v.set(r);
        vecs.push_back(std::move(v));
    }
    std::vector<std::int64_t> pivot_owner(a.rows(), -1);
    std::vector<BitVec> basis;
    for (auto& v : vecs) {
        while (true) {
            std::size_t p = v.first();
            if (p == v.size()) break;
            if (pivot_owner[p] < 0) {
                pivot_owner[p] = static_cast<std::int64_t>(basis.size());
                basis.push_back(v);
                break;
            }
            v ^= basis[static_cast<std::size_t>(pivot_owner[p])];
        }
    }
    return basis.size();
}

std::map<int, std::vector<std::size_t>> GradedBasis::by_grading() const {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < generators.size(); ++i) out[generators[i].grading].push_back(i);
    return out;
}

void ChainComplex::validate() const {
    const std::size_t n = dim();
    if (differential.rows() != n || differential.cols() != n)
        throw DomainError("InvalidComplex", "differential shape does not match basis size");
    std::vector<std::string> ids;
    for (const auto& g : basis.generators) ids.push_back(g.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw DomainError("InvalidComplex", "generator ids are not unique");
    for (std::size_t c = 0; c < n; ++c) {
        for (auto r : differential.column(c)) {
            if (graded && basis.grading(r) != basis.grading(c) - 1)
                throw DomainError("InvalidComplex", "differential does not lower grading by 1",
                                  {{"from", basis.generators[c].id}, {"to", basis.generators[r].id}});
            if (!graded && (basis.grading(r) != 0 || basis.grading(c) != 0))
                throw DomainError("InvalidComplex", "ungraded complex must keep every generator at grading 0");
        }
    }
    GF2Matrix sq = differential * differential;
    if (!sq.is_zero()) {
        auto pos = sq.positions().front();
        throw DomainError("InvalidComplex", "differential squared is nonzero",
                          {{"from", basis.generators[pos.second].id}, {"to", basis.generators[pos.first].id}});
    }
}

ChainMapCheck verify_chain_map(const ChainMap& f) {
    const auto& s = f.source;
    const auto& t = f.target;
    if (f.matrix.rows() != t.dim() || f.matrix.cols() != s.dim())
        return {false, std::nullopt, "matrix shape does not match source and target"};
    for (std::size_t c = 0; c < s.dim(); ++c)
        for (auto r : f.matrix.column(c))
            if (s.graded && t.graded && t.basis.grading(r) != s.basis.grading(c))
                return {false, c, "map does not preserve grading"};
    GF2Matrix lhs = t.differential * f.matrix;
    GF2Matrix rhs = f.matrix * s.differential;
    for (std::size_t c = 0; c < s.dim(); ++c)
        if (lhs.column(c) != rhs.column(c)) return {false, c, "map does not commute with the differentials"};
    return {};
}

std::vector<bool> cancel_complex(std::vector<std::vector<std::uint32_t>> out) {
    const std::size_t n = out.size();
    std::vector<std::vector<std::uint32_t>> in(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(out[v].begin(), out[v].end());
        for (auto u : out[v]) in[u].push_back(static_cast<std::uint32_t>(v));
    }
    std::vector<bool> alive(n, true);
    for (std::size_t x = 0; x < n; ++x) {
        while (alive[x] && !out[x].empty()) {
            // Prefer the target with the fewest incoming edges to limit fill-in.
            std::uint32_t y = out[x].front();
            for (auto u : out[x])
                if (in[u].size() < in[y].size()) y = u;
            auto xs = out[x];
            erase_sorted(xs, y);
            auto ys = in[y];
            erase_sorted(ys, static_cast<std::uint32_t>(x));
            // d w += <d w, y> d x for every w hitting y; zig-zag update.
            for (auto w : ys) out[w] = sym_diff(out[w], xs);
            for (auto u : xs) in[u] = sym_diff(in[u], ys);
            for (auto u : out[x]) erase_sorted(in[u], static_cast<std::uint32_t>(x));
            for (auto w : in[x]) erase_sorted(out[w], static_cast<std::uint32_t>(x));
            for (auto u : out[y]) erase_sorted(in[u], y);
            for (auto w : in[y]) erase_sorted(out[w], y);
            out[x].clear();
            in[x].clear();
            out[y].clear();
            in[y].clear();
            alive[x] = false;
            alive[y] = false;
        }
    }
    return alive;
}

std::map<int, std::size_t> homology(const ChainComplex& c) {
    c.validate();
    std::vector<std::vector<std::uint32_t>> out(c.dim());
    for (std::size_t v = 0; v < c.dim(); ++v) out[v] = c.differential.column(v);
    auto alive = cancel_complex(std::move(out));
    std::map<int, std::size_t> ranks;
    for (std::size_t v = 0; v < c.dim(); ++v) {
        auto& r = ranks[c.basis.grading(v)];
        if (alive[v]) ++r;
    }
    return ranks;
}

std::size_t total_rank(const std::map<int, std::size_t>& ranks) {
    std::size_t t = 0;
    for (const auto& [k, r] : ranks) t += r;
    return t;
}

nlohmann::json to_json(const ChainComplex& c) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : c.basis.generators) gens.push_back({{"id", g.id}, {"grading", g.grading}});
    nlohmann::json d = nlohmann::json::array();
    for (auto [r, col] : c.differential.positions()) d.push_back({r, col});
    return {{"generators", gens}, {"differential", d}, {"graded", c.graded}};
}

ChainComplex complex_from_json(const nlohmann::json& j) {
    ChainComplex c;
    try {
        for (const auto& g : j.at("generators")) c.basis.generators.push_back({g.at("id").get<std::string>(), g.at("grading").get<int>()});
        c.graded = j.value("graded", true);
        const std::size_t n = c.basis.size();
        c.differential = GF2Matrix(n, n);
        for (const auto& p : j.at("differential")) {
            auto r = p.at(0).get<std::size_t>();
            auto col = p.at(1).get<std::size_t>();
            if (r >= n || col >= n) throw InputError("differential entry out of range");
            c.differential.set(r, col);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed complex JSON: ") + e.what());
    }
    return c;
}

} // namespace floer::gf2
