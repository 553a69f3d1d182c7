#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "floer/cone.hpp"
#include "floer/errors.hpp"
#include "floer/gf2.hpp"

using namespace floer::gf2;

namespace {

// Size of the row space, by enumerating every subset of rows.
std::size_t brute_rank(const GF2Matrix& m) {
    std::vector<std::uint32_t> rows(m.rows(), 0);
    for (auto [r, c] : m.positions()) rows[r] |= (1U << c);
    std::set<std::uint32_t> span;
    for (std::uint32_t mask = 0; mask < (1U << m.rows()); ++mask) {
        std::uint32_t v = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (mask & (1U << r)) v ^= rows[r];
        span.insert(v);
    }
    std::size_t k = 0;
    while ((std::size_t{1} << k) < span.size()) ++k;
    return k;
}

// Homology by enumerating all vectors of each grading and all boundaries.
std::map<int, std::size_t> brute_homology(const ChainComplex& c) {
    std::map<int, std::size_t> out;
    for (auto& [k, idx] : c.basis.by_grading()) {
        std::size_t ker = 0;
        for (std::uint32_t mask = 0; mask < (1U << idx.size()); ++mask) {
            BitVec v(c.dim());
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (mask & (1U << i)) v.set(idx[i]);
            if (!c.differential.apply(v).any()) ++ker;
        }
        std::set<std::vector<bool>> images;
        auto up = c.basis.by_grading();
        std::vector<std::size_t> ups = up.count(k + 1) ? up[k + 1] : std::vector<std::size_t>{};
        for (std::uint32_t mask = 0; mask < (1U << ups.size()); ++mask) {
            BitVec v(c.dim());
            for (std::size_t i = 0; i < ups.size(); ++i)
                if (mask & (1U << i)) v.set(ups[i]);
            BitVec w = c.differential.apply(v);
            std::vector<bool> key(c.dim());
            for (std::size_t i = 0; i < c.dim(); ++i) key[i] = w.get(i);
            images.insert(key);
        }
        std::size_t lk = 0, li = 0;
        while ((std::size_t{1} << lk) < ker) ++lk;
        while ((std::size_t{1} << li) < images.size()) ++li;
        out[k] = lk - li;
    }
    return out;
}

ChainComplex make(std::vector<int> gradings, std::vector<std::pair<std::size_t, std::size_t>> edges) {
    ChainComplex c;
    for (std::size_t i = 0; i < gradings.size(); ++i) c.basis.generators.push_back({"g" + std::to_string(i), gradings[i]});
    c.differential = GF2Matrix(gradings.size(), gradings.size());
    for (auto [from, to] : edges) c.differential.set(to, from);
    return c;
}

} // namespace

TEST_CASE("rank of trivial matrices") {
    CHECK(rank_gf2(GF2Matrix(3, 3)) == 0);
    CHECK(rank_gf2(GF2Matrix::identity(4)) == 4);
}

TEST_CASE("rank matches row-space enumeration on seeded random matrices") {
    std::mt19937_64 rng(20240601);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 50; ++trial) {
        GF2Matrix m(8, 8);
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 8; ++c)
                if (coin(rng)) m.set(r, c);
        CHECK(rank_gf2(m) == brute_rank(m));
        CHECK(rank_gf2(m) == rank_gf2(m.transpose()));
    }
}

TEST_CASE("homology of small complexes") {
    auto zero = make({0, 0, 0}, {});
    CHECK(homology(zero) == std::map<int, std::size_t>{{0, 3}});
    auto pair = make({1, 0}, {{0, 1}});
    auto h = homology(pair);
    CHECK(total_rank(h) == 0);
}

TEST_CASE("d^2 != 0 is rejected") {
    auto bad = make({2, 1, 0}, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(homology(bad), floer::DomainError);
    auto wrong_degree = make({0, 0}, {{0, 1}});
    CHECK_THROWS_AS(wrong_degree.validate(), floer::DomainError);
}

TEST_CASE("homology matches subspace enumeration on seeded random complexes") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        ChainComplex c;
        do c = floer::cone::random_complex(rng, 12);
        while (c.dim() < 8);
        auto h = homology(c);
        auto b = brute_homology(c);
        CHECK(h == b);
        // total = dim - 2 rank(d)
        CHECK(total_rank(h) == c.dim() - 2 * rank_gf2(c.differential));
        // rank-nullity per grading
        for (auto& [k, idx] : c.basis.by_grading()) {
            std::vector<std::size_t> lower;
            for (std::size_t i = 0; i < c.dim(); ++i)
                if (c.basis.grading(i) == k - 1) lower.push_back(i);
            auto dk = c.differential.submatrix(lower, idx);
            std::size_t r = rank_gf2(dk);
            std::size_t kernel = 0;
            for (std::uint32_t mask = 0; mask < (1U << idx.size()); ++mask) {
                BitVec v(c.dim());
                for (std::size_t i = 0; i < idx.size(); ++i)
                    if (mask & (1U << i)) v.set(idx[i]);
                if (!c.differential.apply(v).any()) ++kernel;
            }
            std::size_t logk = 0;
            while ((std::size_t{1} << logk) < kernel) ++logk;
            CHECK(logk + r == idx.size());
        }
    }
}

TEST_CASE("homology is invariant under generator permutation") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = floer::cone::random_complex(rng, 16);
        std::vector<std::size_t> perm(c.dim());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        ChainComplex p;
        p.basis.generators.resize(c.dim());
        for (std::size_t i = 0; i < c.dim(); ++i) p.basis.generators[perm[i]] = c.basis.generators[i];
        p.differential = GF2Matrix(c.dim(), c.dim());
        for (auto [r, col] : c.differential.positions()) p.differential.set(perm[r], perm[col]);
        CHECK(homology(p) == homology(c));
    }
}

TEST_CASE("chain map verification") {
    // a(1) -> b(0), and a lone cycle c(0).
    auto C = make({1, 0, 0}, {{0, 1}});
    ChainMap zero{C, C, GF2Matrix(3, 3)};
    CHECK(verify_chain_map(zero).ok);
    ChainMap id{C, C, GF2Matrix::identity(3)};
    CHECK(verify_chain_map(id).ok);
    // Target: x(1) -> y(0). Sending the cycle c to x (not a cycle) breaks the square.
    auto T = make({1, 0}, {{0, 1}});
    ChainMap bad{C, T, GF2Matrix(2, 3)};
    bad.matrix.set(0, 0); // a -> x
    bad.matrix.set(1, 1); // b -> y
    CHECK(verify_chain_map(bad).ok);
    ChainMap worse = bad;
    worse.matrix.set(1, 2); // c -> y : dT f(c) = 0 but f(dc) = 0, fine
    CHECK(verify_chain_map(worse).ok);
    // Send the cycle b to nothing but keep a -> x: then dT f(a) = y, f(d a) = f(b) = 0.
    ChainMap broken{C, T, GF2Matrix(2, 3)};
    broken.matrix.set(0, 0);
    auto r = verify_chain_map(broken);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == 0);
}

TEST_CASE("json round trip") {
    auto c = make({1, 0, 0}, {{0, 1}});
    auto j = to_json(c);
    CHECK(complex_from_json(j) == c);
    CHECK_THROWS_AS(complex_from_json(nlohmann::json{{"generators", 3}}), floer::InputError);
}
