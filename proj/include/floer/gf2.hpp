#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace floer::gf2 {

// Dense bit vector used for word-parallel elimination.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    bool any() const;
    // Index of the lowest set bit, or size() when the vector is zero.
    std::size_t first() const;
    std::size_t count() const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Sparse matrix over GF(2). Each column is a sorted list of the rows holding a 1.
class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_(cols) {}

    static GF2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v = true);
    void toggle(std::size_t r, std::size_t c);
    const std::vector<std::uint32_t>& column(std::size_t c) const { return col_[c]; }
    void set_column(std::size_t c, std::vector<std::uint32_t> rows);
    std::size_t nnz() const;
    bool is_zero() const { return nnz() == 0; }
    std::vector<std::pair<std::size_t, std::size_t>> positions() const;

    GF2Matrix transpose() const;
    GF2Matrix operator*(const GF2Matrix& o) const;
    GF2Matrix operator+(const GF2Matrix& o) const;
    BitVec apply(const BitVec& v) const;
    // Restriction to the given row and column index lists (in that order).
    GF2Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

    bool operator==(const GF2Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && col_ == o.col_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::uint32_t>> col_;
};

std::size_t rank_gf2(const GF2Matrix& m);

struct Generator {
    std::string id;
    int grading = 0;
    bool operator==(const Generator&) const = default;
};

struct GradedBasis {
    std::vector<Generator> generators;

    std::size_t size() const { return generators.size(); }
    int grading(std::size_t i) const { return generators[i].grading; }
    // Generator indices grouped by grading, each group in insertion order.
    std::map<int, std::vector<std::size_t>> by_grading() const;
    bool operator==(const GradedBasis&) const = default;
};

// A complex with a degree -1 differential. Ungraded complexes put every
// generator in grading 0 and skip the degree check.
struct ChainComplex {
    GradedBasis basis;
    GF2Matrix differential;
    bool graded = true;

    std::size_t dim() const { return basis.size(); }
    // Throws DomainError("InvalidComplex") on a shape, degree or d^2 violation.
    void validate() const;
    bool operator==(const ChainComplex&) const = default;
};

struct ChainMap {
    ChainComplex source, target;
    GF2Matrix matrix; // target.dim() x source.dim()
};

struct ChainMapCheck {
    bool ok = true;
    std::optional<std::size_t> witness; // source generator where the square fails
    std::string reason;
};

ChainMapCheck verify_chain_map(const ChainMap& f);

// Homology ranks per grading; gradings with rank 0 are kept if they carry generators.
std::map<int, std::size_t> homology(const ChainComplex& c);
std::size_t total_rank(const std::map<int, std::size_t>& ranks);

// Gaussian cancellation on a sparse complex given by out-adjacency lists.
// Returns a flag per generator telling whether it survives; the survivors
// span a complex with zero differential, so they count homology.
std::vector<bool> cancel_complex(std::vector<std::vector<std::uint32_t>> out);

nlohmann::json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const nlohmann::json& j);

} // namespace floer::gf2
