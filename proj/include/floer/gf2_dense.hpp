#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "floer/gf2.hpp"

namespace floer::gf2 {

// Row echelon form over GF(2). Every stored row carries a tag vector that
// records which inserted vectors it is built from.
class Echelon {
public:
    Echelon(std::size_t dim, std::size_t tag_dim) : dim_(dim), tag_dim_(tag_dim), owner_(dim, -1) {}

    // Eliminates leading bits; returns (residual, accumulated tag).
    std::pair<BitVec, BitVec> reduce(BitVec v, BitVec tag) const {
        while (true) {
            std::size_t p = v.first();
            if (p == dim_ || owner_[p] < 0) break;
            const auto& [row, rtag] = rows_[static_cast<std::size_t>(owner_[p])];
            v ^= row;
            tag ^= rtag;
        }
        return {std::move(v), std::move(tag)};
    }

    bool contains(const BitVec& v) const { return !reduce(v, BitVec(tag_dim_)).first.any(); }

    // Adds v (with its tag) if it is independent of the stored rows.
    bool insert(BitVec v, BitVec tag) {
        auto [r, t] = reduce(std::move(v), std::move(tag));
        std::size_t p = r.first();
        if (p == dim_) return false;
        owner_[p] = static_cast<std::int64_t>(rows_.size());
        rows_.emplace_back(std::move(r), std::move(t));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }
    std::size_t tag_dim() const { return tag_dim_; }

private:
    std::size_t dim_, tag_dim_;
    std::vector<std::int64_t> owner_;
    std::vector<std::pair<BitVec, BitVec>> rows_;
};

inline BitVec unit(std::size_t n, std::size_t i) {
    BitVec v(n);
    v.set(i);
    return v;
}

inline BitVec column_vec(const GF2Matrix& m, std::size_t c) {
    BitVec v(m.rows());
    for (auto r : m.column(c)) v.set(r);
    return v;
}

// Kernel of m restricted to the listed columns; vectors live in the full column space.
inline std::vector<BitVec> kernel_basis(const GF2Matrix& m, const std::vector<std::size_t>& cols) {
    Echelon e(m.rows(), m.cols());
    std::vector<BitVec> ker;
    for (auto c : cols) {
        BitVec tag = unit(m.cols(), c);
        auto [r, t] = e.reduce(column_vec(m, c), tag);
        if (!r.any()) ker.push_back(std::move(t));
        else e.insert(std::move(r), std::move(t));
    }
    return ker;
}

// Some x supported on cols with m x = b, if one exists.
inline std::optional<BitVec> solve(const GF2Matrix& m, const std::vector<std::size_t>& cols, const BitVec& b) {
    Echelon e(m.rows(), m.cols());
    for (auto c : cols) e.insert(column_vec(m, c), unit(m.cols(), c));
    auto [r, t] = e.reduce(b, BitVec(m.cols()));
    if (r.any()) return std::nullopt;
    return t;
}

} // namespace floer::gf2
