#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

namespace floer {

// Integer Laurent polynomial, stored sparsely; zero coefficients are never kept.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    static LaurentPolynomial monomial(long long coeff, int exponent);
    static LaurentPolynomial constant(long long c) { return monomial(c, 0); }

    long long coeff(int e) const;
    void add(int e, long long c);
    const std::map<int, long long>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int min_degree() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    long long eval_at_one() const;
    bool is_symmetric() const; // f(T) = f(1/T)

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(long long s) const;
    bool operator==(const LaurentPolynomial& o) const { return c_ == o.c_; }

    std::string to_string(const std::string& var = "T") const;

private:
    std::map<int, long long> c_;
};

nlohmann::json to_json(const LaurentPolynomial& p);
LaurentPolynomial polynomial_from_json(const nlohmann::json& j);

// Ranks indexed by (Alexander grading, Maslov grading).
struct BigradedRanks {
    std::map<std::pair<int, int>, std::size_t> ranks;

    std::size_t at(int alexander, int maslov) const;
    void add(int alexander, int maslov, std::size_t r);
    std::size_t total() const;
    // sum over (A, M) of (-1)^M rank T^A
    LaurentPolynomial euler_characteristic() const;
    BigradedRanks tensor(const BigradedRanks& o) const;
    bool operator==(const BigradedRanks& o) const { return ranks == o.ranks; }
};

nlohmann::json to_json(const BigradedRanks& r);
BigradedRanks ranks_from_json(const nlohmann::json& j);

} // namespace floer
