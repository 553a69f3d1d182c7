#include "floer/bigraded.hpp"

#include "floer/errors.hpp"

namespace floer {

LaurentPolynomial LaurentPolynomial::monomial(long long coeff, int exponent) {
    LaurentPolynomial p;
    p.add(exponent, coeff);
    return p;
}

long long LaurentPolynomial::coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? 0 : it->second;
}

void LaurentPolynomial::add(int e, long long c) {
    if (c == 0) return;
    auto& v = c_[e];
    v += c;
    if (v == 0) c_.erase(e);
}

long long LaurentPolynomial::eval_at_one() const {
    long long s = 0;
    for (auto [e, c] : c_) s += c;
    return s;
}

bool LaurentPolynomial::is_symmetric() const {
    for (auto [e, c] : c_)
        if (coeff(-e) != c) return false;
    return true;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    for (auto [e, c] : o.c_) r.add(e, c);
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const { return *this + o * -1; }

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r;
    for (auto [e1, c1] : c_)
        for (auto [e2, c2] : o.c_) r.add(e1 + e2, c1 * c2);
    return r;
}

LaurentPolynomial LaurentPolynomial::operator*(long long s) const {
    LaurentPolynomial r;
    for (auto [e, c] : c_) r.add(e, c * s);
    return r;
}

std::string LaurentPolynomial::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        auto [e, c] = *it;
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        long long a = c < 0 ? -c : c;
        if (e == 0) {
            s += std::to_string(a);
            continue;
        }
        if (a != 1) s += std::to_string(a) + "*";
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

nlohmann::json to_json(const LaurentPolynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coeff", c}});
    return {{"terms", terms}, {"text", p.to_string()}};
}

LaurentPolynomial polynomial_from_json(const nlohmann::json& j) {
    LaurentPolynomial p;
    try {
        for (const auto& t : j.at("terms")) p.add(t.at("exp").get<int>(), t.at("coeff").get<long long>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed polynomial JSON: ") + e.what());
    }
    return p;
}

std::size_t BigradedRanks::at(int alexander, int maslov) const {
    auto it = ranks.find({alexander, maslov});
    return it == ranks.end() ? 0 : it->second;
}

void BigradedRanks::add(int alexander, int maslov, std::size_t r) {
    if (r == 0) return;
    ranks[{alexander, maslov}] += r;
}

std::size_t BigradedRanks::total() const {
    std::size_t t = 0;
    for (const auto& [k, r] : ranks) t += r;
    return t;
}

LaurentPolynomial BigradedRanks::euler_characteristic() const {
    LaurentPolynomial p;
    for (const auto& [k, r] : ranks) {
        long long sign = (k.second % 2 == 0) ? 1 : -1;
        p.add(k.first, sign * static_cast<long long>(r));
    }
    return p;
}

BigradedRanks BigradedRanks::tensor(const BigradedRanks& o) const {
    BigradedRanks t;
    for (const auto& [k1, r1] : ranks)
        for (const auto& [k2, r2] : o.ranks) t.add(k1.first + k2.first, k1.second + k2.second, r1 * r2);
    return t;
}

nlohmann::json to_json(const BigradedRanks& r) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [k, v] : r.ranks) out.push_back({{"alexander", k.first}, {"maslov", k.second}, {"rank", v}});
    return out;
}

BigradedRanks ranks_from_json(const nlohmann::json& j) {
    BigradedRanks r;
    try {
        const auto& arr = j.is_object() && j.contains("ranks") ? j.at("ranks") : j;
        for (const auto& e : arr) {
            auto v = e.at("rank").get<long long>();
            if (v < 0) throw InputError("negative rank in table");
            r.add(e.at("alexander").get<int>(), e.at("maslov").get<int>(), static_cast<std::size_t>(v));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed rank table JSON: ") + e.what());
    }
    return r;
}

} // namespace floer
