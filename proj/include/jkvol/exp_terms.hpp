#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "rational.hpp"

namespace jkvol {

// One-variable exponential term  q * e^(mu*x) * x^p  with exact rational q, mu and integer p
// of either sign. Sums of these are closed under the residue operators used here.
struct ExpTerm1 {
    Rational q;
    Rational mu;
    long p = 0;
};

// Canonical sum of ExpTerm1: terms keyed by (mu, p), zero coefficients erased on the spot so
// that emptiness and "has a pole" queries are exact.
class ExpTerm1Sum {
public:
    ExpTerm1Sum() = default;

    void add(const Rational& q, const Rational& mu, long p) {
        if (q == 0) return;
        auto key = std::make_pair(mu, p);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, q);
        } else {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add(const ExpTerm1& t) { add(t.q, t.mu, t.p); }

    void add(const ExpTerm1Sum& other) {
        for (const auto& [key, q] : other.terms_) add(q, key.first, key.second);
    }

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    std::vector<ExpTerm1> terms() const {
        std::vector<ExpTerm1> out;
        out.reserve(terms_.size());
        for (const auto& [key, q] : terms_) out.push_back({q, key.first, key.second});
        return out;
    }

    // Coefficient of e^(mu*x) x^p (zero if absent).
    Rational coeff(const Rational& mu, long p) const {
        auto it = terms_.find(std::make_pair(mu, p));
        return it == terms_.end() ? Rational(0) : it->second;
    }

private:
    std::map<std::pair<Rational, long>, Rational> terms_;
};

// Two-variable exponential term  q * e^(mux*x + muy*y) * x^px * y^py * (x+y)^pz.
// This is exactly the shape of every summand appearing in the rank-2 fixed point data, and
// the shape is preserved by multiplication, which is all the residue pipeline needs.
struct ExpTerm2 {
    Rational q;
    Rational mux, muy;
    long px = 0, py = 0, pz = 0;
};

class ExpTerm2Sum {
public:
    ExpTerm2Sum() = default;

    void add(const Rational& q, const Rational& mux, const Rational& muy, long px, long py,
             long pz) {
        if (q == 0) return;
        auto key = std::make_tuple(mux, muy, px, py, pz);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, q);
        } else {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add(const ExpTerm2& t) { add(t.q, t.mux, t.muy, t.px, t.py, t.pz); }

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    std::vector<ExpTerm2> terms() const {
        std::vector<ExpTerm2> out;
        out.reserve(terms_.size());
        for (const auto& [key, q] : terms_)
            out.push_back({q, std::get<0>(key), std::get<1>(key), std::get<2>(key),
                           std::get<3>(key), std::get<4>(key)});
        return out;
    }

private:
    std::map<std::tuple<Rational, Rational, long, long, long>, Rational> terms_;
};

} // namespace jkvol
