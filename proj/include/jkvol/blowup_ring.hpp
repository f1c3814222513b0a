#pragma once

#include <array>
#include <map>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace jkvol {

// ---------------------------------------------------------------------------
// Intersection arithmetic for the blow-up model used by the del Pezzo volume constant.
// Elements live in Q[H, h, x] where H is the hyperplane class upstairs, h the hyperplane
// class on the base, and x the relative class satisfying x^2 = -4hx - 4h^2. Reduction
// rewrites every power x^k (k >= 2) through that relation, so reduced elements have
// x-degree <= 1.
// ---------------------------------------------------------------------------
class RingElement {
public:
    using Key = std::array<int, 3>; // exponents of (H, h, x)

    RingElement() = default;
    static RingElement monomial(const Rational& c, int eH, int eh, int ex) {
        RingElement r;
        if (c != 0) r.coef_[{eH, eh, ex}] = c;
        return r;
    }

    const std::map<Key, Rational>& monomials() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }

    Rational coefficient(int eH, int eh, int ex) const {
        auto it = coef_.find({eH, eh, ex});
        return it == coef_.end() ? Rational(0) : it->second;
    }

    RingElement& add_term(const Rational& c, int eH, int eh, int ex) {
        if (c == 0) return *this;
        Key k{eH, eh, ex};
        auto [it, inserted] = coef_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coef_.erase(it);
        }
        return *this;
    }

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        RingElement r = a;
        for (const auto& [k, c] : b.coef_) r.add_term(c, k[0], k[1], k[2]);
        return r;
    }

    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        RingElement r;
        for (const auto& [ka, ca] : a.coef_)
            for (const auto& [kb, cb] : b.coef_)
                r.add_term(ca * cb, ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]);
        return r;
    }

    // Substitutes x^2 = -4hx - 4h^2 until no monomial has x-degree above 1.
    RingElement reduced() const {
        RingElement r;
        for (const auto& [k, c] : coef_) {
            if (k[2] <= 1) {
                r.add_term(c, k[0], k[1], k[2]);
                continue;
            }
            // peel one power of x^2 off and recurse via the work list below
            r.add_term(-4 * c, k[0], k[1] + 1, k[2] - 1);
            r.add_term(-4 * c, k[0], k[1] + 2, k[2] - 2);
        }
        bool again = false;
        for (const auto& [k, c] : r.coef_)
            if (k[2] > 1) again = true;
        return again ? r.reduced() : r;
    }

private:
    std::map<Key, Rational> coef_;
};

// Coefficients of the reduced power x^k = A_k h^(k-1) x + B_k h^k.
struct XPow {
    Integer A;
    Integer B;
};

// Linear recursion: x^(k+1) = x * (A_k h^(k-1) x + B_k h^k) with x^2 = -4hx - 4h^2 gives
// A_{k+1} = B_k - 4 A_k and B_{k+1} = -4 A_k.
inline XPow xpow_reduce(int k) {
    if (k < 1) throw ArgumentError("xpow_reduce: requires k >= 1");
    XPow p{1, 0};
    for (int i = 1; i < k; ++i) {
        Integer a = p.B - 4 * p.A;
        Integer b = -4 * p.A;
        p = {a, b};
    }
    return p;
}

// Closed form for the same coefficients: A_k = (-1)^(k-1) k 2^(k-1),
// B_k = (-1)^(k-1) (k-1) 2^k. (Both satisfy the recursion above with A_1 = 1, B_1 = 0.)
inline XPow xpow_closed(int k) {
    if (k < 1) throw ArgumentError("xpow_closed: requires k >= 1");
    Integer two_km1 = 1;
    for (int i = 1; i < k; ++i) two_km1 *= 2;
    Integer a = Integer(k) * two_km1;
    Integer b = Integer(k - 1) * two_km1 * 2;
    if (k % 2 == 0) {
        a = -a;
        b = -b;
    }
    return {a, b};
}

// Independent route: computes x^k inside the ring by binary exponentiation with intermediate
// reductions, then reads off the two coefficients.
inline XPow xpow_ring(int k) {
    if (k < 1) throw ArgumentError("xpow_ring: requires k >= 1");
    RingElement x = RingElement::monomial(Rational(1), 0, 0, 1);
    RingElement acc = RingElement::monomial(Rational(1), 0, 0, 0);
    RingElement base = x;
    int e = k;
    while (e > 0) {
        if (e & 1) acc = (acc * base).reduced();
        base = (base * base).reduced();
        e >>= 1;
    }
    Rational a = acc.coefficient(0, k - 1, 1);
    Rational b = acc.coefficient(0, k, 0);
    if (a.get_den() != 1 || b.get_den() != 1)
        throw ConsistencyError("xpow_ring: non-integral reduced coefficients");
    return {a.get_num(), b.get_num()};
}

// Mixed intersection number H^(n+1-i) E^i on the blow-up, for 2 <= i <= n+1. Evaluation
// route: E = H - x-class pullback gives H^(n+1-i) E^i = -8 A_{i-1} after pushing forward
// (the top powers H^(n+1) and H^n E vanish against the fiber class; the surviving term is
// the degree-8 base curve against x^(i-1)).
inline Integer mixed_power(int n, int i) {
    if (i < 2 || i > n + 1) throw ArgumentError("mixed_power: requires 2 <= i <= n+1");
    return -8 * xpow_reduce(i - 1).A;
}

// The same number from the printed closed form, plus the sign variant obtained by
// back-solving the intermediate displays; kept side by side so reports can show whether the
// routes agree.
struct MixedPowerCandidates {
    Integer reduction;       // -8 A_{i-1} via the ring relation
    Integer printed;         // (-1)^(i-1) (i-1) 2^(i+1)
    Integer inter_backsolve; // (i-1) 2^(i+1)
};

inline MixedPowerCandidates mixed_power_candidates(int n, int i) {
    if (i < 2 || i > n + 1)
        throw ArgumentError("mixed_power_candidates: requires 2 <= i <= n+1");
    Integer two_ip1 = 1;
    for (int j = 0; j < i + 1; ++j) two_ip1 *= 2;
    Integer printed = Integer(i - 1) * two_ip1;
    if (i % 2 == 0) printed = -printed;
    return {mixed_power(n, i), printed, Integer(i - 1) * two_ip1};
}

// Leading constant for the del Pezzo family from the printed expansion:
//   c(n) = 8 (n+1) (n-1)^n + sum_{i=1}^{n} (-1)^(i-1) C(n+1, i) (n+1)^(n+1-i) (i-1) 2^(i+1).
inline Integer dp4_c_paper(int n) {
    if (n < 1) throw ArgumentError("dp4_c_paper: requires n >= 1");
    Integer nm1_pow;
    mpz_pow_ui(nm1_pow.get_mpz_t(), Integer(n - 1).get_mpz_t(), static_cast<unsigned long>(n));
    Integer c = 8 * Integer(n + 1) * nm1_pow;
    for (int i = 1; i <= n; ++i) {
        Integer np1_pow;
        mpz_pow_ui(np1_pow.get_mpz_t(), Integer(n + 1).get_mpz_t(),
                   static_cast<unsigned long>(n + 1 - i));
        Integer two_ip1 = 1;
        for (int j = 0; j < i + 1; ++j) two_ip1 *= 2;
        Integer term = gen_binomial(n + 1, i) * np1_pow * Integer(i - 1) * two_ip1;
        if (i % 2 == 0) term = -term;
        c += term;
    }
    return c;
}

// Leading constant re-derived from the intersection ring itself: expand
//   c(n) = 8 (n+1) (n-1)^n - sum_{i=0}^{n+1} C(n+1, i) (n+1)^(n+1-i) (-1)^i V_i
// with V_0 = H^(n+1) = 1, V_1 = H^n E = 0, and V_i = mixed_power(n, i) for i >= 2.
inline Integer dp4_c_ring(int n) {
    if (n < 1) throw ArgumentError("dp4_c_ring: requires n >= 1");
    Integer nm1_pow;
    mpz_pow_ui(nm1_pow.get_mpz_t(), Integer(n - 1).get_mpz_t(), static_cast<unsigned long>(n));
    Integer c = 8 * Integer(n + 1) * nm1_pow;
    for (int i = 0; i <= n + 1; ++i) {
        Integer vi;
        if (i == 0)
            vi = 1;
        else if (i == 1)
            vi = 0;
        else
            vi = mixed_power(n, i);
        Integer np1_pow;
        mpz_pow_ui(np1_pow.get_mpz_t(), Integer(n + 1).get_mpz_t(),
                   static_cast<unsigned long>(n + 1 - i));
        Integer term = gen_binomial(n + 1, i) * np1_pow * vi;
        if (i % 2 == 1) term = -term;
        c -= term;
    }
    return c;
}

// Everything a diagnostic dump needs about the ring computation at a given n: reduced powers
// of x, the mixed intersection numbers with their candidate variants, and the two constants.
struct RingTrace {
    int n = 0;
    std::vector<XPow> xpows;                        // k = 1 .. n
    std::vector<MixedPowerCandidates> mixed;        // i = 2 .. n+1
    Integer c_ring;
    Integer c_paper;
};

inline RingTrace ring_trace(int n) {
    if (n < 1) throw ArgumentError("ring_trace: requires n >= 1");
    RingTrace t;
    t.n = n;
    for (int k = 1; k <= n; ++k) t.xpows.push_back(xpow_reduce(k));
    for (int i = 2; i <= n + 1; ++i) t.mixed.push_back(mixed_power_candidates(n, i));
    t.c_ring = dp4_c_ring(n);
    t.c_paper = dp4_c_paper(n);
    return t;
}

} // namespace jkvol
