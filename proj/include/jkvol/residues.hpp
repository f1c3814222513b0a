#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "exp_terms.hpp"
#include "fixed_points.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "weights.hpp"

namespace jkvol {

inline int neg1pow(long e) { return (e % 2 == 0) ? 1 : -1; }

// ---------------------------------------------------------------------------
// One-variable "+"-residue: for a sum of terms q e^(mu x) x^p, each term with a pole
// (p <= -1) contributes its residue iff the exponential slope is strictly positive:
//     res+ [ q e^(mu x) / x^(-p) ] = q * mu^(-p-1) / (-p-1)!   (mu > 0)
// (the coefficient of x^(-1) in the Taylor expansion of the exponential). Terms with
// negative slope contribute nothing; a pole with exactly zero slope means the input
// weights sit on a wall, which is an error rather than a silent choice of cone.
// ---------------------------------------------------------------------------
inline Rational res_plus_1d(const ExpTerm1Sum& s) {
    Rational total = 0;
    for (const auto& t : s.terms()) {
        if (t.p >= 0) continue; // no pole, residue 0
        if (t.mu == 0)
            throw NonGenericError("res_plus_1d: pole of order " + std::to_string(-t.p) +
                                  " with zero exponential slope");
        if (t.mu < 0) continue;
        long k = -t.p - 1;
        Rational mupow = 1;
        for (long j = 0; j < k; ++j) mupow *= t.mu;
        total += t.q * mupow / Rational(factorial(k));
    }
    return total;
}

// ---------------------------------------------------------------------------
// Inner "+"-residue in y of a sum of terms q e^(mux x + muy y) x^px y^py (x+y)^pz.
// Poles in y sit at y = 0 (py <= -1) and y = -x (pz <= -1); a term contributes the sum of
// both residues iff muy > 0, nothing if muy < 0, and zero slope with a pole is an error.
//
// Both residues are extracted as series coefficients (Cauchy product of the exponential's
// Taylor series against the binomial series of the other factor), not from any re-assembled
// closed form; this keeps the operator an independent oracle for the chamber formulas.
//   at y = 0:   coefficient of y^(-py-1) in e^(muy y) (x+y)^pz, expanded around y = 0:
//               sum_l C(pz, l) x^(pz-l) * muy^(K-l)/(K-l)!   with K = -py-1
//   at y = -x:  substitute u = x+y; coefficient of u^(-pz-1) in e^(muy u) (u-x)^py, the
//               exponential picking up e^(-muy x):
//               sum_l (-1)^(py-l) C(py, l) x^(py-l) * muy^(K2-l)/(K2-l)!  with K2 = -pz-1
// ---------------------------------------------------------------------------
inline ExpTerm1Sum inner_res_plus_y(const ExpTerm2Sum& s) {
    ExpTerm1Sum out;
    for (const auto& t : s.terms()) {
        const bool pole0 = t.py <= -1;
        const bool polex = t.pz <= -1;
        if (!pole0 && !polex) continue; // holomorphic in y
        if (t.muy == 0)
            throw NonGenericError("inner_res_plus_y: pole in y with zero exponential slope");
        if (t.muy < 0) continue;

        if (pole0) {
            const long K = -t.py - 1;
            std::vector<Rational> expcoef(static_cast<size_t>(K) + 1); // muy^j / j!
            Rational mupow = 1;
            for (long j = 0; j <= K; ++j) {
                expcoef[static_cast<size_t>(j)] = mupow / Rational(factorial(j));
                mupow *= t.muy;
            }
            for (long l = 0; l <= K; ++l) {
                Rational coef = Rational(gen_binomial(t.pz, l)) *
                                expcoef[static_cast<size_t>(K - l)];
                out.add(t.q * coef, t.mux, t.px + t.pz - l);
            }
        }
        if (polex) {
            const long K2 = -t.pz - 1;
            for (long l = 0; l <= K2; ++l) {
                Rational mupow = 1;
                for (long j = 0; j < K2 - l; ++j) mupow *= t.muy;
                Rational coef = Rational(gen_binomial(t.py, l)) * mupow /
                                Rational(factorial(K2 - l));
                if (neg1pow(t.py - l) < 0) coef = -coef;
                out.add(t.q * coef, t.mux - t.muy, t.px + t.py - l);
            }
        }
    }
    return out;
}

// Iterated "+"-residue of e^(l1 x + l2 y) / (x^a y^b (x+y)^c): first the inner residue in y,
// then the one-variable residue in x. Requires the slopes to be generic (l2 != 0 when y-poles
// exist, l1 != 0 resp. l1 != l2 when the surviving x-terms carry poles); violations raise
// NonGenericError from the operators themselves.
inline Rational iterated_res_plus(const Rational& l1, const Rational& l2, long a, long b,
                                  long c) {
    ExpTerm2Sum s;
    s.add(Rational(1), l1, l2, -a, -b, -c);
    return res_plus_1d(inner_res_plus_y(s));
}

// ---------------------------------------------------------------------------
// Per-fixed-point meromorphic datum for P^n: orientation sign, the exponential coefficient
// of each simple coordinate, and the pole order attached to each vertex pair.
// ---------------------------------------------------------------------------
struct MeromorphicDatum {
    struct PolePair {
        int i = 0, j = 0; // 1-based vertex pair, i < j
        long order = 0;   // m_i + m_j - 2
    };
    int sign = 1;
    std::vector<Rational> exp_coeffs; // size n
    std::vector<PolePair> pole_orders; // lexicographic pair order, size n(n+1)/2

    long order_of(int i, int j) const {
        for (const auto& p : pole_orders)
            if (p.i == i && p.j == j) return p.order;
        throw ArgumentError("MeromorphicDatum: no such pair");
    }
};

inline MeromorphicDatum build_hf(const FixedPoint& f, const WeightVector& w) {
    FixedPointStats st = stats(f, w);
    MeromorphicDatum d;
    d.sign = st.sign;
    d.exp_coeffs = st.lambda;
    for (int i = 1; i <= w.n; ++i)
        for (int j = i + 1; j <= w.n + 1; ++j)
            d.pole_orders.push_back(
                {i, j, static_cast<long>(st.counts[i - 1]) + st.counts[j - 1] - 2});
    return d;
}

// ---------------------------------------------------------------------------
// Rank-1 volume by localization. Every one of the 2^m fixed points contributes
//   sign(f) * res+[ e^(2 lambda(f) x) / x^(m-2) ],
// and the total carries the prefactor -1/2. The doubled slope 2*lambda = delta_1 - delta_2
// absorbs the multiplicity factor 2^(m-3) of the generic stabilizer, so the prefactor pair
// (-1/2, slope doubling) reproduces the closed-form normalization -1/(2 (m-3)!).
// ---------------------------------------------------------------------------
inline constexpr int kRank1PrefactorDen = -2; // total multiplied by -1/2
inline constexpr int kRank1SlopeFactor = 2;   // residue slope is 2*lambda per fixed point

inline Rational jk_volume_rank1(const WeightVector& w, int threads = 1) {
    if (w.n != 1) throw ArgumentError("jk_volume_rank1: requires n = 1");
    if (w.m() < 4) throw ValidationError("jk_volume_rank1: requires m >= 4");
    validate_weights(w);
    const std::uint64_t count = fixed_point_count(1, w.m());
    const long pole = w.m() - 2;
    auto parts = parallel_ranges<Rational>(
        count, threads, [&](std::uint64_t begin, std::uint64_t end) {
            Rational acc = 0;
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                FixedPoint f = fixed_point_at(1, w.m(), idx);
                MeromorphicDatum d = build_hf(f, w);
                ExpTerm1Sum s;
                s.add(Rational(1), Rational(kRank1SlopeFactor) * d.exp_coeffs[0], -pole);
                try {
                    acc += Rational(d.sign) * res_plus_1d(s);
                } catch (const NonGenericError&) {
                    throw NonGenericError("jk_volume_rank1: weights on a wall", {f});
                }
            }
            return acc;
        });
    Rational total = 0;
    for (const auto& p : parts) total += p;
    return total / Rational(kRank1PrefactorDen);
}

// ---------------------------------------------------------------------------
// Rank-2 volume by localization: across all 3^m fixed points,
//   -1/6 * sum_f sign(f) * res+_x res+_y [ e^(l1 x + l2 y) / (x^a y^b (x+y)^c) ]
// with (l1, l2) the moment coefficients and (a, b, c) the pole orders of the pairs
// (1,2), (2,3), (1,3). The -1/6 bundles the group constant (-1)^(dim G + #positive roots)
// over the Weyl order |W| = 6.
// ---------------------------------------------------------------------------
inline const Rational kRank2Prefactor = Rational(-1, 6);

inline Rational jk_volume_rank2(const WeightVector& w, int threads = 1) {
    if (w.n != 2) throw ArgumentError("jk_volume_rank2: requires n = 2");
    if (w.m() < 4) throw ValidationError("jk_volume_rank2: requires m >= 4");
    validate_weights(w);
    const std::uint64_t count = fixed_point_count(2, w.m());
    auto parts = parallel_ranges<Rational>(
        count, threads, [&](std::uint64_t begin, std::uint64_t end) {
            Rational acc = 0;
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                FixedPoint f = fixed_point_at(2, w.m(), idx);
                MeromorphicDatum d = build_hf(f, w);
                try {
                    acc += Rational(d.sign) *
                           iterated_res_plus(d.exp_coeffs[0], d.exp_coeffs[1],
                                             d.order_of(1, 2), d.order_of(2, 3),
                                             d.order_of(1, 3));
                } catch (const NonGenericError&) {
                    throw NonGenericError("jk_volume_rank2: weights on a wall", {f});
                }
            }
            return acc;
        });
    Rational total = 0;
    for (const auto& p : parts) total += p;
    return kRank2Prefactor * total;
}

// ---------------------------------------------------------------------------
// Quartic del Pezzo residue route: assemble the Laurent polynomial
//   4 x^2 * sum_{0 < m-2k <= m} (m-2k)^(m-3) x^(m-3) / (2^m k! (m-k)! x^m),
// read off the coefficient of 1/x, and apply the overall normalization 1/2 coming from the
// generic Z/2 stabilizer. Returned is the scalar S with Vol = (c/m)^(m-3) * S.
// ---------------------------------------------------------------------------
inline const Rational kDp4StabilizerFactor = Rational(1, 2);

inline Rational dp4_residue_sum(int m) {
    if (m < 4) throw ArgumentError("dp4_residue_sum: requires m >= 4");
    std::map<long, Rational> laurent; // exponent -> coefficient, before the 4x^2 factor
    Integer two_m = 1;
    for (int i = 0; i < m; ++i) two_m *= 2;
    for (int k = 0; 0 < m - 2 * k; ++k) {
        Integer num;
        mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(m - 2 * k),
                      static_cast<unsigned long>(m - 3));
        Rational coef = Rational(num) / Rational(two_m * factorial(k) * factorial(m - k));
        laurent[(m - 3) - m] += coef;
    }
    // multiply by 4 x^2 and extract the coefficient of x^(-1)
    Rational residue = 0;
    for (const auto& [e, q] : laurent)
        if (e + 2 == -1) residue += 4 * q;
    return kDp4StabilizerFactor * residue;
}

// Informational only: the localization constant (-1)^(dim G + #positive roots) / |W| for
// SU(n+1). Matches the -1/6 rank-2 prefactor at n = 2; the rank-1 path uses the normative
// -1/(2 (m-3)!) normalization instead (see kRank1PrefactorDen).
inline Rational jk_group_constant(int n) {
    long dim_g = static_cast<long>(n + 1) * (n + 1) - 1;
    long pos_roots = static_cast<long>(n) * (n + 1) / 2;
    Rational r = Rational(1) / Rational(factorial(n + 1));
    return neg1pow(dim_g + pos_roots) < 0 ? Rational(-r) : r;
}

} // namespace jkvol
