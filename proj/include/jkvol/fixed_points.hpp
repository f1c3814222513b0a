#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "weights.hpp"

namespace jkvol {

// A torus fixed point of the product of m projective spaces: an assignment f_1..f_m of each
// hyperplane index to one of the n+1 coordinate vertices (1-based).
using FixedPoint = std::vector<int>;

inline std::uint64_t fixed_point_count(int n, int m) {
    if (n < 0 || m < 0) throw ArgumentError("fixed_point_count: negative arguments");
    std::uint64_t c = 1;
    for (int i = 0; i < m; ++i) {
        std::uint64_t next = c * static_cast<std::uint64_t>(n + 1);
        if (next / static_cast<std::uint64_t>(n + 1) != c)
            throw ArgumentError("fixed_point_count: (n+1)^m overflows");
        c = next;
    }
    return c;
}

// Fixed point at `index` in lexicographic order (index 0 = all ones, last digit fastest).
inline FixedPoint fixed_point_at(int n, int m, std::uint64_t index) {
    FixedPoint f(static_cast<size_t>(m), 1);
    const std::uint64_t base = static_cast<std::uint64_t>(n + 1);
    for (int pos = m - 1; pos >= 0; --pos) {
        f[static_cast<size_t>(pos)] = 1 + static_cast<int>(index % base);
        index /= base;
    }
    return f;
}

// Materializes all (n+1)^m fixed points in lexicographic order. Guarded: callers that only
// need a pass over the points should use scan_fixed_points instead of materializing.
inline std::vector<FixedPoint> enumerate_fixed_points(int n, int m) {
    std::uint64_t count = fixed_point_count(n, m);
    if (count > (1ull << 24))
        throw ArgumentError("enumerate_fixed_points: refusing to materialize " +
                            std::to_string(count) + " points; use scan_fixed_points");
    std::vector<FixedPoint> all;
    all.reserve(static_cast<size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) all.push_back(fixed_point_at(n, m, i));
    return all;
}

// Weights cleared of denominators: d_i = a_i / L with a_i integral and T = sum a_i.
// All chamber classifications are sign conditions, so scans work purely in integers.
struct ScaledWeights {
    std::vector<Integer> a;
    Integer L = 1;
    Integer T = 0;
};

inline ScaledWeights scale_weights(const WeightVector& w) {
    ScaledWeights s;
    for (const auto& q : w.d)
        mpz_lcm(s.L.get_mpz_t(), s.L.get_mpz_t(), q.get_den_mpz_t());
    for (const auto& q : w.d) {
        s.a.emplace_back(q.get_num() * (s.L / q.get_den()));
        s.T += s.a.back();
    }
    return s;
}

// Streams fixed points with indices in [begin, end) in lexicographic order. The visitor is
// called as visit(f, counts, t) where counts[j] = m_{j+1}(f) and t[j] is the a-weighted sum
// over positions assigned to vertex j+1 (so delta_{j+1} = t[j] / L). Counts and sums are
// maintained incrementally; one odometer step costs O(1) big-integer operations amortized.
template <class Visitor>
void scan_fixed_points(int n, const std::vector<Integer>& a, std::uint64_t begin,
                       std::uint64_t end, Visitor&& visit) {
    const int m = static_cast<int>(a.size());
    const int base = n + 1;
    if (begin >= end) return;
    if (m == 0) {
        FixedPoint f;
        std::vector<int> counts(static_cast<size_t>(base), 0);
        std::vector<Integer> t(static_cast<size_t>(base), Integer(0));
        visit(f, counts, t);
        return;
    }

    std::vector<Integer> suffix(static_cast<size_t>(m) + 1, Integer(0));
    for (int i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + a[i];

    FixedPoint f = fixed_point_at(n, m, begin);
    std::vector<int> counts(static_cast<size_t>(base), 0);
    std::vector<Integer> t(static_cast<size_t>(base), Integer(0));
    for (int pos = 0; pos < m; ++pos) {
        counts[f[pos] - 1]++;
        t[f[pos] - 1] += a[pos];
    }

    for (std::uint64_t idx = begin;; ++idx) {
        visit(std::as_const(f), std::as_const(counts), std::as_const(t));
        if (idx + 1 >= end) break;
        int pos = m - 1;
        while (f[pos] == base) --pos;
        if (pos < m - 1) {
            // every digit right of pos is `base`; reset them all to 1 at once
            t[base - 1] -= suffix[pos + 1];
            t[0] += suffix[pos + 1];
            counts[base - 1] -= m - 1 - pos;
            counts[0] += m - 1 - pos;
            for (int q = pos + 1; q < m; ++q) f[q] = 1;
        }
        const int v = f[pos];
        f[pos] = v + 1;
        counts[v - 1]--;
        counts[v]++;
        t[v - 1] -= a[pos];
        t[v] += a[pos];
    }
}

// Moment coefficients of a fixed point with vertex weight sums delta_1..delta_{n+1}: the
// coefficient of the i-th simple coordinate is
//   (1 - i/(n+1)) * (delta_1 + .. + delta_i) - (i/(n+1)) * (delta_{i+1} + .. + delta_{n+1}).
// For n=1 this is (delta_1 - delta_2)/2; for n=2 it is (xi_1, xi_1 + xi_2).
inline std::vector<Rational> moment_coefficients(int n, const std::vector<Rational>& delta) {
    if (static_cast<int>(delta.size()) != n + 1)
        throw ArgumentError("moment_coefficients: delta must have n+1 entries");
    std::vector<Rational> lam(static_cast<size_t>(n));
    Rational head = 0;
    Rational total = 0;
    for (const auto& d : delta) total += d;
    for (int i = 1; i <= n; ++i) {
        head += delta[i - 1];
        // (1 - i/(n+1)) * head - (i/(n+1)) * (total - head)  ==  head - i * total/(n+1)
        lam[i - 1] = head - Rational(i) * total / Rational(n + 1);
    }
    return lam;
}

// Per-fixed-point data: vertex multiplicities, vertex weight sums, centered coordinates (rank
// 2), moment coefficients, and the orientation sign (-1)^(sum_j (j-1) m_j), i.e. the parity
// of the number of positions assigned to an even vertex. (The variant (-1)^(m(n+1) - sum j m_j)
// agrees for even n*m but gives volumes of the wrong sign for n=1 with m odd: the equal-weight
// five-term quotient has positive volume by the classical random-flight return density, and
// only this sign reproduces it.)
struct FixedPointStats {
    int n = 1;
    std::vector<int> counts;
    std::vector<Rational> delta;
    Rational delta_total;
    std::vector<Rational> xi;     // only filled for n == 2
    std::vector<Rational> lambda; // size n
    int sign = 1;
};

inline FixedPointStats stats(const FixedPoint& f, const WeightVector& w) {
    const int n = w.n;
    const int m = w.m();
    if (static_cast<int>(f.size()) != m)
        throw ArgumentError("stats: fixed point length differs from weight count");
    FixedPointStats s;
    s.n = n;
    s.counts.assign(static_cast<size_t>(n) + 1, 0);
    s.delta.assign(static_cast<size_t>(n) + 1, Rational(0));
    long weighted = 0;
    for (int i = 0; i < m; ++i) {
        int v = f[i];
        if (v < 1 || v > n + 1) throw ArgumentError("stats: vertex index out of range");
        s.counts[v - 1]++;
        s.delta[v - 1] += w.d[i];
        weighted += v;
    }
    s.delta_total = w.total();
    long parity = (weighted - m) % 2; // weighted >= m since every f_i >= 1
    s.sign = (parity == 0) ? 1 : -1;
    if (n == 2) {
        Rational third = s.delta_total / 3;
        s.xi = {s.delta[0] - third, s.delta[1] - third, s.delta[2] - third};
    }
    s.lambda = moment_coefficients(n, s.delta);
    return s;
}

// Chamber membership. For rank 1 the fan has a single relevant half ("FPlus"); for rank 2 the
// two chambers are cut out by strict sign conditions on the centered coordinates. "Wall"
// means some classifying quantity is exactly zero, in which case no volume formula applies.
enum class ChamberLabel { A, B, FPlus, Outside, Wall };

inline const char* to_string(ChamberLabel c) {
    switch (c) {
        case ChamberLabel::A: return "A";
        case ChamberLabel::B: return "B";
        case ChamberLabel::FPlus: return "F+";
        case ChamberLabel::Outside: return "outside";
        case ChamberLabel::Wall: return "wall";
    }
    return "?";
}

// Rank-1 classification from any value with the sign of delta_1 - delta_2.
inline ChamberLabel classify_rank1_signs(int sgn_diff) {
    if (sgn_diff == 0) return ChamberLabel::Wall;
    return sgn_diff > 0 ? ChamberLabel::FPlus : ChamberLabel::Outside;
}

// Rank-2 classification from the signs of xi_1, xi_2, xi_3.
inline ChamberLabel classify_rank2_signs(int s1, int s2, int s3) {
    if (s1 == 0 || s2 == 0 || s3 == 0) return ChamberLabel::Wall;
    if (s2 < 0 && s3 < 0) return ChamberLabel::A;
    if (s1 > 0 && s2 > 0) return ChamberLabel::B;
    return ChamberLabel::Outside;
}

inline ChamberLabel classify(const FixedPointStats& s) {
    if (s.n == 1) {
        Rational diff = s.delta[0] - s.delta[1];
        return classify_rank1_signs(sgn(diff));
    }
    if (s.n == 2) {
        return classify_rank2_signs(sgn(s.xi[0]), sgn(s.xi[1]), sgn(s.xi[2]));
    }
    throw ArgumentError("classify: chamber structure implemented for n in {1,2} only");
}

// Counts per label over a full enumeration.
struct ChamberCensus {
    std::uint64_t a = 0, b = 0, f_plus = 0, outside = 0, wall = 0;
    std::uint64_t total = 0;
};

// Scans every fixed point and returns those sitting on a wall (some classifying quantity
// exactly zero). A volume computation requires this list to be empty.
inline std::vector<FixedPoint> wall_check(const WeightVector& w) {
    validate_weights(w);
    const int n = w.n;
    if (n != 1 && n != 2)
        throw ArgumentError("wall_check: implemented for n in {1,2}");
    ScaledWeights sw = scale_weights(w);
    std::vector<FixedPoint> bad;
    std::uint64_t count = fixed_point_count(n, w.m());
    scan_fixed_points(n, sw.a, 0, count,
                      [&](const FixedPoint& f, const std::vector<int>&,
                          const std::vector<Integer>& t) {
                          if (n == 1) {
                              Integer u = t[0] - t[1];
                              if (sgn(u) == 0) bad.push_back(f);
                          } else {
                              Integer u1 = 3 * t[0] - sw.T;
                              Integer u2 = 3 * t[1] - sw.T;
                              Integer u3 = 3 * t[2] - sw.T;
                              if (sgn(u1) == 0 || sgn(u2) == 0 || sgn(u3) == 0)
                                  bad.push_back(f);
                          }
                      });
    return bad;
}

} // namespace jkvol
