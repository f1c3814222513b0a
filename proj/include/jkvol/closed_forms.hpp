#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blowup_ring.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "fixed_points.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "residues.hpp"
#include "weights.hpp"

namespace jkvol {

enum class Method { Closed, Residue, Both };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Closed: return "closed";
        case Method::Residue: return "residue";
        case Method::Both: return "both";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    if (s == "closed") return Method::Closed;
    if (s == "residue") return Method::Residue;
    if (s == "both") return Method::Both;
    throw ArgumentError("unknown method '" + s + "' (expected closed|residue|both)");
}

// ---------------------------------------------------------------------------
// Chamber polynomial coefficients. For a fixed point with vertex multiplicities
// (m1, m2, m3) put a = m1+m2-2, b = m2+m3-2, eps = a+b-1, and let D be the polynomial
// degree. The contribution of the point is a homogeneous degree-D polynomial in the
// centered coordinates; these builders return its integer coefficient vectors.
//
// Chamber A (xi2 < 0, xi3 < 0), coefficient of xi2^i xi3^(D-i):
//   b >= 1:  C(D,i) C(eps-1-i, b-1)                 for 0 <= i <= min(eps-1, D)
//   b <= 0:  (-1)^(b+eps+i) C(-b, i-eps) C(D,i)     for max(0,eps) <= i <= min(eps-b, D)
// Chamber B (xi1 > 0, xi2 > 0), coefficient of xi1^(D-i) xi2^i:
//   b >= 1:  C(D,i) C(eps-1-i, b-1-i)               for 0 <= i <= min(b-1, D)
//   b <= 0:  empty (the polynomial is zero)
//
// The summation ranges are part of the formulas: outside them the written binomial
// products do not vanish (a negative upper index with lower index 0 gives 1, not 0),
// so extending a range changes the value.
// ---------------------------------------------------------------------------
inline std::vector<Integer> chamber_a_coeffs(long a, long b, long D) {
    if (D < 0) return {};
    std::vector<Integer> c(static_cast<size_t>(D) + 1);
    const long eps = a + b - 1;
    if (b >= 1) {
        const long hi = std::min(eps - 1, D);
        for (long i = 0; i <= hi; ++i)
            c[static_cast<size_t>(i)] = gen_binomial(D, i) * gen_binomial(eps - 1 - i, b - 1);
    } else {
        const long lo = std::max(0L, eps);
        const long hi = std::min(eps - b, D);
        for (long i = lo; i <= hi; ++i) {
            Integer t = gen_binomial(-b, i - eps) * gen_binomial(D, i);
            if (neg1pow(b + eps + i) < 0) t = -t;
            c[static_cast<size_t>(i)] = t;
        }
    }
    return c;
}

inline std::vector<Integer> chamber_b_coeffs(long a, long b, long D) {
    if (D < 0) return {};
    std::vector<Integer> c(static_cast<size_t>(D) + 1);
    const long eps = a + b - 1;
    if (b >= 1) {
        const long hi = std::min(b - 1, D);
        for (long i = 0; i <= hi; ++i)
            c[static_cast<size_t>(i)] =
                gen_binomial(D, i) * gen_binomial(eps - 1 - i, b - 1 - i);
    }
    return c;
}

// Closed forms of the iterated residue of e^(l1 x + l2 y) / (x^a y^b (x+y)^c) on the two
// open cones, with D = a+b+c-2. rank2_chamber_a applies when l1 > l2 > 0 and
// rank2_chamber_b when l2 > l1 > 0; the residue operators themselves are the reference
// implementation these are tested against.
inline Rational rank2_chamber_a(const Rational& l1, const Rational& l2, long a, long b,
                                long c) {
    const long D = a + b + c - 2;
    if (D < 0) return Rational(0);
    const auto coef = chamber_a_coeffs(a, b, D);
    const Rational xi2 = l2 - l1;
    const Rational xi3 = -l2;
    std::vector<Rational> p2(static_cast<size_t>(D) + 1), p3(static_cast<size_t>(D) + 1);
    p2[0] = 1;
    p3[0] = 1;
    for (long i = 1; i <= D; ++i) {
        p2[static_cast<size_t>(i)] = p2[static_cast<size_t>(i - 1)] * xi2;
        p3[static_cast<size_t>(i)] = p3[static_cast<size_t>(i - 1)] * xi3;
    }
    Rational s = 0;
    for (long i = 0; i <= D; ++i)
        if (coef[static_cast<size_t>(i)] != 0)
            s += Rational(coef[static_cast<size_t>(i)]) * p2[static_cast<size_t>(i)] *
                 p3[static_cast<size_t>(D - i)];
    s /= Rational(factorial(D));
    if (neg1pow(D) < 0) s = -s;
    return s;
}

inline Rational rank2_chamber_b(const Rational& l1, const Rational& l2, long a, long b,
                                long c) {
    const long D = a + b + c - 2;
    if (D < 0) return Rational(0);
    const auto coef = chamber_b_coeffs(a, b, D);
    const Rational xi1 = l1;
    const Rational xi2 = l2 - l1;
    std::vector<Rational> p1(static_cast<size_t>(D) + 1), p2(static_cast<size_t>(D) + 1);
    p1[0] = 1;
    p2[0] = 1;
    for (long i = 1; i <= D; ++i) {
        p1[static_cast<size_t>(i)] = p1[static_cast<size_t>(i - 1)] * xi1;
        p2[static_cast<size_t>(i)] = p2[static_cast<size_t>(i - 1)] * xi2;
    }
    Rational s = 0;
    for (long i = 0; i <= D; ++i)
        if (coef[static_cast<size_t>(i)] != 0)
            s += Rational(coef[static_cast<size_t>(i)]) * p1[static_cast<size_t>(D - i)] *
                 p2[static_cast<size_t>(i)];
    s /= Rational(factorial(D));
    return s;
}

// ---------------------------------------------------------------------------
// Fused closed-form scans. Weights are cleared of denominators once, so the whole pass
// works in integers: each fixed point is classified by the signs of the centered vertex
// sums, census counters are updated, wall hits are collected, and chamber points
// accumulate an integer polynomial value. The rational volume appears only in the final
// normalization, which divides by the single common denominator power.
// ---------------------------------------------------------------------------
struct ScanOutcome {
    Integer acc = 0;
    ChamberCensus census;
    std::vector<FixedPoint> walls;     // capped at kWallCap entries
    std::uint64_t wall_count = 0;      // true number of wall hits
};

inline constexpr std::size_t kWallCap = 64;

namespace detail {

inline void merge_into(ScanOutcome& into, ScanOutcome&& part) {
    into.acc += part.acc;
    into.census.a += part.census.a;
    into.census.b += part.census.b;
    into.census.f_plus += part.census.f_plus;
    into.census.outside += part.census.outside;
    into.census.wall += part.census.wall;
    into.census.total += part.census.total;
    into.wall_count += part.wall_count;
    for (auto& f : part.walls) {
        if (into.walls.size() >= kWallCap) break;
        into.walls.push_back(std::move(f));
    }
}

inline ScanOutcome scan_rank1(const WeightVector& w, int threads) {
    const int m = w.m();
    const ScaledWeights sw = scale_weights(w);
    const long deg = m - 3;
    const std::uint64_t count = fixed_point_count(1, m);
    auto parts = parallel_ranges<ScanOutcome>(
        count, threads, [&](std::uint64_t begin, std::uint64_t end) {
            ScanOutcome out;
            Integer u, upow;
            scan_fixed_points(1, sw.a, begin, end,
                              [&](const FixedPoint& f, const std::vector<int>& counts,
                                  const std::vector<Integer>& t) {
                                  out.census.total++;
                                  u = t[0] - t[1];
                                  const int s = sgn(u);
                                  if (s == 0) {
                                      out.census.wall++;
                                      out.wall_count++;
                                      if (out.walls.size() < kWallCap) out.walls.push_back(f);
                                      return;
                                  }
                                  if (s < 0) {
                                      out.census.outside++;
                                      return;
                                  }
                                  out.census.f_plus++;
                                  mpz_pow_ui(upow.get_mpz_t(), u.get_mpz_t(),
                                             static_cast<unsigned long>(deg));
                                  if (counts[1] % 2 == 0)
                                      out.acc += upow;
                                  else
                                      out.acc -= upow;
                              });
            return out;
        });
    ScanOutcome merged;
    for (auto& p : parts) merge_into(merged, std::move(p));
    return merged;
}

// Precomputed chamber coefficient vectors for every multiplicity split (m2, m3); entries
// that are identically zero are left empty so the scan can skip those points outright.
struct Rank2Tables {
    long D = 0;
    int m = 0;
    std::vector<std::vector<Integer>> a_coefs, b_coefs; // index m2 * (m+1) + m3

    const std::vector<Integer>& a_at(int m2, int m3) const {
        return a_coefs[static_cast<size_t>(m2) * (m + 1) + m3];
    }
    const std::vector<Integer>& b_at(int m2, int m3) const {
        return b_coefs[static_cast<size_t>(m2) * (m + 1) + m3];
    }
};

inline Rank2Tables build_rank2_tables(int m) {
    Rank2Tables tb;
    tb.D = 2L * m - 8;
    tb.m = m;
    tb.a_coefs.resize(static_cast<size_t>(m + 1) * (m + 1));
    tb.b_coefs.resize(static_cast<size_t>(m + 1) * (m + 1));
    for (int m2 = 0; m2 <= m; ++m2) {
        for (int m3 = 0; m2 + m3 <= m; ++m3) {
            const long a = (m - m3) - 2; // m1 + m2 - 2
            const long b = (m2 + m3) - 2;
            auto keep = [](std::vector<Integer> v) {
                for (const auto& x : v)
                    if (x != 0) return v;
                return std::vector<Integer>{};
            };
            tb.a_coefs[static_cast<size_t>(m2) * (m + 1) + m3] =
                keep(chamber_a_coeffs(a, b, tb.D));
            tb.b_coefs[static_cast<size_t>(m2) * (m + 1) + m3] =
                keep(chamber_b_coeffs(a, b, tb.D));
        }
    }
    return tb;
}

inline ScanOutcome scan_rank2(const WeightVector& w, int threads) {
    const int m = w.m();
    const ScaledWeights sw = scale_weights(w);
    const Rank2Tables tb = build_rank2_tables(m);
    const long D = tb.D;
    const std::uint64_t count = fixed_point_count(2, m);
    auto parts = parallel_ranges<ScanOutcome>(
        count, threads, [&](std::uint64_t begin, std::uint64_t end) {
            ScanOutcome out;
            Integer u1, u2, u3, term, prod;
            std::vector<Integer> px(static_cast<size_t>(D) + 1),
                py(static_cast<size_t>(D) + 1);
            scan_fixed_points(
                2, sw.a, begin, end,
                [&](const FixedPoint& f, const std::vector<int>& counts,
                    const std::vector<Integer>& t) {
                    out.census.total++;
                    u1 = 3 * t[0] - sw.T;
                    u2 = 3 * t[1] - sw.T;
                    u3 = 3 * t[2] - sw.T;
                    const ChamberLabel lab =
                        classify_rank2_signs(sgn(u1), sgn(u2), sgn(u3));
                    if (lab == ChamberLabel::Wall) {
                        out.census.wall++;
                        out.wall_count++;
                        if (out.walls.size() < kWallCap) out.walls.push_back(f);
                        return;
                    }
                    if (lab == ChamberLabel::Outside) {
                        out.census.outside++;
                        return;
                    }
                    const int m2 = counts[1], m3 = counts[2];
                    const std::vector<Integer>* coef = nullptr;
                    const Integer *x = nullptr, *y = nullptr; // term_i = coef[i] x^i y^(D-i)
                    if (lab == ChamberLabel::A) {
                        out.census.a++;
                        const auto& v = tb.a_at(m2, m3);
                        if (v.empty()) return;
                        coef = &v;
                        x = &u2;
                        y = &u3;
                    } else {
                        out.census.b++;
                        const auto& v = tb.b_at(m2, m3);
                        if (v.empty()) return;
                        coef = &v;
                        x = &u2; // chamber B pairs xi1^(D-i) xi2^i
                        y = &u1;
                    }
                    px[0] = 1;
                    py[0] = 1;
                    for (long i = 1; i <= D; ++i) {
                        px[static_cast<size_t>(i)] = px[static_cast<size_t>(i - 1)] * (*x);
                        py[static_cast<size_t>(i)] = py[static_cast<size_t>(i - 1)] * (*y);
                    }
                    term = 0;
                    for (long i = 0; i <= D; ++i) {
                        const Integer& ci = (*coef)[static_cast<size_t>(i)];
                        if (ci == 0) continue;
                        prod = ci * px[static_cast<size_t>(i)];
                        prod *= py[static_cast<size_t>(D - i)];
                        term += prod;
                    }
                    if (m2 % 2 == 0)
                        out.acc += term;
                    else
                        out.acc -= term;
                });
            return out;
        });
    ScanOutcome merged;
    for (auto& p : parts) merge_into(merged, std::move(p));
    return merged;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Closed-form volumes. Both throw NonGenericError (with the offending fixed points) if any
// classifying sign is exactly zero.
// ---------------------------------------------------------------------------
struct VolumeScan {
    Rational volume;
    ChamberCensus census;
};

inline VolumeScan vol1_scan(const WeightVector& w, int threads = 1) {
    if (w.n != 1) throw ArgumentError("vol1_scan: requires n = 1");
    validate_weights(w);
    const int m = w.m();
    ScanOutcome out = detail::scan_rank1(w, threads);
    if (out.wall_count > 0)
        throw NonGenericError("weights lie on a wall (" + std::to_string(out.wall_count) +
                                  " fixed points with a vanishing classifying sign)",
                              out.walls);
    const ScaledWeights sw = scale_weights(w);
    Integer den_pow;
    mpz_pow_ui(den_pow.get_mpz_t(), sw.L.get_mpz_t(), static_cast<unsigned long>(m - 3));
    Rational vol = Rational(-out.acc) / Rational(2 * factorial(m - 3) * den_pow);
    return {vol, out.census};
}

inline VolumeScan vol2_scan(const WeightVector& w, int threads = 1) {
    if (w.n != 2) throw ArgumentError("vol2_scan: requires n = 2");
    validate_weights(w);
    const int m = w.m();
    const long D = 2L * m - 8;
    ScanOutcome out = detail::scan_rank2(w, threads);
    if (out.wall_count > 0)
        throw NonGenericError("weights lie on a wall (" + std::to_string(out.wall_count) +
                                  " fixed points with a vanishing classifying sign)",
                              out.walls);
    const ScaledWeights sw = scale_weights(w);
    Integer den_pow;
    Integer base = 3 * sw.L;
    mpz_pow_ui(den_pow.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(D));
    Rational vol = Rational(-out.acc) / Rational(6 * factorial(D) * den_pow);
    return {vol, out.census};
}

inline Rational vol1_closed(const WeightVector& w, int threads = 1) {
    return vol1_scan(w, threads).volume;
}

inline Rational vol2_closed(const WeightVector& w, int threads = 1) {
    return vol2_scan(w, threads).volume;
}

// ---------------------------------------------------------------------------
// Quartic del Pezzo family: symmetric-sum scalar and leading constants.
// ---------------------------------------------------------------------------
inline Rational dp4_sum_closed(int m) {
    if (m < 4) throw ArgumentError("dp4_sum_closed: requires m >= 4");
    Integer two_m1 = 1;
    for (int i = 0; i < m - 1; ++i) two_m1 *= 2;
    Rational s = 0;
    for (int k = 0; 2 * k < m; ++k) {
        Integer num;
        mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(m - 2 * k),
                      static_cast<unsigned long>(m - 3));
        s += Rational(num) / Rational(factorial(k) * factorial(m - k));
    }
    return s / Rational(two_m1);
}

// Scale factor translating the normalized quotient volume into the anticanonical one.
inline Rational cm_scale(const WeightVector& w) {
    Rational base = Rational(w.n + 1) - w.total();
    Rational p = 1;
    for (int i = 0; i < w.n; ++i) p *= base;
    return Rational(w.n + 1) * p;
}

// ---------------------------------------------------------------------------
// Reports: one structure for both commands, serialized by the JSON layer.
// ---------------------------------------------------------------------------
struct VolumeReport {
    std::string command;           // "arr" or "dp4"
    int n = 0;
    int m = 0;
    std::vector<Rational> weights; // empty for dp4
    std::string stability;
    long dimension = 0;
    std::string method;
    Rational git_volume;
    Rational cm_scale_factor;
    Rational cm_volume;
    bool has_census = false;
    ChamberCensus census;
    std::vector<std::string> diagnostics;
    std::vector<std::pair<std::string, std::string>> paper_anchors;

    // dp4-specific
    bool is_dp4 = false;
    Rational dp4_sum;
    Rational dp4_c_used;
    Integer dp4_c_paper_value;
    Integer dp4_c_ring_value;
    std::string c_mode;
    bool c_mismatch = false;
};

inline VolumeReport vol_arrangement(const WeightVector& w, Method method = Method::Closed,
                                    int threads = 1) {
    StabilityClass cls = validate_weights(w);
    if (w.n != 1 && w.n != 2)
        throw ArgumentError("vol_arrangement: implemented for n in {1,2}");
    if (cls != StabilityClass::LogFano)
        throw StabilityError("volume requires log-Fano weights (sum < n+1); got " +
                             std::string(to_string(cls)));

    VolumeReport r;
    r.command = "arr";
    r.n = w.n;
    r.m = w.m();
    r.weights = w.d;
    r.stability = to_string(cls);
    r.dimension = (w.n == 1) ? (r.m - 3) : (2L * r.m - 8);
    r.method = to_string(method);

    // census + walls always come from the integer scan; the scan throws on walls
    VolumeScan scan = (w.n == 1) ? vol1_scan(w, threads) : vol2_scan(w, threads);
    r.has_census = true;
    r.census = scan.census;

    Rational closed = scan.volume;
    Rational residue;
    if (method != Method::Closed)
        residue = (w.n == 1) ? jk_volume_rank1(w, threads) : jk_volume_rank2(w, threads);

    switch (method) {
        case Method::Closed: r.git_volume = closed; break;
        case Method::Residue: r.git_volume = residue; break;
        case Method::Both:
            if (closed != residue)
                throw ConsistencyError("closed form and residue sum disagree: " +
                                       to_string(closed) + " vs " + to_string(residue));
            r.git_volume = closed;
            break;
    }

    r.cm_scale_factor = cm_scale(w);
    Rational scale_pow = 1;
    for (long i = 0; i < r.dimension; ++i) scale_pow *= r.cm_scale_factor;
    r.cm_volume = scale_pow * r.git_volume;

    if (w.n == 1) {
        r.paper_anchors.emplace_back("closed-form", "rank1-halfspace-sum");
        r.paper_anchors.emplace_back("residue-oracle", "jk-plus-residue");
    } else {
        r.paper_anchors.emplace_back("closed-form", "rank2-chamber-polynomials");
        r.paper_anchors.emplace_back("residue-oracle", "jk-iterated-plus-residue");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Quartic del Pezzo volume. The leading constant can come from the printed expansion,
// from the intersection-ring derivation, or be supplied explicitly; the two derivations
// are reported side by side since they need not agree.
// ---------------------------------------------------------------------------
enum class CMode { Paper, Ring, Explicit };

inline const char* to_string(CMode c) {
    switch (c) {
        case CMode::Paper: return "paper";
        case CMode::Ring: return "ring";
        case CMode::Explicit: return "explicit";
    }
    return "?";
}

inline CMode parse_cmode(const std::string& s) {
    if (s == "paper") return CMode::Paper;
    if (s == "ring") return CMode::Ring;
    if (s == "explicit") return CMode::Explicit;
    throw ArgumentError("unknown c-mode '" + s + "' (expected paper|ring|explicit)");
}

struct Dp4Options {
    int m = 5;
    int n = 0; // 0 means "derive from m": n = m - 2
    CMode c_mode = CMode::Paper;
    Rational c_explicit = 0;
};

inline VolumeReport dp4_volume(const Dp4Options& opt) {
    if (opt.m < 4) throw ValidationError("dp4: requires m >= 4");
    const int n = (opt.n > 0) ? opt.n : opt.m - 2;
    if (n < 1) throw ValidationError("dp4: requires n >= 1");

    VolumeReport r;
    r.command = "dp4";
    r.is_dp4 = true;
    r.m = opt.m;
    r.n = n;
    r.dimension = opt.m - 3;
    r.method = "closed";
    r.stability = "log-fano";
    r.c_mode = to_string(opt.c_mode);

    Rational s_closed = dp4_sum_closed(opt.m);
    Rational s_residue = dp4_residue_sum(opt.m);
    if (s_closed != s_residue)
        throw ConsistencyError("dp4 scalar: symmetric sum and residue extraction disagree");
    r.dp4_sum = s_closed;
    r.git_volume = s_closed;

    if (opt.m % 2 == 0)
        r.diagnostics.push_back(
            "even hyperplane count: the generic stabilizer jumps, normalization suspect");

    r.dp4_c_paper_value = dp4_c_paper(n);
    r.dp4_c_ring_value = dp4_c_ring(n);
    switch (opt.c_mode) {
        case CMode::Paper: r.dp4_c_used = Rational(r.dp4_c_paper_value); break;
        case CMode::Ring: r.dp4_c_used = Rational(r.dp4_c_ring_value); break;
        case CMode::Explicit: r.dp4_c_used = opt.c_explicit; break;
    }
    if (r.dp4_c_paper_value != r.dp4_c_ring_value) {
        r.diagnostics.push_back("leading-constant derivations disagree: printed " +
                                r.dp4_c_paper_value.get_str() + ", ring " +
                                r.dp4_c_ring_value.get_str());
        if (opt.c_mode == CMode::Paper) r.c_mismatch = true;
    }

    r.cm_scale_factor = r.dp4_c_used / Rational(opt.m);
    Rational scale_pow = 1;
    for (long i = 0; i < r.dimension; ++i) scale_pow *= r.cm_scale_factor;
    r.cm_volume = scale_pow * r.dp4_sum;

    r.paper_anchors.emplace_back("scalar-closed-form", "dp4-symmetric-sum");
    r.paper_anchors.emplace_back("scalar-residue", "dp4-laurent-coefficient");
    r.paper_anchors.emplace_back("leading-constant", "blowup-intersection-ring");
    return r;
}

} // namespace jkvol
