#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "jkvol/fixed_points.hpp"
#include "jkvol/random_weights.hpp"
#include "jkvol/weights.hpp"

using namespace jkvol;

TEST_CASE("weight validation and stability classes") {
    WeightVector fano{1, {Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(2, 5)}};
    CHECK(validate_weights(fano) == StabilityClass::LogFano);

    WeightVector cy{1, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    CHECK(validate_weights(cy) == StabilityClass::CalabiYau);

    WeightVector gt{1, {Rational(3, 4), Rational(3, 4), Rational(3, 4), Rational(3, 4)}};
    CHECK(validate_weights(gt) == StabilityClass::GeneralType);

    CHECK_THROWS_AS(validate_weights(WeightVector{0, {Rational(1, 2), Rational(1, 2)}}),
                    ValidationError);
    // too few hyperplanes: need m >= n+2
    CHECK_THROWS_AS(validate_weights(WeightVector{1, {Rational(1, 3), Rational(1, 3)}}),
                    ValidationError);
    // weights must lie strictly inside (0,1)
    CHECK_THROWS_AS(
        validate_weights(WeightVector{1, {Rational(0), Rational(1, 3), Rational(1, 3), Rational(1, 3)}}),
        ValidationError);
    CHECK_THROWS_AS(
        validate_weights(WeightVector{1, {Rational(1), Rational(1, 3), Rational(1, 3), Rational(1, 3)}}),
        ValidationError);
}

TEST_CASE("weight parsing") {
    WeightVector w = parse_weights(1, "3/10, 3/10,3/10,0.4");
    REQUIRE(w.m() == 4);
    CHECK(w.d[3] == Rational(2, 5));
    CHECK(w.total() == Rational(13, 10));
    CHECK_THROWS_AS(parse_weights(1, ""), ArgumentError);
    CHECK_THROWS_AS(parse_weights(1, "1/2,,1/2"), ArgumentError);
}

TEST_CASE("fixed point counting and indexing") {
    CHECK(fixed_point_count(1, 4) == 16);
    CHECK(fixed_point_count(2, 5) == 243);
    CHECK(fixed_point_count(2, 0) == 1);
    CHECK(fixed_point_count(3, 10) == 1048576);

    CHECK(fixed_point_at(1, 4, 0) == FixedPoint{1, 1, 1, 1});
    CHECK(fixed_point_at(1, 4, 15) == FixedPoint{2, 2, 2, 2});
    CHECK(fixed_point_at(2, 3, 5) == FixedPoint{1, 2, 3}); // base-3 digits of 5 are 012

    // enumerate agrees with direct indexing and refuses huge grids
    auto all = enumerate_fixed_points(2, 4);
    REQUIRE(all.size() == 81);
    for (std::uint64_t i = 0; i < all.size(); ++i) CHECK(all[i] == fixed_point_at(2, 4, i));
    CHECK_THROWS_AS(enumerate_fixed_points(1, 30), ArgumentError);
}

TEST_CASE("weight scaling clears denominators") {
    WeightVector w{1, {Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(2, 5)}};
    ScaledWeights s = scale_weights(w);
    CHECK(s.L == 10);
    CHECK(s.T == 13);
    REQUIRE(s.a.size() == 4);
    CHECK(s.a[0] == 3);
    CHECK(s.a[3] == 4);
    for (size_t i = 0; i < s.a.size(); ++i) CHECK(rational(s.a[i], s.L) == w.d[i]);
}

TEST_CASE("incremental scan matches direct recomputation") {
    const int n = 2;
    std::vector<Integer> a = {Integer(1), Integer(2), Integer(3), Integer(7)};
    const std::uint64_t count = fixed_point_count(n, static_cast<int>(a.size()));

    auto check_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t idx = lo;
        scan_fixed_points(n, a, lo, hi,
                          [&](const FixedPoint& f, const std::vector<int>& counts,
                              const std::vector<Integer>& t) {
                              REQUIRE(f == fixed_point_at(n, static_cast<int>(a.size()), idx));
                              std::vector<int> ec(n + 1, 0);
                              std::vector<Integer> et(n + 1, Integer(0));
                              for (size_t i = 0; i < f.size(); ++i) {
                                  ec[f[i] - 1]++;
                                  et[f[i] - 1] += a[i];
                              }
                              REQUIRE(counts == ec);
                              REQUIRE(t == et);
                              ++idx;
                          });
        CHECK(idx == hi);
    };

    check_range(0, count);
    check_range(10, 50);   // interior sub-range, exercises the mid-stream start
    check_range(80, 81);   // final point only
    check_range(5, 5);     // empty range visits nothing
}

TEST_CASE("per-point statistics") {
    WeightVector w{2, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    FixedPointStats s = stats({1, 1, 2, 3, 3}, w);
    CHECK(s.counts == std::vector<int>{2, 1, 2});
    CHECK(s.delta == std::vector<Rational>{Rational(1), Rational(1, 2), Rational(1)});
    CHECK(s.delta_total == Rational(5, 2));
    REQUIRE(s.xi.size() == 3);
    CHECK(s.xi[0] == Rational(1, 6));
    CHECK(s.xi[1] == Rational(-1, 3));
    CHECK(s.xi[2] == Rational(1, 6));
    CHECK(s.xi[0] + s.xi[1] + s.xi[2] == 0);
    REQUIRE(s.lambda.size() == 2);
    CHECK(s.lambda[0] == Rational(1, 6));
    CHECK(s.lambda[1] == Rational(-1, 6));
    CHECK(s.sign == -1); // two positions assigned to vertex 3, one to vertex 2 -> odd

    WeightVector w1{1, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    CHECK(stats({1, 1, 1, 1}, w1).sign == 1);
    CHECK(stats({1, 1, 1, 2}, w1).sign == -1);
    CHECK(stats({1, 2, 1, 2}, w1).sign == 1);
    CHECK(stats({2, 2, 2, 2}, w1).sign == 1);

    CHECK_THROWS_AS(stats({1, 1, 1}, w1), ArgumentError);
    CHECK_THROWS_AS(stats({1, 1, 1, 3}, w1), ArgumentError);
}

TEST_CASE("orientation sign equals parity of even-vertex assignments") {
    Lcg64 rng(77);
    for (int n = 1; n <= 2; ++n) {
        WeightVector w{n, std::vector<Rational>(6, Rational(1, 7))};
        for (int trial = 0; trial < 200; ++trial) {
            FixedPoint f(6);
            int even = 0;
            for (auto& v : f) {
                v = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(n + 1)));
                if (v % 2 == 0) even++;
            }
            CHECK(stats(f, w).sign == (even % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("moment coefficients") {
    auto lam1 = moment_coefficients(1, {Rational(3, 4), Rational(1, 4)});
    REQUIRE(lam1.size() == 1);
    CHECK(lam1[0] == Rational(1, 4)); // (delta_1 - delta_2)/2

    auto lam2 = moment_coefficients(2, {Rational(1), Rational(1, 2), Rational(1)});
    CHECK(lam2 == std::vector<Rational>{Rational(1, 6), Rational(-1, 6)});

    CHECK_THROWS_AS(moment_coefficients(2, {Rational(1), Rational(1)}), ArgumentError);
}

TEST_CASE("chamber classification") {
    CHECK(classify_rank1_signs(1) == ChamberLabel::FPlus);
    CHECK(classify_rank1_signs(-1) == ChamberLabel::Outside);
    CHECK(classify_rank1_signs(0) == ChamberLabel::Wall);

    CHECK(classify_rank2_signs(1, -1, -1) == ChamberLabel::A);
    CHECK(classify_rank2_signs(1, 1, -1) == ChamberLabel::B);
    CHECK(classify_rank2_signs(-1, -1, 1) == ChamberLabel::Outside);
    CHECK(classify_rank2_signs(-1, 1, 1) == ChamberLabel::Outside);
    CHECK(classify_rank2_signs(0, 1, -1) == ChamberLabel::Wall);
    CHECK(classify_rank2_signs(1, 0, -1) == ChamberLabel::Wall);
    CHECK(classify_rank2_signs(1, -1, 0) == ChamberLabel::Wall);

    WeightVector w{2, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    CHECK(classify(stats({1, 1, 2, 3, 3}, w)) == ChamberLabel::Outside);
    CHECK(classify(stats({1, 1, 1, 2, 3}, w)) == ChamberLabel::A);   // xi = (2/3, -1/3, -1/3)
    CHECK(classify(stats({1, 2, 2, 1, 3}, w)) == ChamberLabel::B);   // xi = (1/6, 1/6, -1/3)
}

TEST_CASE("wall detection") {
    WeightVector generic{1, {Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(2, 5)}};
    CHECK(wall_check(generic).empty());

    // equal weights 1/2 on four lines: every 2+2 split of the points is a wall
    WeightVector degenerate{1, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    auto bad = wall_check(degenerate);
    CHECK(bad.size() == 6);
    for (const auto& f : bad)
        CHECK(std::count(f.begin(), f.end(), 2) == 2);

    WeightVector generic2{2, {Rational(1, 3), Rational(2, 5), Rational(1, 7), Rational(3, 8), Rational(1, 4)}};
    CHECK(wall_check(generic2).empty());
}

TEST_CASE("census is invariant under weight permutations") {
    WeightVector w{2, {Rational(1, 3), Rational(2, 5), Rational(1, 7), Rational(3, 8), Rational(1, 4)}};
    auto census_of = [](const WeightVector& wv) {
        std::vector<std::uint64_t> c(5, 0);
        for (const auto& f : enumerate_fixed_points(wv.n, wv.m()))
            c[static_cast<size_t>(classify(stats(f, wv)))]++;
        return c;
    };
    auto base = census_of(w);
    std::vector<Rational> d = w.d;
    std::sort(d.begin(), d.end());
    do {
        CHECK(census_of(WeightVector{2, d}) == base);
    } while (std::next_permutation(d.begin(), d.end()));
}
