#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "jkvol/closed_forms.hpp"
#include "jkvol/random_weights.hpp"
#include "jkvol/residues.hpp"

using namespace jkvol;

TEST_CASE("chamber coefficient builders") {
    CHECK(chamber_a_coeffs(2, 1, 2) == std::vector<Integer>{1, 2, 0});
    CHECK(chamber_a_coeffs(2, 1, 3) == std::vector<Integer>{1, 3, 0, 0});
    CHECK(chamber_a_coeffs(4, -1, 3) == std::vector<Integer>{0, 0, -3, 1});
    CHECK(chamber_a_coeffs(2, -2, 0) == std::vector<Integer>{-2});
    CHECK(chamber_a_coeffs(1, 1, -1).empty());

    CHECK(chamber_b_coeffs(2, 1, 2) == std::vector<Integer>{1, 0, 0});
    CHECK(chamber_b_coeffs(1, 2, 2) == std::vector<Integer>{1, 2, 0});
    // nonpositive second order: the B-chamber polynomial is identically zero
    CHECK(chamber_b_coeffs(1, 0, 2) == std::vector<Integer>{0, 0, 0});
    CHECK(chamber_b_coeffs(3, -1, 2) == std::vector<Integer>{0, 0, 0});
}

TEST_CASE("chamber closed forms reproduce the iterated residue") {
    // every pole-order triple realizable by vertex multiplicities, both open cones, plus the
    // empty cone; the residue operators are series-coefficient extraction and know nothing
    // about the chamber polynomials
    const Rational la1(7, 3), la2(3, 4);   // la1 > la2 > 0: chamber A
    const Rational lb1(1, 2), lb2(9, 5);   // lb2 > lb1 > 0: chamber B
    int checked = 0;
    for (long a = -2; a <= 4; ++a)
        for (long b = -2; b <= 4; ++b)
            for (long c = -2; c <= 4; ++c) {
                long two_m1 = a - b + c + 2, two_m2 = a + b - c + 2, two_m3 = -a + b + c + 2;
                if (two_m1 < 0 || two_m2 < 0 || two_m3 < 0) continue;
                if (two_m1 % 2 || two_m2 % 2 || two_m3 % 2) continue;
                CAPTURE(a, b, c);
                CHECK(iterated_res_plus(la1, la2, a, b, c) == rank2_chamber_a(la1, la2, a, b, c));
                CHECK(iterated_res_plus(lb1, lb2, a, b, c) == rank2_chamber_b(lb1, lb2, a, b, c));
                CHECK(iterated_res_plus(la1, Rational(-1, 5), a, b, c) == 0);
                ++checked;
            }
    CHECK(checked > 40);
}

TEST_CASE("rank-1 closed scan") {
    WeightVector w{1, {Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(2, 5)}};
    VolumeScan s = vol1_scan(w);
    CHECK(s.volume == Rational(1, 2));
    CHECK(s.census.total == 16);
    CHECK(s.census.f_plus == 8);
    CHECK(s.census.outside == 8);
    CHECK(s.census.wall == 0);

    WeightVector pent{1, std::vector<Rational>(5, Rational(1, 3))};
    CHECK(vol1_closed(pent) == Rational(5, 18));

    // wall weights throw with the offending points attached
    WeightVector wall{1, {Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3)}};
    try {
        vol1_scan(wall);
        FAIL("expected NonGenericError");
    } catch (const NonGenericError& e) {
        CHECK_FALSE(e.offending_points.empty());
    }
}

TEST_CASE("rank-2 closed scan against the residue oracle") {
    WeightVector eq{2, std::vector<Rational>(5, Rational(1, 3))};
    CHECK(vol2_closed(eq) == Rational(5, 162));
    CHECK(jk_volume_rank2(eq) == Rational(5, 162));

    // one large weight makes every point unstable: the quotient is empty and both routes
    // agree on volume zero
    WeightVector unstable{2, {Rational(1, 2), Rational(1, 2), Rational(1, 7), Rational(1, 9), Rational(1, 11)}};
    CHECK(vol2_closed(unstable) == 0);
    CHECK(jk_volume_rank2(unstable) == 0);

    // exercises the nonpositive-order branch of the A-chamber coefficients
    WeightVector skew{2, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 8), Rational(1, 9)}};
    CHECK(vol2_closed(skew) == Rational(143, 31104));
    CHECK(jk_volume_rank2(skew) == Rational(143, 31104));

    WeightVector six{2, {Rational(1, 3), Rational(2, 5), Rational(1, 7), Rational(3, 8), Rational(1, 4), Rational(1, 6)}};
    Rational v = vol2_closed(six);
    CHECK(v == parse_rational("626213191/5974456320000"));
    CHECK(jk_volume_rank2(six) == v);
}

TEST_CASE("rank-1 closed scan against the residue oracle, odd hyperplane counts") {
    WeightVector w{1, {Rational(1, 3), Rational(2, 7), Rational(1, 5), Rational(3, 11), Rational(1, 4), Rational(2, 9), Rational(1, 6)}};
    Rational v = vol1_closed(w);
    CHECK(v == jk_volume_rank1(w));
    CHECK(v > 0); // odd m: nonempty moduli must carry positive volume
    CHECK(v == parse_rational("2073041813300131/110706768960480000"));
}

TEST_CASE("randomized closed-vs-residue agreement") {
    Lcg64 rng(9001);
    for (int t = 0; t < 25; ++t) {
        int m = 4 + static_cast<int>(rng.below(5));
        WeightVector w = random_weight_vector(1, m, rng);
        CAPTURE(to_string(w));
        CHECK(vol1_closed(w) == jk_volume_rank1(w));
    }
    for (int t = 0; t < 8; ++t) {
        int m = 4 + static_cast<int>(rng.below(3));
        WeightVector w = random_weight_vector(2, m, rng);
        CAPTURE(to_string(w));
        CHECK(vol2_closed(w) == jk_volume_rank2(w));
    }
}

TEST_CASE("volume scales homogeneously in the weights") {
    const Rational c(6, 7);
    WeightVector w{2, {Rational(1, 3), Rational(2, 5), Rational(1, 7), Rational(3, 8), Rational(1, 4)}};
    WeightVector cw = w;
    for (auto& d : cw.d) d *= c;
    Rational factor = 1;
    for (long i = 0; i < 2 * 5 - 8; ++i) factor *= c;
    CHECK(vol2_closed(cw) == factor * vol2_closed(w));

    WeightVector w1{1, {Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(2, 5)}};
    WeightVector cw1 = w1;
    for (auto& d : cw1.d) d *= c;
    CHECK(vol1_closed(cw1) == c * vol1_closed(w1)); // degree m-3 = 1
}

TEST_CASE("volume is symmetric in the weights") {
    std::vector<Rational> d = {Rational(1, 3), Rational(2, 5), Rational(1, 7), Rational(3, 8), Rational(1, 4)};
    Rational base2 = vol2_closed(WeightVector{2, d});
    Rational base1 = vol1_closed(WeightVector{1, d});
    std::vector<Rational> p = d;
    std::sort(p.begin(), p.end());
    int tested = 0;
    do {
        if (tested++ % 17 != 0) continue; // sample the permutation group
        CHECK(vol2_closed(WeightVector{2, p}) == base2);
        CHECK(vol1_closed(WeightVector{1, p}) == base1);
    } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("arrangement report") {
    WeightVector w{1, {Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(2, 5)}};
    VolumeReport r = vol_arrangement(w, Method::Both);
    CHECK(r.command == "arr");
    CHECK(r.n == 1);
    CHECK(r.m == 4);
    CHECK(r.stability == "log-fano");
    CHECK(r.dimension == 1);
    CHECK(r.git_volume == Rational(1, 2));
    CHECK(r.cm_scale_factor == Rational(7, 5));
    CHECK(r.cm_volume == Rational(7, 10));
    REQUIRE(r.has_census);
    CHECK(r.census.f_plus == 8);
    CHECK(r.census.total == 16);

    WeightVector w2{2, std::vector<Rational>(5, Rational(1, 3))};
    VolumeReport r2 = vol_arrangement(w2, Method::Both);
    CHECK(r2.dimension == 2);
    CHECK(r2.git_volume == Rational(5, 162));
    CHECK(r2.cm_scale_factor == Rational(16, 3));
    CHECK(r2.cm_volume == Rational(640, 729));
    CHECK(r2.census.a + r2.census.b + r2.census.outside == r2.census.total);
}

TEST_CASE("arrangement report rejects non-Fano weights") {
    WeightVector cy{1, std::vector<Rational>(4, Rational(1, 2))};
    CHECK_THROWS_AS(vol_arrangement(cy), StabilityError);
    WeightVector gt{1, std::vector<Rational>(4, Rational(3, 4))};
    CHECK_THROWS_AS(vol_arrangement(gt), StabilityError);
    WeightVector cy2{2, std::vector<Rational>(5, Rational(3, 5))};
    CHECK_THROWS_AS(vol_arrangement(cy2), StabilityError);
}

TEST_CASE("arrangement report surfaces walls") {
    WeightVector wall{1, {Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3)}};
    CHECK_THROWS_AS(vol_arrangement(wall), NonGenericError);
}

TEST_CASE("quartic del Pezzo closed sum") {
    CHECK(dp4_sum_closed(5) == Rational(1, 24));
    CHECK(dp4_sum_closed(4) == Rational(1, 16));
    for (int m = 4; m <= 15; ++m) CHECK(dp4_sum_closed(m) == dp4_residue_sum(m));
}

TEST_CASE("quartic del Pezzo report") {
    SECTION("explicit leading constant") {
        Dp4Options opt;
        opt.m = 5;
        opt.c_mode = CMode::Explicit;
        opt.c_explicit = 120;
        VolumeReport r = dp4_volume(opt);
        CHECK(r.is_dp4);
        CHECK(r.n == 3);
        CHECK(r.dimension == 2);
        CHECK(r.dp4_sum == Rational(1, 24));
        CHECK(r.dp4_c_used == 120);
        CHECK(r.cm_scale_factor == 24);
        CHECK(r.cm_volume == 24);
        CHECK_FALSE(r.c_mismatch);
    }

    SECTION("printed constant disagrees with the ring derivation at m = 5") {
        Dp4Options opt; // defaults: m = 5, paper mode
        VolumeReport r = dp4_volume(opt);
        CHECK(r.dp4_c_paper_value == 0);
        CHECK(r.dp4_c_ring_value == 1376);
        CHECK(r.c_mismatch);
        CHECK_FALSE(r.diagnostics.empty());
    }

    SECTION("ring mode reports the disagreement without failing") {
        Dp4Options opt;
        opt.c_mode = CMode::Ring;
        VolumeReport r = dp4_volume(opt);
        CHECK(r.dp4_c_used == 1376);
        CHECK_FALSE(r.c_mismatch);
        CHECK_FALSE(r.diagnostics.empty());
    }

    SECTION("even hyperplane counts carry a stabilizer warning") {
        Dp4Options opt;
        opt.m = 6;
        opt.n = 3;
        opt.c_mode = CMode::Explicit;
        opt.c_explicit = 1;
        VolumeReport r = dp4_volume(opt);
        bool found = false;
        for (const auto& d : r.diagnostics)
            if (d.find("stabilizer") != std::string::npos) found = true;
        CHECK(found);
    }

    CHECK_THROWS_AS(dp4_volume(Dp4Options{3, 0, CMode::Paper, Rational(0)}), ValidationError);
}

TEST_CASE("anticanonical scale factor") {
    WeightVector w{1, {Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(2, 5)}};
    CHECK(cm_scale(w) == Rational(7, 5));
    WeightVector w2{2, std::vector<Rational>(5, Rational(1, 3))};
    CHECK(cm_scale(w2) == Rational(16, 3));
}

TEST_CASE("method parsing") {
    CHECK(parse_method("closed") == Method::Closed);
    CHECK(parse_method("residue") == Method::Residue);
    CHECK(parse_method("both") == Method::Both);
    CHECK_THROWS_AS(parse_method("fast"), ArgumentError);
    CHECK(parse_cmode("ring") == CMode::Ring);
    CHECK_THROWS_AS(parse_cmode("guess"), ArgumentError);
}
