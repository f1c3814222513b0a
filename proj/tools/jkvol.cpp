// Command-line front end: exact volumes for weighted arrangement quotients (arr, sweep),
// the del Pezzo family scalar with its leading-constant reconciliation (dp4), seeded
// self-verification suites (verify), and inspection dumps of the per-fixed-point residue
// data and the intersection-ring trace (dump).
//
// Exit codes: 0 success; 1 verification failure; 2 usage or invalid input; 3 leading-
// constant mismatch in paper mode (result still printed); 4 weights on a wall; 5 wrong
// stability class; 6 empty sweep grid.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "jkvol/jkvol.hpp"

using namespace jkvol;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCMismatch = 3;
constexpr int kExitWall = 4;
constexpr int kExitStability = 5;
constexpr int kExitEmptyGrid = 6;

std::string join_weights(const std::vector<Rational>& d, const char* sep = ", ") {
    std::string s;
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) s += sep;
        s += to_string(d[i]);
    }
    return s;
}

void print_report_table(const VolumeReport& r, std::ostream& os) {
    os << "command      " << r.command << "\n";
    os << "n            " << r.n << "\n";
    os << "m            " << r.m << "\n";
    if (!r.weights.empty()) os << "weights      " << join_weights(r.weights) << "\n";
    os << "stability    " << r.stability << "\n";
    os << "dimension    " << r.dimension << "\n";
    os << "method       " << r.method << "\n";
    os << "gitVolume    " << to_string(r.git_volume) << " (" << approx_string(r.git_volume)
       << ")\n";
    os << "cmScale      " << to_string(r.cm_scale_factor) << " ("
       << approx_string(r.cm_scale_factor) << ")\n";
    os << "cmVolume     " << to_string(r.cm_volume) << " (" << approx_string(r.cm_volume)
       << ")\n";
    if (r.has_census) {
        os << "census       ";
        if (r.n == 1)
            os << "F+=" << r.census.f_plus;
        else
            os << "A=" << r.census.a << " B=" << r.census.b;
        os << " outside=" << r.census.outside << " wall=" << r.census.wall
           << " total=" << r.census.total << "\n";
    }
    if (r.is_dp4) {
        os << "dp4Sum       " << to_string(r.dp4_sum) << " (" << approx_string(r.dp4_sum)
           << ")\n";
        os << "cMode        " << r.c_mode << "\n";
        os << "cUsed        " << to_string(r.dp4_c_used) << "\n";
        os << "cPaper       " << r.dp4_c_paper_value.get_str() << "\n";
        os << "cRing        " << r.dp4_c_ring_value.get_str() << "\n";
        os << "cMismatch    " << (r.c_mismatch ? "yes" : "no") << "\n";
    }
    for (const auto& d : r.diagnostics) os << "note         " << d << "\n";
}

void print_report_csv(const VolumeReport& r, std::ostream& os) {
    os << "command,n,m,weights,stability,dimension,method,gitVolume,gitVolumeApprox,"
          "cmVolume,cmVolumeApprox\n";
    os << r.command << ',' << r.n << ',' << r.m << ",\"" << join_weights(r.weights, " ")
       << "\"," << r.stability << ',' << r.dimension << ',' << r.method << ",\""
       << to_string(r.git_volume) << "\"," << approx_string(r.git_volume) << ",\""
       << to_string(r.cm_volume) << "\"," << approx_string(r.cm_volume) << "\n";
}

void print_report(const VolumeReport& r, const std::string& format) {
    if (format == "json")
        std::cout << report_to_json(r).dump(2) << "\n";
    else if (format == "csv")
        print_report_csv(r, std::cout);
    else
        print_report_table(r, std::cout);
}

int report_wall(const NonGenericError& e, const std::string& format) {
    if (format == "json") {
        Json j;
        j["error"] = "wall";
        j["message"] = e.what();
        Json pts = Json::array();
        size_t shown = 0;
        for (const auto& f : e.offending_points) {
            if (shown++ >= 20) break;
            pts.push_back(f);
        }
        j["offendingPoints"] = std::move(pts);
        j["offendingShown"] = shown;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "error: " << e.what() << "\n";
        size_t shown = 0;
        for (const auto& f : e.offending_points) {
            if (shown++ >= 20) {
                std::cout << "  ... (" << e.offending_points.size() - 20 << " more)\n";
                break;
            }
            std::cout << "  wall point f = (";
            for (size_t i = 0; i < f.size(); ++i) std::cout << (i ? "," : "") << f[i];
            std::cout << ")\n";
        }
    }
    return kExitWall;
}

// ---------------------------------------------------------------------------
// sweep: evaluate a grid of weight vectors, CSV/JSON rows for admissible ones, skip
// accounting on stderr.
// ---------------------------------------------------------------------------
struct GridAxis {
    std::vector<Rational> values;
};

GridAxis parse_axis(const std::string& spec) {
    GridAxis ax;
    auto colon1 = spec.find(':');
    if (colon1 == std::string::npos) {
        ax.values.push_back(parse_rational(spec));
        return ax;
    }
    auto colon2 = spec.find(':', colon1 + 1);
    if (colon2 == std::string::npos)
        throw ArgumentError("grid axis '" + spec + "' must be value or start:stop:step");
    Rational start = parse_rational(spec.substr(0, colon1));
    Rational stop = parse_rational(spec.substr(colon1 + 1, colon2 - colon1 - 1));
    Rational step = parse_rational(spec.substr(colon2 + 1));
    if (step <= 0) throw ArgumentError("grid step must be positive");
    for (Rational v = start; v <= stop; v += step) ax.values.push_back(v);
    return ax;
}

std::vector<GridAxis> parse_grid(const std::string& grid, int m) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : grid) {
        if (ch == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    std::vector<GridAxis> axes;
    if (parts.size() == 1) {
        GridAxis ax = parse_axis(parts[0]);
        axes.assign(static_cast<size_t>(m), ax);
    } else {
        if (static_cast<int>(parts.size()) != m)
            throw ArgumentError("grid has " + std::to_string(parts.size()) +
                                " axes but m = " + std::to_string(m));
        for (const auto& p : parts) axes.push_back(parse_axis(p));
    }
    return axes;
}

int run_sweep(int n, int m, const std::string& grid, Method method, int threads,
              const std::string& format) {
    std::vector<GridAxis> axes = parse_grid(grid, m);
    std::uint64_t total = 1;
    for (const auto& ax : axes) {
        total *= ax.values.size();
        if (total > 2'000'000) throw ArgumentError("sweep grid larger than 2e6 points");
    }
    if (total == 0) {
        std::cerr << "sweep: empty grid\n";
        return kExitEmptyGrid;
    }

    std::uint64_t evaluated = 0, skipped_range = 0, skipped_stability = 0, skipped_wall = 0;
    Json rows = Json::array();
    bool csv = (format != "json");
    if (csv) {
        for (int i = 1; i <= m; ++i) std::cout << "d" << i << ',';
        std::cout << "stability,dimension,gitVolume,gitVolumeApprox,cmVolume,cmVolumeApprox\n";
    }

    std::vector<size_t> idx(static_cast<size_t>(m), 0);
    WeightVector w;
    w.n = n;
    w.d.resize(static_cast<size_t>(m));
    while (true) {
        for (int i = 0; i < m; ++i) w.d[static_cast<size_t>(i)] = axes[i].values[idx[i]];
        try {
            VolumeReport r = vol_arrangement(w, method, threads);
            ++evaluated;
            if (csv) {
                for (int i = 0; i < m; ++i)
                    std::cout << '"' << to_string(w.d[static_cast<size_t>(i)]) << "\",";
                std::cout << r.stability << ',' << r.dimension << ",\""
                          << to_string(r.git_volume) << "\"," << approx_string(r.git_volume)
                          << ",\"" << to_string(r.cm_volume) << "\","
                          << approx_string(r.cm_volume) << "\n";
            } else {
                rows.push_back(report_to_json(r));
            }
        } catch (const ValidationError&) {
            ++skipped_range;
        } catch (const StabilityError&) {
            ++skipped_stability;
        } catch (const NonGenericError&) {
            ++skipped_wall;
        }
        int pos = m - 1;
        while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == axes[pos].values.size()) {
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    if (!csv) std::cout << rows.dump(2) << "\n";
    std::cerr << "sweep: " << total << " grid points, " << evaluated << " evaluated, "
              << skipped_range << " out of range, " << skipped_stability
              << " wrong stability, " << skipped_wall << " on walls\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: seeded self-check suites.
// ---------------------------------------------------------------------------
struct VerifyStats {
    std::uint64_t checked = 0, failed = 0;
};

void verify_identities(std::uint64_t seed, std::uint64_t trials, VerifyStats& vs) {
    Lcg64 rng(seed);
    auto draw = [&](long lo, long hi) {
        return lo + static_cast<long>(rng.below(static_cast<std::uint32_t>(hi - lo + 1)));
    };
    for (std::uint64_t t = 0; t < trials; ++t) {
        // upper negation
        {
            long z = draw(-30, 30), k = draw(0, 30);
            Integer lhs = gen_binomial(z, k);
            Integer rhs = gen_binomial(k - z - 1, k);
            if (k % 2 == 1) rhs = -rhs;
            vs.checked++;
            if (lhs != rhs) vs.failed++;
        }
        // negative upper to positive
        {
            long nn = draw(0, 30), k = draw(0, 30);
            Integer lhs = gen_binomial(-nn, k);
            Integer rhs = gen_binomial(nn + k - 1, k);
            if (k % 2 == 1) rhs = -rhs;
            vs.checked++;
            if (lhs != rhs) vs.failed++;
        }
        // symmetric negation of both slots
        {
            long nn = draw(0, 30), mm = draw(0, 30);
            Integer lhs = gen_binomial(-nn - 1, mm);
            if (mm % 2 == 1) lhs = -lhs;
            Integer rhs = gen_binomial(-mm - 1, nn);
            if (nn % 2 == 1) rhs = -rhs;
            vs.checked++;
            if (lhs != rhs) vs.failed++;
        }
        // Vandermonde-type cross sum: sum_j C(l, m+j) C(s, n+j) = C(l+s, l-m+n), l >= 0
        {
            long l = draw(0, 18), s = draw(-15, 18), mm = draw(-10, 10), nn = draw(-10, 10);
            Integer lhs = 0;
            for (long j = -mm; j <= l - mm; ++j) lhs += gen_binomial(l, mm + j) * gen_binomial(s, nn + j);
            Integer rhs = gen_binomial(l + s, l - mm + nn);
            vs.checked++;
            if (lhs != rhs) vs.failed++;
        }
        // alternating cross sum: sum_j (-1)^j C(s+j, n) C(l, m+j) = (-1)^(l+m) C(s-m, n-l)
        {
            long l = draw(0, 18), s = draw(-15, 18), mm = draw(-10, 10), nn = draw(-10, 10);
            Integer lhs = 0;
            for (long j = -mm; j <= l - mm; ++j) {
                Integer term = gen_binomial(s + j, nn) * gen_binomial(l, mm + j);
                if (((j % 2) + 2) % 2 == 1) term = -term;
                lhs += term;
            }
            Integer rhs = gen_binomial(s - mm, nn - l);
            if (((l + mm) % 2 + 2) % 2 == 1) rhs = -rhs;
            vs.checked++;
            if (lhs != rhs) vs.failed++;
        }
    }
}

void verify_arr(int n, std::uint64_t seed, std::uint64_t trials, int m_lo, int m_hi,
                int threads, VerifyStats& vs) {
    Lcg64 rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        int m = m_lo + static_cast<int>(rng.below(static_cast<std::uint32_t>(m_hi - m_lo + 1)));
        WeightVector w = random_weight_vector(n, m, rng);
        Rational closed = (n == 1) ? vol1_closed(w, threads) : vol2_closed(w, threads);
        Rational oracle = (n == 1) ? jk_volume_rank1(w, threads) : jk_volume_rank2(w, threads);
        vs.checked++;
        if (closed != oracle) {
            vs.failed++;
            std::cerr << "  disagreement at d = " << join_weights(w.d) << ": closed "
                      << to_string(closed) << " vs residue " << to_string(oracle) << "\n";
        }
    }
}

void verify_dp4(VerifyStats& vs) {
    for (int m = 4; m <= 15; ++m) {
        vs.checked++;
        if (dp4_sum_closed(m) != dp4_residue_sum(m)) vs.failed++;
    }
    vs.checked++;
    if (dp4_sum_closed(5) != Rational(1, 24)) vs.failed++;
}

int run_verify(const std::string& suite, std::uint64_t seed, std::uint64_t trials,
               int threads) {
    bool all = (suite == "all");
    VerifyStats vs;
    bool any_fail = false;

    auto flush = [&](const std::string& name) {
        std::cout << name << ": " << (vs.checked - vs.failed) << "/" << vs.checked
                  << " checks passed\n";
        if (vs.failed) any_fail = true;
        vs = VerifyStats{};
    };

    if (all || suite == "identities") {
        verify_identities(seed, trials ? trials : 2500, vs); // 5 identities per trial
        flush("identities");
    }
    if (all || suite == "arr1") {
        verify_arr(1, seed, trials ? trials : 200, 4, 9, threads, vs);
        flush("arr1");
    }
    if (all || suite == "arr2") {
        verify_arr(2, seed, trials ? trials : 50, 4, 7, threads, vs);
        flush("arr2");
    }
    if (all || suite == "dp4") {
        verify_dp4(vs);
        flush("dp4");
    }
    if (all || suite == "ring") {
        // reconciliation report: the two derivations of the leading constant, side by side
        for (int n = 2; n <= 6; ++n) {
            Integer cp = dp4_c_paper(n), cr = dp4_c_ring(n);
            std::cout << "ring n=" << n << ": printed=" << cp.get_str()
                      << " ring=" << cr.get_str() << " agree="
                      << (cp == cr ? "yes" : "no") << "\n";
        }
        std::cout << "ring: report only, no pass criterion\n";
    }
    return any_fail ? kExitVerifyFail : kExitOk;
}

// ---------------------------------------------------------------------------
// dump: inspection modes.
// ---------------------------------------------------------------------------
int run_dump_hf(int n, const std::string& dstr, const std::string& fstr) {
    WeightVector w = parse_weights(n, dstr);
    validate_weights(w);
    if (!fstr.empty()) {
        FixedPoint f;
        std::stringstream ss(fstr);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(std::stoi(tok));
        Json j = datum_to_json(build_hf(f, w));
        j["f"] = f;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::uint64_t count = fixed_point_count(n, w.m());
    if (count > (1ull << 20))
        throw ArgumentError("dump-hf: " + std::to_string(count) +
                            " fixed points; pass --f to select one");
    Json arr = Json::array();
    for (std::uint64_t i = 0; i < count; ++i) {
        FixedPoint f = fixed_point_at(n, w.m(), i);
        Json j = datum_to_json(build_hf(f, w));
        j["f"] = f;
        arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact volumes for weighted quotient moduli"};
    app.require_subcommand(1);

    // ---- arr ----
    auto* arr = app.add_subcommand("arr", "Volume of a weighted arrangement quotient");
    int arr_n = 1;
    std::string arr_d, arr_method = "closed", arr_format = "table";
    int arr_threads = 1;
    arr->add_option("--n", arr_n, "Ambient projective dimension (1 or 2)")->required();
    arr->add_option("--d", arr_d, "Comma-separated weights, e.g. 3/10,3/10,3/10,2/5")
        ->required();
    arr->add_option("--method", arr_method, "closed | residue | both");
    arr->add_option("--format", arr_format, "json | csv | table");
    arr->add_option("--threads", arr_threads, "Worker threads");

    // ---- dp4 ----
    auto* dp4 = app.add_subcommand("dp4", "Del Pezzo family volume scalar");
    int dp4_m = 5, dp4_n = 0;
    std::string dp4_cmode = "paper", dp4_c, dp4_format = "table";
    dp4->add_option("--m", dp4_m, "Number of symmetric terms (family parameter)")->required();
    dp4->add_option("--dim-n", dp4_n, "Leading-constant dimension parameter (default m-2)");
    dp4->add_option("--c-mode", dp4_cmode, "paper | ring | explicit");
    dp4->add_option("--c", dp4_c, "Explicit leading constant (rational), with --c-mode explicit");
    dp4->add_option("--format", dp4_format, "json | csv | table");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "Evaluate a grid of weight vectors");
    int sw_n = 1, sw_m = 4, sw_threads = 1;
    std::string sw_grid, sw_method = "closed", sw_format = "csv";
    sweep->add_option("--n", sw_n, "Ambient projective dimension (1 or 2)")->required();
    sweep->add_option("--m", sw_m, "Number of weights")->required();
    sweep->add_option("--grid", sw_grid,
                      "start:stop:step for all weights, or ';'-separated per-weight axes")
        ->required();
    sweep->add_option("--method", sw_method, "closed | residue | both");
    sweep->add_option("--format", sw_format, "csv | json");
    sweep->add_option("--threads", sw_threads, "Worker threads");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Seeded self-verification suites");
    std::string vf_suite = "all";
    std::uint64_t vf_seed = 12345, vf_trials = 0;
    int vf_threads = 1;
    verify->add_option("--suite", vf_suite, "identities | arr1 | arr2 | dp4 | ring | all");
    verify->add_option("--seed", vf_seed, "PRNG seed");
    verify->add_option("--trials", vf_trials, "Trial count override (0 = suite default)");
    verify->add_option("--threads", vf_threads, "Worker threads");

    // ---- dump ----
    auto* dump = app.add_subcommand("dump", "Inspection dumps (JSON)");
    int du_n = 1, du_ring = 0;
    std::string du_d, du_f;
    dump->add_option("--dump-hf", du_d,
                     "Dump per-fixed-point residue data for these weights (comma list)");
    dump->add_option("--n", du_n, "Ambient projective dimension for --dump-hf");
    dump->add_option("--f", du_f, "Single fixed point, comma list of vertices");
    dump->add_option("--dump-ring", du_ring, "Dump the intersection-ring trace for this n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (arr->parsed()) {
            WeightVector w = parse_weights(arr_n, arr_d);
            try {
                VolumeReport r = vol_arrangement(w, parse_method(arr_method), arr_threads);
                print_report(r, arr_format);
            } catch (const NonGenericError& e) {
                return report_wall(e, arr_format);
            }
            return kExitOk;
        }
        if (dp4->parsed()) {
            Dp4Options opt;
            opt.m = dp4_m;
            opt.n = dp4_n;
            opt.c_mode = parse_cmode(dp4_cmode);
            if (opt.c_mode == CMode::Explicit) {
                if (dp4_c.empty())
                    throw ArgumentError("--c-mode explicit requires --c <rational>");
                opt.c_explicit = parse_rational(dp4_c);
            }
            VolumeReport r = dp4_volume(opt);
            print_report(r, dp4_format);
            return r.c_mismatch ? kExitCMismatch : kExitOk;
        }
        if (sweep->parsed())
            return run_sweep(sw_n, sw_m, sw_grid, parse_method(sw_method), sw_threads,
                             sw_format);
        if (verify->parsed()) return run_verify(vf_suite, vf_seed, vf_trials, vf_threads);
        if (dump->parsed()) {
            if (du_ring > 0) {
                std::cout << ring_trace_to_json(ring_trace(du_ring)).dump(2) << "\n";
                return kExitOk;
            }
            if (!du_d.empty()) return run_dump_hf(du_n, du_d, du_f);
            throw ArgumentError("dump: pass --dump-hf <weights> or --dump-ring <n>");
        }
    } catch (const NonGenericError& e) {
        return report_wall(e, "table");
    } catch (const StabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStability;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
