// Acceptance suite: every release-gating property at desk scale, one
// PASS/FAIL line per criterion.  Exit code is the number of failures.

#include "zeromode/errors.hpp"
#include "zeromode/flux.hpp"
#include "zeromode/gauge.hpp"
#include "zeromode/pipeline.hpp"
#include "zeromode/rng.hpp"
#include "zeromode/scenario.hpp"
#include "zeromode/spectrum.hpp"
#include "zeromode/zeromode.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace zm;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& title,
                   const std::function<bool(std::string&)>& body) {
    const auto t0 = clock_type::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    std::printf("[criterion %d] %s  %s (%s) [%.1fs]\n", number, pass ? "PASS" : "FAIL",
                title.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < h.size(); ++i) {
        lx.push_back(std::log2(h[i]));
        ly.push_back(std::log2(err[i]));
    }
    return test::fit_line(lx, ly).second;
}

// --- 1. analytic-mode annihilation ------------------------------------------
bool criterion1(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    const std::vector<std::pair<std::string, FieldProfile>> profiles = {
        {"uniform", FieldProfile::uniform(1.0)},
        {"antidot", FieldProfile::antidot(1.0, 2.0)},
    };
    for (const auto& [name, prof] : profiles) {
        std::vector<double> hs;
        std::vector<std::vector<double>> errs(4);
        for (int N : {64, 128, 256}) {
            const Grid g(12.0, N);
            auto lam = std::make_shared<const ScalarPotential>(solve_lambda(prof, g));
            const auto A = gauge_from_lambda(*lam);
            hs.push_back(g.h());
            for (int j = 0; j <= 3; ++j)
                errs[j].push_back(dirac_residual(build_mode(j, lam, -1, Valley::K), A));
        }
        for (int j = 0; j <= 3; ++j) {
            const double order = fit_order(hs, errs[j]);
            const double C = errs[j].back() / (hs.back() * hs.back());
            ok = ok && order >= 1.8 && order <= 2.2 && C < 2.0;
            if (j == 3) os << name << " j3 order " << order << "; ";
        }
    }
    detail = os.str();
    return ok;
}

// --- 2. pseudospin selection -------------------------------------------------
bool criterion2(std::string& detail) {
    const Grid g(16.0, 192);
    auto lam = std::make_shared<const ScalarPotential>(
        solve_lambda(FieldProfile::uniform(1.0), g));
    bool ok = true;
    double worst_rel = 0.0;
    for (int j = 0; j <= 3; ++j) {
        const auto mode = build_mode(j, lam, -1, Valley::K);
        double oracle = 2.0 * std::numbers::pi;
        for (int t = 1; t <= j; ++t) oracle *= 2.0 * t;
        const double rel = std::abs(norm_squared(mode, 16.0) / oracle - 1.0);
        worst_rel = std::max(worst_rel, rel);
        ok = ok && rel <= 1e-6;
    }
    const auto bad = build_mode(0, lam, +1, Valley::K);  // gamma*B0 > 0
    double worst_ratio = 1e300;
    for (double R : {3.0, 4.0}) {
        const double ratio = norm_squared(bad, 2.0 * R) / norm_squared(bad, R);
        worst_ratio = std::min(worst_ratio, ratio);
        ok = ok && ratio > 10.0;
    }
    std::ostringstream os;
    os << "moment rel " << worst_rel << ", growth ratio >= " << worst_ratio;
    detail = os.str();
    return ok;
}

// --- 3. index-flux correspondence ---------------------------------------------
bool criterion3(std::string& detail) {
    struct Case {
        double quanta, radius, width;
    };
    const std::vector<Case> cases = {
        {0.5, 22.0, 3.5}, {1.5, 22.0, 3.5}, {2.5, 22.0, 3.5},
        {4.5, 26.0, 4.5}, {6.5, 30.0, 5.0}};
    std::ostringstream os;
    bool ok = true;
    for (const Case& c : cases) {
        const auto patch = build_patch_disk(c.radius);
        if (patch.size() > 3000) return false;
        const auto prof = FieldProfile::with_bumps(
            0.0, {{0.0, 0.0, c.quanta / (c.width * c.width), c.width}});
        const auto flux = total_flux(prof, c.radius);
        const int n = count_modes_compact_flux(flux);
        const auto H = peierls_hamiltonian(patch, gauge_from_profile(prof), 1.0);
        const auto res = near_zero_spectrum(
            H, 60, default_window(0.0, 1.0, patch.extent()), SolverPath::dense);
        const int index = chiral_index(res);
        ok = ok && index == n;
        os << c.quanta << ":" << index << "=" << n << " ";
    }
    detail = os.str();
    return ok;
}

// --- 4. zero-level sublattice polarization ------------------------------------
bool criterion4(std::string& detail) {
    const auto patch = build_patch_disk(22.0);
    const double B = 0.0704;  // lattice units; l_B ~ 3.8 bonds, phi_p ~ 0.029 phi0
    const auto H =
        peierls_hamiltonian(patch, gauge_from_profile(FieldProfile::uniform(B)), 1.0);
    const double W = default_window(B, 1.0, patch.extent());
    const auto res = near_zero_spectrum(H, 170, W, SolverPath::dense);
    const auto pol = sublattice_polarization(res);
    bool ok = pol.N_A + pol.N_B >= 4;
    double worst_zero = 1.0;
    for (const auto& s : pol.states)
        if (s.bulk) {
            worst_zero = std::min(worst_zero, std::abs(s.polarization));
            ok = ok && std::abs(s.polarization) >= 0.99;
        }
    const double E1 = 1.5 * std::sqrt(2.0 * B);
    double worst_ll1 = 0.0;
    int ll1 = 0;
    for (std::size_t i = 0; i < res.pairs.size(); ++i) {
        if (std::abs(std::abs(res.pairs[i].energy) - E1) > 0.08 * E1) continue;
        const auto sr = state_polarization(res, static_cast<int>(i));
        if (!sr.bulk) continue;
        worst_ll1 = std::max(worst_ll1, std::abs(sr.polarization));
        ok = ok && std::abs(sr.polarization) <= 0.2;
        ++ll1;
    }
    ok = ok && ll1 >= 2;
    std::ostringstream os;
    os << "zero-level |P| >= " << worst_zero << " (" << pol.N_A + pol.N_B
       << " states), LL1 |P| <= " << worst_ll1 << " (" << ll1 << " states)";
    detail = os.str();
    return ok;
}

// --- 5. robustness under seeded zero-net-flux disorder -------------------------
bool criterion5(std::string& detail) {
    const auto patch = build_patch_disk(18.0);
    const double B = 0.05;
    const double W = default_window(B, 1.0, patch.extent());
    std::vector<std::vector<Bump>> perts;
    for (int s = 0; s < 5; ++s) {
        std::vector<Bump> set;
        for (int b = 0; b < 2; ++b) {
            const double r = 6.0 * std::sqrt(rng::uniform01(77, 30 + s, 2 * b));
            const double th = 2.0 * std::numbers::pi * rng::uniform01(77, 30 + s, 2 * b + 1);
            const double amp = 0.012 + 0.01 * rng::uniform01(77, 40 + s, b);
            set.push_back({r * std::cos(th), r * std::sin(th), amp, 1.8});
            set.push_back({-r * std::cos(th), -r * std::sin(th), -amp, 1.8});
        }
        perts.push_back(std::move(set));
    }
    const auto rep = robustness_sweep(FieldProfile::uniform(B), perts, patch, 40, 1.0, W,
                                      SolverPath::dense);
    bool ok = rep.all_invariant && rep.rows.size() == 5;
    int count_changes = 0;
    double worst_e = 0.0;
    for (const auto& row : rep.rows) {
        ok = ok && row.window_contained && row.index_invariant;
        if (row.window_count != rep.baseline_count) ++count_changes;
        worst_e = std::max(worst_e, row.max_window_abs_energy);
    }
    ok = ok && count_changes == 0;
    std::ostringstream os;
    os << "baseline index " << rep.baseline_index << ", count " << rep.baseline_count
       << ", max window |E| " << worst_e << " < W " << W;
    detail = os.str();
    return ok;
}

// --- 6. infinite-degeneracy surrogate: count vs area ---------------------------
bool criterion6(std::string& detail) {
    const double B = 1.0 / 9.0;  // lattice units; phi_p = 0.046 phi0
    std::vector<double> areas, counts;
    for (double R : {36.0, 44.0, 52.0}) {
        const auto patch = build_patch_disk(R);
        const auto H =
            peierls_hamiltonian(patch, gauge_from_profile(FieldProfile::uniform(B)), 1.0);
        const double W = default_window(B, 1.0, patch.extent());
        counts.push_back(zero_window_count_folded(H, W));
        areas.push_back(std::numbers::pi * R * R);
    }
    const double slope = test::fit_line(areas, counts).second;
    const double expected = 2.0 * B / kFluxQuantum;
    const double rel = std::abs(slope / expected - 1.0);
    std::ostringstream os;
    os << "slope " << slope << " vs 2B0/phi0 " << expected << " (" << rel * 100.0 << "%)";
    detail = os.str();
    return rel <= 0.15;
}

// --- 7. structural orthogonality ----------------------------------------------
bool criterion7(std::string& detail) {
    const Grid g(20.0, 224);
    auto lam = std::make_shared<const ScalarPotential>(
        solve_lambda(FieldProfile::uniform(1.0), g));
    const auto plus = valley_pair_state(+1, 0, lam);
    const auto minus = valley_pair_state(-1, 0, lam);
    const cplx ov = overlap(plus, minus, 18.0);
    bool ok = ov == cplx(0.0, 0.0);

    std::vector<SpinorField> modes;
    for (int j = 0; j <= 5; ++j) modes.push_back(build_mode(j, lam, -1, Valley::K));
    double worst = 0.0;
    for (int a = 0; a <= 5; ++a) {
        const double na = norm_squared(modes[a], 20.0);
        for (int b = a + 1; b <= 5; ++b) {
            const double nb = norm_squared(modes[b], 20.0);
            worst = std::max(worst,
                             std::abs(overlap(modes[a], modes[b], 20.0)) / std::sqrt(na * nb));
        }
    }
    ok = ok && worst <= 1e-8;
    std::ostringstream os;
    os << "pair overlap exactly 0, Gram offdiag " << worst;
    detail = os.str();
    return ok;
}

// --- 8. gauge-module oracle -----------------------------------------------------
bool criterion8(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    // smooth axisymmetric profiles against the radial-ODE quadrature oracle
    const std::vector<std::pair<std::string, FieldProfile>> smooth = {
        {"uniform", FieldProfile::uniform(1.0)},
        {"bump", FieldProfile::with_bumps(1.0, {{0.0, 0.0, 0.5, 1.0}})},
    };
    for (const auto& [name, prof] : smooth) {
        const Grid g(12.0, 256);
        const auto lam = solve_lambda(prof, g);
        test::RadialLambdaOracle oracle(prof);
        double worst = 0.0, scale = 0.0;
        for (int iy = 1; iy < g.N - 1; ++iy)
            for (int ix = 1; ix < g.N - 1; ++ix) {
                const double ref = oracle(std::hypot(g.coord(ix), g.coord(iy)));
                worst = std::max(worst, std::abs(lam.at(ix, iy) - ref));
                scale = std::max(scale, std::abs(ref));
            }
        const double rel = worst / scale;
        ok = ok && rel <= 1e-6;
        os << name << " rel " << rel << "; ";
    }
    // curl residual converges at order 2 (fixed margin at the field jump)
    const auto anti = FieldProfile::antidot(1.0, 2.0);
    std::vector<double> hs, errs;
    for (int N : {128, 256}) {
        const Grid g(12.0, N);
        hs.push_back(g.h());
        errs.push_back(verify_curl(gauge_from_lambda(solve_lambda(anti, g)), anti, 0.5));
    }
    const double order = test::measured_order(errs[0], errs[1]);
    ok = ok && order >= 1.6 && order <= 2.4;
    os << "curl order " << order;
    detail = os.str();
    return ok;
}

// --- 9. determinism --------------------------------------------------------------
bool criterion9(std::string& detail) {
    const std::string cfg_text =
        "format = 1\n[profile]\nkind = uniform\nB0 = 1\n[grid]\nN = 96\n"
        "[lattice]\nradius = 14\n[run]\nmodes = 0,1\nk = 24\nsweep_count = 2\nseed = 9\n";
    const ScenarioConfig cfg = parse_config(cfg_text);
    auto run_to = [&](const std::string& dir) {
        PipelineOptions opts;
        opts.out_dir_override = dir;
        opts.quiet = true;
        return run_pipeline(cfg, opts);
    };
    const auto res1 = run_to("acceptance-out/run1");
    const auto res2 = run_to("acceptance-out/run2");
    bool ok = res1.all_pass && res2.all_pass;

    // CSV bodies must be byte-identical
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator("acceptance-out/run1")) {
        const std::string name = entry.path().filename().string();
        if (name == "report.json") continue;
        std::ifstream f1(entry.path(), std::ios::binary);
        std::ifstream f2("acceptance-out/run2/" + name, std::ios::binary);
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        ok = ok && !s1.str().empty() && s1.str() == s2.str();
        ++files;
    }
    // reports identical once the wall-clock block is stripped
    auto strip = [](nlohmann::json j) {
        j.erase("timings_ms");
        return j;
    };
    ok = ok && strip(res1.report) == strip(res2.report);
    std::ostringstream os;
    os << files << " artifacts byte-identical, reports identical modulo timings";
    detail = os.str();
    return ok;
}

} // namespace

int main() {
    std::printf("zeromode acceptance suite\n");
    run_criterion(1, "analytic-mode annihilation at order 2", criterion1);
    run_criterion(2, "pseudospin selection (moment oracle + growth)", criterion2);
    run_criterion(3, "index-flux correspondence (dense oracle)", criterion3);
    run_criterion(4, "zero-level sublattice polarization", criterion4);
    run_criterion(5, "robustness under zero-net-flux disorder", criterion5);
    run_criterion(6, "degeneracy grows linearly with area", criterion6);
    run_criterion(7, "structural orthogonality", criterion7);
    run_criterion(8, "gauge-module oracle equivalence", criterion8);
    run_criterion(9, "pipeline determinism", criterion9);
    std::printf("%d of 9 criteria failed\n", g_failures);
    return g_failures;
}
