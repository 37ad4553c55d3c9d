#include "zeromode/pipeline.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/flux.hpp"
#include "zeromode/gauge.hpp"
#include "zeromode/quadrature.hpp"
#include "zeromode/rng.hpp"
#include "zeromode/spectrum.hpp"
#include "zeromode/zeromode.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace zm {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_grid_csv(const std::string& path, const Grid& g,
                    const std::vector<double>& values) {
    std::ofstream out(path);
    out << "x,y,value\n";
    for (int iy = 0; iy < g.N; ++iy)
        for (int ix = 0; ix < g.N; ++ix)
            out << fmt17(g.coord(ix)) << ',' << fmt17(g.coord(iy)) << ','
                << fmt17(values[g.idx(ix, iy)]) << '\n';
}

void write_spinor_csv(const std::string& path, const SpinorField& mode) {
    std::ofstream out(path);
    out << "x,y,re_psiA,im_psiA,re_psiB,im_psiB\n";
    const Grid& g = mode.grid;
    for (int iy = 0; iy < g.N; ++iy)
        for (int ix = 0; ix < g.N; ++ix) {
            const std::size_t i = g.idx(ix, iy);
            out << fmt17(g.coord(ix)) << ',' << fmt17(g.coord(iy)) << ','
                << fmt17(mode.psiA[i].real()) << ',' << fmt17(mode.psiA[i].imag()) << ','
                << fmt17(mode.psiB[i].real()) << ',' << fmt17(mode.psiB[i].imag()) << '\n';
        }
}

void write_field_map_dat(const std::string& path, const Grid& g,
                         const std::vector<double>& B, const std::vector<double>& lam) {
    std::ofstream out(path);
    out << "# x y B lambda\n";
    for (int iy = 0; iy < g.N; ++iy) {
        for (int ix = 0; ix < g.N; ++ix) {
            const std::size_t i = g.idx(ix, iy);
            out << fmt17(g.coord(ix)) << ' ' << fmt17(g.coord(iy)) << ' ' << fmt17(B[i])
                << ' ' << fmt17(lam[i]) << '\n';
        }
        out << '\n';  // gnuplot grid separator
    }
}

void write_psi2_dat(const std::string& path, const SpinorField& mode) {
    std::ofstream out(path);
    out << "# x y |psiA|^2 |psiB|^2\n";
    const Grid& g = mode.grid;
    for (int iy = 0; iy < g.N; ++iy) {
        for (int ix = 0; ix < g.N; ++ix) {
            const std::size_t i = g.idx(ix, iy);
            out << fmt17(g.coord(ix)) << ' ' << fmt17(g.coord(iy)) << ' '
                << fmt17(std::norm(mode.psiA[i])) << ' ' << fmt17(std::norm(mode.psiB[i]))
                << '\n';
        }
        out << '\n';
    }
}

struct Verdicts {
    json list = json::array();
    bool all = true;

    void add(const std::string& name, double value, double tolerance, bool pass) {
        list.push_back({{"name", name},
                        {"value", value},
                        {"tolerance", tolerance},
                        {"pass", pass}});
        all = all && pass;
    }
};

class StageTimer {
public:
    explicit StageTimer(json& sink) : sink_(sink) {}
    void mark(const std::string& stage) {
        const auto now = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(now - last_).count();
        sink_[stage] = ms;
        last_ = now;
    }

private:
    json& sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// closed-form norm of the uniform-field mode: 2 pi 2^j j! / B0^(j+1)
double uniform_moment(int j, double b0) {
    double v = 2.0 * std::numbers::pi;
    for (int k = 1; k <= j; ++k) v *= 2.0 * k;
    for (int k = 0; k <= j; ++k) v /= b0;
    return v;
}

} // namespace

PipelineResult run_pipeline(const ScenarioConfig& config_in, const PipelineOptions& opts) {
    ScenarioConfig config = config_in;
    if (opts.seed_override) {
        config.seed = *opts.seed_override;
        config.bump_seed = *opts.seed_override;
    }

    std::string out_dir = !opts.out_dir_override.empty() ? opts.out_dir_override
                          : !config.out_dir.empty()      ? config.out_dir
                                                         : std::string();
    if (out_dir.empty()) {
        const char* env = std::getenv("ZEROMODE_OUT");
        out_dir = (env != nullptr && *env != '\0') ? env : "zeromode-out";
    }
    std::filesystem::create_directories(out_dir);
    auto path = [&](const std::string& name) { return out_dir + "/" + name; };

    const FieldProfile profile = config.make_profile();
    const Grid grid(config.resolved_grid_L(), config.grid_N);
    const double h = grid.h();

    json report;
    report["format"] = 1;
    report["config"] = {
        {"profile", profile.describe()},
        {"B0", config.B0},
        {"grid_L", grid.L},
        {"grid_N", grid.N},
        {"lattice_shape", config.lattice_shape},
        {"lattice_constant", config.resolved_lattice_constant()},
        {"seed", config.seed},
        {"applied_defaults", config.applied_defaults},
    };
    json timings;
    StageTimer timer(timings);
    Verdicts verdicts;

    // --- stage 1-3: lambda, gauge, curl gate -------------------------------
    auto lambda = std::make_shared<const ScalarPotential>(solve_lambda(profile, grid));
    const GaugePotential A = gauge_from_lambda(*lambda);
    const double curl_res = verify_curl(A, profile);
    const double curl_tol = 4.0 * h * h + 1e-12;  // pinned: C = 4 at 2nd order
    verdicts.add("curl-residual", curl_res, curl_tol, curl_res <= curl_tol);

    const double flux_radius = 0.75 * grid.L;
    const FluxReport flux = total_flux(profile, flux_radius);

    {
        const GridField B = sample_field(profile, grid);
        write_grid_csv(path("field.csv"), grid, B.values);
        write_grid_csv(path("lambda.csv"), grid, lambda->values);
        write_grid_csv(path("gauge_ax.csv"), grid, A.Ax);
        write_grid_csv(path("gauge_ay.csv"), grid, A.Ay);
        write_field_map_dat(path("field_map.dat"), grid, B.values, lambda->values);
    }
    report["stages"]["gauge"] = {
        {"solver_iterations", lambda->solver_iterations},
        {"solver_residual", lambda->solver_residual},
        {"curl_residual", curl_res},
        {"curl_tolerance", curl_tol},
        {"flux",
         {{"radius", flux.radius},
          {"phi", flux.phi},
          {"quanta", flux.quanta},
          {"n", flux.n},
          {"epsilon", flux.epsilon},
          {"integer_flux", flux.integer_flux}}},
    };
    timer.mark("gauge");

    PipelineResult result;
    result.out_dir = out_dir;

    if (opts.upto == PipelineStage::gauge) {
        report["verdicts"] = verdicts.list;
        report["all_pass"] = verdicts.all;
        report["timings_ms"] = timings;
        std::ofstream(path("report.json")) << report.dump(2) << '\n';
        result.report = std::move(report);
        result.all_pass = verdicts.all;
        return result;
    }

    // --- stage 4: analytic modes -------------------------------------------
    json mode_reports = json::array();
    const int gamma_good = config.B0 > 0.0 ? -1 : (config.B0 < 0.0 ? +1 : -1);
    std::vector<SpinorField> modes;
    const double mode_tol = 2.0 * h * h;
    const double norm_radius = 0.95 * grid.L;
    for (int j : config.mode_js) {
        SpinorField mode = build_mode(j, lambda, gamma_good, Valley::K);
        const double res = dirac_residual(mode, A);
        const double nrm = norm_squared(mode, norm_radius);
        json cert = {{"j", j},
                     {"gamma", gamma_good},
                     {"valley", "K"},
                     {"dirac_residual", res},
                     {"residual_tolerance", mode_tol},
                     {"norm", nrm},
                     {"norm_radius", norm_radius}};
        if (config.B0 != 0.0) {
            cert["normalizable"] = normalizable(gamma_good, config.B0);
            if (profile.kind == ProfileKind::uniform) {
                const double oracle = uniform_moment(j, std::abs(config.B0));
                cert["moment_oracle"] = oracle;
                const bool ok = std::abs(nrm - oracle) <= 1e-6 * oracle;
                verdicts.add("moment-oracle-j" + std::to_string(j),
                             std::abs(nrm / oracle - 1.0), 1e-6, ok);
            }
        }
        verdicts.add("mode-residual-j" + std::to_string(j), res, mode_tol,
                     res <= mode_tol);
        mode_reports.push_back(cert);
        write_spinor_csv(path("mode_j" + std::to_string(j) + ".csv"), mode);
        write_psi2_dat(path("psi2_j" + std::to_string(j) + ".dat"), mode);
        modes.push_back(std::move(mode));
    }
    // growth of the against-the-rule branch (finite-radius witness)
    if (config.B0 != 0.0) {
        const SpinorField bad = build_mode(0, lambda, -gamma_good, Valley::K);
        const double lb = 1.0 / std::sqrt(std::abs(config.B0));
        const double r1 = std::min(3.0 * lb, 0.45 * grid.L);
        const double ratio = norm_squared(bad, 2.0 * r1) / norm_squared(bad, r1);
        verdicts.add("nonnormalizable-growth-ratio", ratio, 10.0, ratio > 10.0);
        report["stages"]["modes"]["growth_ratio"] = ratio;
    }
    // Gram orthogonality across the configured degrees
    double gram_worst = 0.0;
    for (std::size_t a = 0; a < modes.size(); ++a)
        for (std::size_t b = a + 1; b < modes.size(); ++b) {
            const double na = norm_squared(modes[a], norm_radius);
            const double nb = norm_squared(modes[b], norm_radius);
            const cplx g = overlap(modes[a], modes[b], norm_radius);
            gram_worst = std::max(gram_worst, std::abs(g) / std::sqrt(na * nb));
        }
    if (modes.size() > 1)
        verdicts.add("gram-offdiagonal", gram_worst, 1e-8, gram_worst <= 1e-8);
    report["stages"]["modes"]["certificates"] = mode_reports;
    report["stages"]["modes"]["gram_offdiagonal_rel"] = gram_worst;
    if (config.B0 == 0.0)
        report["stages"]["modes"]["compact_flux_count"] = count_modes_compact_flux(flux);
    timer.mark("modes");

    if (opts.upto == PipelineStage::modes) {
        report["verdicts"] = verdicts.list;
        report["all_pass"] = verdicts.all;
        report["timings_ms"] = timings;
        std::ofstream(path("report.json")) << report.dump(2) << '\n';
        result.report = std::move(report);
        result.all_pass = verdicts.all;
        return result;
    }

    // --- stage 5: lattice spectrum -----------------------------------------
    const double a_c = config.resolved_lattice_constant();
    const HoneycombPatch patch = config.lattice_shape == "disk"
                                     ? build_patch_disk(config.lattice_radius)
                                     : build_patch_rectangle(config.lattice_n1,
                                                             config.lattice_n2);
    const SparseHamiltonian H = peierls_hamiltonian(patch, gauge_from_profile(profile), a_c);
    const double W =
        config.window > 0.0 ? config.window : default_window(config.B0, a_c, patch.extent());
    const SolverPath solver_path =
        (opts.force_dense || config.force_dense) ? SolverPath::dense : SolverPath::automatic;
    const SpectrumResult sres = near_zero_spectrum(H, config.eig_k, W, solver_path);
    const PolarizationReport pol = sublattice_polarization(sres);
    const int index = chiral_index(sres);

    {
        std::ofstream out(path("spectrum.csv"));
        out << "index,energy,abs_energy,in_window,polarization,bulk_weight\n";
        for (std::size_t i = 0; i < sres.pairs.size(); ++i) {
            const auto sr = state_polarization(sres, static_cast<int>(i));
            const bool inw = std::abs(sres.pairs[i].energy) < W;
            out << i << ',' << fmt17(sres.pairs[i].energy) << ','
                << fmt17(std::abs(sres.pairs[i].energy)) << ',' << (inw ? 1 : 0) << ','
                << fmt17(sr.polarization) << ',' << fmt17(sr.bulk_weight) << '\n';
        }
        std::ofstream ladder(path("ladder.dat"));
        ladder << "# index energy\n";
        if (sres.complete_spectrum) {
            for (std::size_t i = 0; i < sres.all_eigenvalues.size(); ++i)
                ladder << i << ' ' << fmt17(sres.all_eigenvalues[i]) << '\n';
        } else {
            for (std::size_t i = 0; i < sres.pairs.size(); ++i)
                ladder << i << ' ' << fmt17(sres.pairs[i].energy) << '\n';
        }
    }

    json spec_report = {
        {"sites", patch.size()},
        {"lattice_constant", a_c},
        {"flux_per_plaquette_cap", config.flux_cap},
        {"window", W},
        {"window_count", sres.window_count()},
        {"solver_path", sres.path_used == SolverPath::dense ? "dense" : "sparse"},
        {"N_A", pol.N_A},
        {"N_B", pol.N_B},
        {"sublattice_index_difference", pol.N_B - pol.N_A},
        {"chiral_index", index},
    };
    // polarization quality of bulk window states
    double worst_pol = 1.0;
    int bulk_states = 0;
    for (const auto& s : pol.states)
        if (s.bulk) {
            worst_pol = std::min(worst_pol, std::abs(s.polarization));
            ++bulk_states;
        }
    if (bulk_states > 0)
        verdicts.add("window-polarization", worst_pol, 0.99, worst_pol >= 0.99);
    spec_report["bulk_window_states"] = bulk_states;

    // spectral symmetry gate on complete spectra
    if (sres.complete_spectrum) {
        double asym = 0.0;
        const auto& ev = sres.all_eigenvalues;
        for (std::size_t i = 0; i < ev.size(); ++i)
            asym = std::max(asym, std::abs(ev[i] + ev[ev.size() - 1 - i]));
        verdicts.add("spectral-symmetry", asym, 1e-9, asym <= 1e-9);
    }
    // index-flux correspondence in the compact regime
    if (config.B0 == 0.0) {
        const int expected = count_modes_compact_flux(flux);
        spec_report["index_flux_expected"] = expected;
        verdicts.add("index-flux", index, expected, index == expected);
    }
    report["stages"]["spectrum"] = spec_report;
    timer.mark("spectrum");

    // --- stage 6: robustness sweep -----------------------------------------
    if (opts.upto == PipelineStage::sweep && config.sweep_count > 0) {
        std::vector<std::vector<Bump>> perts;
        const double extent_c = 0.5 * patch.extent() * a_c;
        for (int sidx = 0; sidx < config.sweep_count; ++sidx) {
            // zero-net-flux dipole pairs, seeded from the run seed
            const double r = extent_c * std::sqrt(rng::uniform01(config.seed, 20, 2 * sidx));
            const double th = 2.0 * std::numbers::pi * rng::uniform01(config.seed, 20, 2 * sidx + 1);
            const double amp = config.sweep_amplitude *
                               (0.5 + rng::uniform01(config.seed, 21, sidx));
            const double w = config.sweep_width * a_c;
            perts.push_back({Bump{r * std::cos(th), r * std::sin(th), amp, w},
                             Bump{-r * std::cos(th), -r * std::sin(th), -amp, w}});
        }
        const SweepReport sweep =
            robustness_sweep(profile, perts, patch, config.eig_k, a_c, W, solver_path);
        json rows = json::array();
        std::ofstream sweep_csv(path("sweep.csv"));
        sweep_csv << "id,window_count,chiral_index,max_window_abs_energy,index_invariant,"
                     "window_contained\n";
        bool windows_ok = true;
        for (const auto& row : sweep.rows) {
            rows.push_back({{"id", row.perturbation_id},
                            {"window_count", row.window_count},
                            {"chiral_index", row.index},
                            {"max_window_abs_energy", row.max_window_abs_energy},
                            {"index_invariant", row.index_invariant},
                            {"window_contained", row.window_contained}});
            sweep_csv << row.perturbation_id << ',' << row.window_count << ',' << row.index
                      << ',' << fmt17(row.max_window_abs_energy) << ','
                      << row.index_invariant << ',' << row.window_contained << '\n';
            windows_ok = windows_ok && row.window_contained;
        }
        report["stages"]["sweep"] = {{"baseline_index", sweep.baseline_index},
                                     {"baseline_count", sweep.baseline_count},
                                     {"rows", rows}};
        verdicts.add("sweep-index-invariance", sweep.all_invariant ? 1.0 : 0.0, 1.0,
                     sweep.all_invariant);
        verdicts.add("sweep-window-containment", windows_ok ? 1.0 : 0.0, 1.0, windows_ok);
        timer.mark("sweep");
    }

    report["verdicts"] = verdicts.list;
    report["all_pass"] = verdicts.all;
    report["timings_ms"] = timings;
    std::ofstream(path("report.json")) << report.dump(2) << '\n';
    result.report = std::move(report);
    result.all_pass = verdicts.all;
    return result;
}

} // namespace zm
