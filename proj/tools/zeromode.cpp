// zeromode: configuration-driven front end for the gauge/mode/spectrum
// pipeline.  Exit codes: 0 all verdicts pass, 1 verdict failure, 2 config
// error, 3 solver failure.

#include <CLI11.hpp>
#include <json.hpp>

#include "zeromode/errors.hpp"
#include "zeromode/pipeline.hpp"
#include "zeromode/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    bool dense = false;
    bool quiet = false;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario configuration file")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: config/env)");
    cmd->add_flag("--dense", args.dense, "force the dense (oracle) eigensolver path");
    cmd->add_option("--seed", args.seed, "override the run seed");
    cmd->add_flag("--quiet", args.quiet, "suppress the verdict summary");
}

int run_stage(const CommonArgs& args, zm::PipelineStage upto) {
    try {
        const zm::ScenarioConfig cfg = zm::load_config_file(args.config_path);
        zm::PipelineOptions opts;
        opts.upto = upto;
        opts.out_dir_override = args.out_dir;
        opts.force_dense = args.dense;
        opts.quiet = args.quiet;
        if (args.seed >= 0) opts.seed_override = static_cast<std::uint64_t>(args.seed);
        const zm::PipelineResult res = zm::run_pipeline(cfg, opts);
        if (!args.quiet) {
            for (const auto& v : res.report["verdicts"])
                std::printf("%-34s value=%-12.5g tol=%-10.4g %s\n",
                            v["name"].get<std::string>().c_str(), v["value"].get<double>(),
                            v["tolerance"].get<double>(),
                            v["pass"].get<bool>() ? "PASS" : "FAIL");
            std::printf("report: %s/report.json  overall: %s\n", res.out_dir.c_str(),
                        res.all_pass ? "PASS" : "FAIL");
        }
        return res.all_pass ? 0 : 1;
    } catch (const zm::solver_failure& e) {
        std::fprintf(stderr, "solver failure: %s (residual %.3e)\n", e.what(), e.residual);
        return 3;
    } catch (const zm::argument_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

int print_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::fprintf(stderr, "cannot open report: %s\n", path.c_str());
        return 2;
    }
    nlohmann::json rep;
    try {
        in >> rep;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "malformed report: %s\n", e.what());
        return 2;
    }
    std::printf("profile: %s\n", rep["config"]["profile"].get<std::string>().c_str());
    if (rep.contains("stages")) {
        const auto& st = rep["stages"];
        if (st.contains("gauge"))
            std::printf("gauge:    curl residual %.3e (tol %.3e), flux %.6g quanta\n",
                        st["gauge"]["curl_residual"].get<double>(),
                        st["gauge"]["curl_tolerance"].get<double>(),
                        st["gauge"]["flux"]["quanta"].get<double>());
        if (st.contains("modes"))
            std::printf("modes:    %zu certificates, gram offdiag %.3e\n",
                        st["modes"]["certificates"].size(),
                        st["modes"]["gram_offdiagonal_rel"].get<double>());
        if (st.contains("spectrum"))
            std::printf("spectrum: %d window states, N_A=%d N_B=%d, chiral index %d (%s)\n",
                        st["spectrum"]["window_count"].get<int>(),
                        st["spectrum"]["N_A"].get<int>(), st["spectrum"]["N_B"].get<int>(),
                        st["spectrum"]["chiral_index"].get<int>(),
                        st["spectrum"]["solver_path"].get<std::string>().c_str());
        if (st.contains("sweep"))
            std::printf("sweep:    %zu rows, baseline index %d\n",
                        st["sweep"]["rows"].size(),
                        st["sweep"]["baseline_index"].get<int>());
    }
    for (const auto& v : rep["verdicts"])
        std::printf("  %-32s %s\n", v["name"].get<std::string>().c_str(),
                    v["pass"].get<bool>() ? "PASS" : "FAIL");
    std::printf("overall: %s\n", rep["all_pass"].get<bool>() ? "PASS" : "FAIL");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-energy modes of graphene in fields with constant asymptotics"};
    app.require_subcommand(1);

    CommonArgs gauge_args, modes_args, spectrum_args, sweep_args;
    auto* cmd_gauge = app.add_subcommand("gauge", "field, gauge scalar and curl gate");
    add_common(cmd_gauge, gauge_args);
    auto* cmd_modes = app.add_subcommand("modes", "through analytic mode certificates");
    add_common(cmd_modes, modes_args);
    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "through the lattice spectrum and chiral index");
    add_common(cmd_spectrum, spectrum_args);
    auto* cmd_sweep = app.add_subcommand("sweep", "full pipeline with robustness sweep");
    add_common(cmd_sweep, sweep_args);

    std::string report_path;
    auto* cmd_report = app.add_subcommand("report", "pretty-print an existing report");
    cmd_report->add_option("path", report_path, "report.json path")->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_gauge->parsed()) return run_stage(gauge_args, zm::PipelineStage::gauge);
    if (cmd_modes->parsed()) return run_stage(modes_args, zm::PipelineStage::modes);
    if (cmd_spectrum->parsed()) return run_stage(spectrum_args, zm::PipelineStage::spectrum);
    if (cmd_sweep->parsed()) return run_stage(sweep_args, zm::PipelineStage::sweep);
    if (cmd_report->parsed()) return print_report(report_path);
    return 2;
}
