// Scenario pipeline: gauge solve -> analytic modes -> lattice spectrum ->
// robustness sweep, with machine-readable reports and plot-ready exports.

#pragma once

#include "zeromode/scenario.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace zm {

enum class PipelineStage { gauge, modes, spectrum, sweep };

struct PipelineOptions {
    PipelineStage upto = PipelineStage::sweep;
    std::string out_dir_override;
    bool force_dense = false;
    std::optional<std::uint64_t> seed_override;
    bool quiet = false;
};

struct PipelineResult {
    nlohmann::json report;
    bool all_pass = false;
    std::string out_dir;
};

// Executes the configured stages, writes CSV/dat artifacts and report.json
// into the output directory, and collects named pass/fail verdicts.
// Throws argument_error for config-level problems and solver_failure for
// solver breakdowns; verdict failures are reported, not thrown.
PipelineResult run_pipeline(const ScenarioConfig& config, const PipelineOptions& opts = {});

} // namespace zm
