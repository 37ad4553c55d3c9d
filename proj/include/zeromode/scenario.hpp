// Declarative scenario configuration: line-oriented `key = value` with
// [section] headers (dotted keys are accepted too).  `format = 1` is
// required.  Unknown keys are rejected with a nearest-key suggestion;
// range violations name the bound.  Applied defaults are recorded so the
// report can echo the fully resolved configuration.

#pragma once

#include "zeromode/field_profile.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace zm {

struct ScenarioConfig {
    // profile
    std::string profile_kind = "uniform";
    double B0 = 1.0;
    double R = 0.0;
    std::vector<Bump> bumps;
    int bump_count = 0;
    std::uint64_t bump_seed = 1;
    double bump_amp_lo = -0.1, bump_amp_hi = 0.1;
    double bump_width_lo = 1.0, bump_width_hi = 2.0;
    double bump_placement_radius = 4.0;

    // grid
    double grid_L = 0.0;   // 0: default 12 magnetic lengths
    int grid_N = 128;

    // lattice
    std::string lattice_shape = "disk";
    double lattice_radius = 20.0;  // bond lengths
    int lattice_n1 = 12, lattice_n2 = 12;
    double lattice_constant = 0.0;  // 0: derived from the flux cap
    double flux_cap = 0.05;        // max |phi_p| / phi0

    // run
    std::vector<int> mode_js = {0, 1, 2, 3};
    int eig_k = 40;
    double window = 0.0;  // 0: module default
    int sweep_count = 0;
    std::uint64_t seed = 1;
    double sweep_amplitude = 0.02;
    double sweep_width = 2.0;
    bool force_dense = false;

    // output
    std::string out_dir;

    std::vector<std::string> applied_defaults;

    FieldProfile make_profile() const;
    double resolved_grid_L() const;
    double resolved_lattice_constant() const;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

} // namespace zm
