#include "zeromode/scenario.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/flux.hpp"
#include "zeromode/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace zm {

namespace {

const std::vector<std::string> kKnownKeys = {
    "format",
    "profile.kind", "profile.B0", "profile.R", "profile.bumps",
    "profile.bump_count", "profile.bump_seed", "profile.bump_amplitude",
    "profile.bump_width", "profile.bump_placement_radius",
    "grid.L", "grid.N",
    "lattice.shape", "lattice.radius", "lattice.n1", "lattice.n2",
    "lattice.constant", "lattice.flux_cap",
    "run.modes", "run.k", "run.window", "run.sweep_count", "run.seed",
    "run.sweep_amplitude", "run.sweep_width", "run.dense",
    "output.dir",
};

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string nearest_key(const std::string& key) {
    std::string best = kKnownKeys.front();
    int bd = 1 << 20;
    for (const auto& k : kKnownKeys) {
        const int d = edit_distance(key, k);
        if (d < bd) {
            bd = d;
            best = k;
        }
    }
    return best;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw argument_error("config: " + key + " expects a number, got '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw argument_error("config: " + key + " expects an integer, got '" + v + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

std::pair<double, double> to_range(const std::string& key, const std::string& v) {
    const auto parts = split(v, ',');
    if (parts.size() != 2)
        throw argument_error("config: " + key + " expects 'lo,hi', got '" + v + "'");
    const double lo = to_double(key, parts[0]), hi = to_double(key, parts[1]);
    if (lo > hi) throw argument_error("config: " + key + " range is inverted");
    return {lo, hi};
}

} // namespace

FieldProfile ScenarioConfig::make_profile() const {
    std::vector<Bump> all = bumps;
    if (bump_count > 0) {
        for (int i = 0; i < bump_count; ++i) {
            // streams: 10 radius/angle, 11 amplitude, 12 width
            const double r =
                bump_placement_radius * std::sqrt(rng::uniform01(bump_seed, 10, 2 * i));
            const double th = 2.0 * std::numbers::pi * rng::uniform01(bump_seed, 10, 2 * i + 1);
            Bump b;
            b.x = r * std::cos(th);
            b.y = r * std::sin(th);
            b.amplitude = rng::uniform(bump_seed, 11, i, bump_amp_lo, bump_amp_hi);
            b.width = rng::uniform(bump_seed, 12, i, bump_width_lo, bump_width_hi);
            all.push_back(b);
        }
    }
    if (profile_kind == "uniform" && all.empty()) return FieldProfile::uniform(B0);
    if (profile_kind == "antidot") return FieldProfile::antidot(B0, R);
    return FieldProfile::with_bumps(B0, std::move(all), bump_seed);
}

double ScenarioConfig::resolved_grid_L() const {
    if (grid_L > 0.0) return grid_L;
    const double lb = B0 != 0.0 ? 1.0 / std::sqrt(std::abs(B0)) : 1.0;
    return 12.0 * lb;
}

double ScenarioConfig::resolved_lattice_constant() const {
    if (lattice_constant > 0.0) return lattice_constant;
    double bmax = std::abs(B0);
    for (const Bump& b : bumps) bmax = std::max(bmax, std::abs(B0) + std::abs(b.amplitude));
    if (bump_count > 0)
        bmax = std::max(bmax, std::abs(B0) + std::max(std::abs(bump_amp_lo), std::abs(bump_amp_hi)));
    if (bmax == 0.0) return 1.0;
    // |phi_p| = bmax * (3 sqrt3/2) a^2 <= cap * 2 pi
    return std::sqrt(flux_cap * 2.0 * std::numbers::pi /
                     (bmax * 1.5 * std::numbers::sqrt3));
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::map<std::string, std::string> kv;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw argument_error("config line " + std::to_string(lineno) +
                                     ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw argument_error("config line " + std::to_string(lineno) +
                                 ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!section.empty() && key.find('.') == std::string::npos)
            key = section + "." + key;
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw argument_error("config: unknown key '" + key + "' (nearest: '" +
                                 nearest_key(key) + "')");
        kv[key] = val;
    }

    if (!kv.count("format"))
        throw argument_error("config: missing required 'format = 1' header");
    if (to_int("format", kv["format"]) != 1)
        throw argument_error("config: unsupported format (this artifact reads format 1)");
    kv.erase("format");

    auto take = [&](const char* key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) return "";
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto defaulted = [&](const std::string& msg) { cfg.applied_defaults.push_back(msg); };

    if (auto v = take("profile.kind"); !v.empty()) {
        if (v != "uniform" && v != "antidot" && v != "uniform-plus-bumps")
            throw argument_error(
                "config: profile.kind must be uniform | antidot | uniform-plus-bumps");
        cfg.profile_kind = v;
    } else
        defaulted("profile.kind = uniform");
    if (auto v = take("profile.B0"); !v.empty())
        cfg.B0 = to_double("profile.B0", v);
    else
        defaulted("profile.B0 = 1");
    if (auto v = take("profile.R"); !v.empty()) {
        cfg.R = to_double("profile.R", v);
        if (cfg.R < 0.0) throw argument_error("config: profile.R must be >= 0");
    } else if (cfg.profile_kind == "antidot")
        throw argument_error("config: missing profile.R (required for antidot)");
    if (auto v = take("profile.bumps"); !v.empty()) {
        for (const auto& item : split(v, ';')) {
            if (item.empty()) continue;
            const auto f = split(item, ',');
            if (f.size() != 4)
                throw argument_error("config: profile.bumps entries are 'x,y,amplitude,width'");
            Bump b{to_double("bumps.x", f[0]), to_double("bumps.y", f[1]),
                   to_double("bumps.amplitude", f[2]), to_double("bumps.width", f[3])};
            if (!(b.width > 0.0)) throw argument_error("config: bump width must be > 0");
            cfg.bumps.push_back(b);
        }
    }
    if (auto v = take("profile.bump_count"); !v.empty()) {
        cfg.bump_count = static_cast<int>(to_int("profile.bump_count", v));
        if (cfg.bump_count < 0) throw argument_error("config: profile.bump_count must be >= 0");
    }
    if (auto v = take("profile.bump_seed"); !v.empty())
        cfg.bump_seed = static_cast<std::uint64_t>(to_int("profile.bump_seed", v));
    if (auto v = take("profile.bump_amplitude"); !v.empty())
        std::tie(cfg.bump_amp_lo, cfg.bump_amp_hi) = to_range("profile.bump_amplitude", v);
    if (auto v = take("profile.bump_width"); !v.empty()) {
        std::tie(cfg.bump_width_lo, cfg.bump_width_hi) = to_range("profile.bump_width", v);
        if (!(cfg.bump_width_lo > 0.0))
            throw argument_error("config: profile.bump_width must be > 0");
    }
    if (auto v = take("profile.bump_placement_radius"); !v.empty())
        cfg.bump_placement_radius = to_double("profile.bump_placement_radius", v);

    if (auto v = take("grid.L"); !v.empty()) {
        cfg.grid_L = to_double("grid.L", v);
        if (!(cfg.grid_L > 0.0)) throw argument_error("config: grid.L must be positive");
    } else
        defaulted("grid.L = 12 magnetic lengths");
    if (auto v = take("grid.N"); !v.empty()) {
        cfg.grid_N = static_cast<int>(to_int("grid.N", v));
        if (cfg.grid_N < 16) throw argument_error("config: grid.N below minimum 16");
    } else
        defaulted("grid.N = 128");

    if (auto v = take("lattice.shape"); !v.empty()) {
        if (v != "disk" && v != "rectangle")
            throw argument_error("config: lattice.shape must be disk | rectangle");
        cfg.lattice_shape = v;
    } else
        defaulted("lattice.shape = disk");
    if (auto v = take("lattice.radius"); !v.empty()) {
        cfg.lattice_radius = to_double("lattice.radius", v);
        if (!(cfg.lattice_radius > 0.0))
            throw argument_error("config: lattice.radius must be positive");
    } else if (cfg.lattice_shape == "disk")
        defaulted("lattice.radius = 20");
    if (auto v = take("lattice.n1"); !v.empty())
        cfg.lattice_n1 = static_cast<int>(to_int("lattice.n1", v));
    if (auto v = take("lattice.n2"); !v.empty())
        cfg.lattice_n2 = static_cast<int>(to_int("lattice.n2", v));
    if (auto v = take("lattice.constant"); !v.empty()) {
        cfg.lattice_constant = to_double("lattice.constant", v);
        if (!(cfg.lattice_constant > 0.0))
            throw argument_error("config: lattice.constant must be positive");
    } else
        defaulted("lattice.constant derived from lattice.flux_cap");
    if (auto v = take("lattice.flux_cap"); !v.empty()) {
        cfg.flux_cap = to_double("lattice.flux_cap", v);
        if (!(cfg.flux_cap > 0.0 && cfg.flux_cap <= 0.5))
            throw argument_error("config: lattice.flux_cap must be in (0, 0.5]");
    }

    if (auto v = take("run.modes"); !v.empty()) {
        cfg.mode_js.clear();
        for (const auto& item : split(v, ','))
            if (!item.empty()) {
                const int j = static_cast<int>(to_int("run.modes", item));
                if (j < 0) throw argument_error("config: run.modes entries must be >= 0");
                cfg.mode_js.push_back(j);
            }
    } else
        defaulted("run.modes = 0,1,2,3");
    if (auto v = take("run.k"); !v.empty()) {
        cfg.eig_k = static_cast<int>(to_int("run.k", v));
        if (cfg.eig_k < 1) throw argument_error("config: run.k must be >= 1");
    } else
        defaulted("run.k = 40");
    if (auto v = take("run.window"); !v.empty()) {
        cfg.window = to_double("run.window", v);
        if (!(cfg.window > 0.0)) throw argument_error("config: run.window must be positive");
    } else
        defaulted("run.window = 0.05 x lattice Landau gap (finite-size scale for B0 = 0)");
    if (auto v = take("run.sweep_count"); !v.empty()) {
        cfg.sweep_count = static_cast<int>(to_int("run.sweep_count", v));
        if (cfg.sweep_count < 0) throw argument_error("config: run.sweep_count must be >= 0");
    }
    if (auto v = take("run.seed"); !v.empty())
        cfg.seed = static_cast<std::uint64_t>(to_int("run.seed", v));
    else
        defaulted("run.seed = 1");
    if (auto v = take("run.sweep_amplitude"); !v.empty())
        cfg.sweep_amplitude = to_double("run.sweep_amplitude", v);
    if (auto v = take("run.sweep_width"); !v.empty()) {
        cfg.sweep_width = to_double("run.sweep_width", v);
        if (!(cfg.sweep_width > 0.0))
            throw argument_error("config: run.sweep_width must be positive");
    }
    if (auto v = take("run.dense"); !v.empty()) {
        if (v == "force")
            cfg.force_dense = true;
        else if (v != "auto")
            throw argument_error("config: run.dense must be auto | force");
    }
    if (auto v = take("output.dir"); !v.empty()) cfg.out_dir = v;

    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace zm
