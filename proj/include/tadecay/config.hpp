#pragma once

#include "tadecay/simulator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tadecay {

enum class Mode { Simulate, Detect, Survival, Fit, Gamow, Hardy, Report };

std::optional<Mode> parse_mode(std::string_view name);
const char* mode_name(Mode m);

struct DetectSettings {
    double threshold_frac = 0.5;
    std::size_t min_dark_bins = 1;
    std::optional<std::string> trace_path;
};

struct SurvivalSettings {
    double bin_s = 10.0;
    // Defaults to the first grid point at or above the longest dwell.
    std::optional<double> t_max_s;
    // Reference lifetime for the Born column; defaults to 1/unshelve_rate.
    std::optional<double> tau_s;
    std::optional<std::string> dark_path;
};

struct FitSettings {
    std::optional<std::string> survival_path;
};

struct WidthSettings {
    // Width in energy units of hbar; defaults to hbar * unshelve_rate.
    std::optional<double> gamma;
    double hbar = 6.582119569e-16; // eV s
    std::optional<double> tau_err_s;
};

struct GamowSettings {
    double e_r = 10.0;
    double gamma = 1.0;
    double hbar = 1.0;
    double test_pole_re = 10.0;
    double test_pole_im = 1.0;
    int test_order = 2;
    double t_min = 0.0;
    double t_max = 10.0;
    std::size_t t_points = 21;
    double abs_tol = 1e-12;
};

struct HardySettings {
    std::optional<double> grid_lo;
    std::optional<double> grid_hi;
    std::size_t grid_n = 16384;
    std::string function = "bw"; // bw | bw_conjugate
    double tol = 1e-4;
    std::optional<double> evolve_t;
};

struct RunConfig {
    std::optional<Mode> mode;
    std::optional<std::uint64_t> seed;
    LevelScheme scheme;
    TrajectoryConfig trajectory;
    DetectSettings detect;
    SurvivalSettings survival;
    FitSettings fit;
    WidthSettings width;
    GamowSettings gamow;
    HardySettings hardy;

    // Cross-key checks for running `m`. Throws InvalidConfig.
    void validate_for(Mode m) const;
};

// Flat `key = value` lines, `#` starts a comment. Unknown and duplicate keys
// are errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

} // namespace tadecay
