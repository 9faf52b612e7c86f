#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tadecay {

// Rates of the collapsed shelving scheme: fluorescence on the g-e cycle, a
// lamp pathway into the metastable level m, and its decay back.
struct LevelScheme {
    double bright_rate = 1000.0;   // detected photons/s while unshelved
    double shelve_rate = 1.0 / 60; // transitions/s into m
    double unshelve_rate = 1.0 / 30;
    double intermediate_lifetime = 0.0; // s; 0 collapses the short-lived level

    void validate() const;
};

struct TrajectoryConfig {
    double bin_width_s = 1.0;
    std::uint64_t seed = 0;
    std::optional<double> duration_s;
    std::optional<std::size_t> target_dark_periods;
    double detection_efficiency = 1.0;

    void validate() const;
};

struct JumpRecord {
    double shelve_time_s;   // arrival in m
    double unshelve_time_s; // decay out of m
    // The dark interval reaches past the end of the trace.
    bool censored = false;
};

struct FluorescenceTrace {
    double bin_width_s = 1.0;
    std::vector<std::uint64_t> counts;
    double t_start_s = 0.0;

    double duration_s() const { return bin_width_s * static_cast<double>(counts.size()); }
};

struct Trajectory {
    FluorescenceTrace trace;
    std::vector<JumpRecord> jumps;
    std::vector<std::string> warnings;
};

// Seed of trajectory `index` derived from the master seed.
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index);

// Same as trajectory 0 of run_ensemble.
Trajectory simulate_trajectory(const LevelScheme& scheme, const TrajectoryConfig& config);

// Trajectories run in parallel on up to `threads` workers (0: hardware
// concurrency); the result is in index order and independent of scheduling.
std::vector<Trajectory> run_ensemble(const LevelScheme& scheme, const TrajectoryConfig& config,
                                     std::size_t n_trajectories, unsigned threads = 0);

} // namespace tadecay
