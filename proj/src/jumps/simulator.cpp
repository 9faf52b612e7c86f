#include "tadecay/simulator.hpp"

#include "tadecay/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

namespace tadecay {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxBins = 2e8;

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

struct Interval {
    double begin; // no fluorescence from here ...
    double end;   // ... to here
};

class Stream {
public:
    explicit Stream(std::uint64_t seed) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
        eng_.seed(seq);
    }

    double exponential(double rate) {
        if (rate <= 0.0) return kInf;
        return std::exponential_distribution<double>(rate)(eng_);
    }

    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        return static_cast<std::uint64_t>(std::poisson_distribution<long long>(mean)(eng_));
    }

private:
    std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

void check_simulation(const LevelScheme& scheme, const TrajectoryConfig& config) {
    scheme.validate();
    config.validate();
    if (!(scheme.bright_rate > 0.0))
        throw InvalidConfig("bright_rate is 0: the trace would carry no fluorescence to detect");
    if (config.target_dark_periods && !(scheme.shelve_rate > 0.0))
        throw InvalidConfig("target_dark_periods needs shelve_rate > 0");
    if (config.duration_s && *config.duration_s / config.bin_width_s > kMaxBins)
        throw InvalidConfig("duration_s / bin_width_s exceeds the supported trace length");
}

Trajectory simulate(const LevelScheme& scheme, const TrajectoryConfig& config, std::uint64_t seed) {
    Stream rng(seed);
    const double bw = config.bin_width_s;
    std::vector<Interval> dark;
    std::vector<JumpRecord> jumps;

    // Alternating renewal: bright dwell, optional intermediate delay, dark
    // dwell in m, repeat. The ion starts bright.
    double t = 0.0;
    double end = kInf;
    if (config.duration_s) end = *config.duration_s;
    for (;;) {
        const double lamp = t + rng.exponential(scheme.shelve_rate);
        if (lamp >= end) break;
        const double shelve =
            scheme.intermediate_lifetime > 0.0 ? lamp + rng.exponential(1.0 / scheme.intermediate_lifetime) : lamp;
        const double unshelve = shelve + rng.exponential(scheme.unshelve_rate);
        dark.push_back({lamp, unshelve});
        jumps.push_back({shelve, unshelve, false});
        t = unshelve;
        if (config.target_dark_periods && jumps.size() == *config.target_dark_periods) {
            // Two bins of observation after the last decay so its end is seen.
            end = (std::ceil(unshelve / bw) + 2.0) * bw;
            if (end / bw > kMaxBins) throw InvalidConfig("trace too long for the supported length");
        }
        if (t >= end) break;
    }

    std::size_t nbins = static_cast<std::size_t>(std::ceil(end / bw));
    if (nbins == 0) nbins = 1;
    const double t_end = static_cast<double>(nbins) * bw;
    for (JumpRecord& j : jumps) j.censored = j.unshelve_time_s > t_end;

    // Dark time per bin.
    std::vector<double> dark_time(nbins, 0.0);
    for (const Interval& iv : dark) {
        const double b = std::min(iv.end, t_end);
        if (!(b > iv.begin)) continue;
        auto first = static_cast<std::size_t>(std::floor(iv.begin / bw));
        auto last = std::min(nbins - 1, static_cast<std::size_t>(std::floor(b / bw)));
        for (std::size_t k = first; k <= last; ++k) {
            const double lo = std::max(iv.begin, static_cast<double>(k) * bw);
            const double hi = std::min(b, static_cast<double>(k + 1) * bw);
            if (hi > lo) dark_time[k] += hi - lo;
        }
    }

    Trajectory out;
    out.trace.bin_width_s = bw;
    out.trace.counts.resize(nbins);
    const double rate = scheme.bright_rate * config.detection_efficiency;
    for (std::size_t k = 0; k < nbins; ++k) {
        double bright = bw - dark_time[k];
        if (bright < 1e-12 * bw) bright = 0.0;
        out.trace.counts[k] = rng.poisson(rate * bright);
    }
    out.jumps = std::move(jumps);
    if (bw > 0.1 / scheme.unshelve_rate)
        out.warnings.push_back("bin_width_s is not small against the mean dark dwell 1/unshelve_rate");
    return out;
}

} // namespace

void LevelScheme::validate() const {
    if (!finite_nonneg(bright_rate)) throw InvalidConfig("bright_rate must be finite and >= 0");
    if (!finite_nonneg(shelve_rate)) throw InvalidConfig("shelve_rate must be finite and >= 0");
    if (!(std::isfinite(unshelve_rate) && unshelve_rate > 0.0)) throw InvalidConfig("unshelve_rate must be > 0");
    if (!finite_nonneg(intermediate_lifetime)) throw InvalidConfig("intermediate_lifetime must be >= 0");
}

void TrajectoryConfig::validate() const {
    if (!(std::isfinite(bin_width_s) && bin_width_s > 0.0)) throw InvalidConfig("bin_width_s must be > 0");
    if (duration_s.has_value() == target_dark_periods.has_value())
        throw InvalidConfig("exactly one stop criterion (duration_s or target_dark_periods) is required");
    if (duration_s && !(std::isfinite(*duration_s) && *duration_s > 0.0))
        throw InvalidConfig("duration_s must be > 0");
    if (target_dark_periods && *target_dark_periods < 1) throw InvalidConfig("target_dark_periods must be >= 1");
    if (!(detection_efficiency > 0.0 && detection_efficiency <= 1.0))
        throw InvalidConfig("detection_efficiency must be in (0, 1]");
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

Trajectory simulate_trajectory(const LevelScheme& scheme, const TrajectoryConfig& config) {
    check_simulation(scheme, config);
    return simulate(scheme, config, trajectory_seed(config.seed, 0));
}

std::vector<Trajectory> run_ensemble(const LevelScheme& scheme, const TrajectoryConfig& config,
                                     std::size_t n_trajectories, unsigned threads) {
    if (n_trajectories < 1) throw InvalidConfig("n_trajectories must be >= 1");
    check_simulation(scheme, config);
    std::vector<Trajectory> out(n_trajectories);
    std::vector<std::exception_ptr> errors(n_trajectories);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_trajectories));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n_trajectories; i = next++) {
            try {
                out[i] = simulate(scheme, config, trajectory_seed(config.seed, i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace tadecay
