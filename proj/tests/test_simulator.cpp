#include "doctest.h"

#include "tadecay/analysis.hpp"
#include "tadecay/errors.hpp"
#include "tadecay/simulator.hpp"

#include <cmath>
#include <numeric>

using namespace tadecay;

namespace {

TrajectoryConfig m_config(std::size_t m, std::uint64_t seed) {
    TrajectoryConfig c;
    c.seed = seed;
    c.target_dark_periods = m;
    return c;
}

std::vector<double> dwells(const std::vector<JumpRecord>& jumps) {
    std::vector<double> d;
    for (const JumpRecord& j : jumps) d.push_back(j.unshelve_time_s - j.shelve_time_s);
    return d;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

bool same(const Trajectory& a, const Trajectory& b) {
    if (a.trace.counts != b.trace.counts || a.trace.bin_width_s != b.trace.bin_width_s) return false;
    if (a.jumps.size() != b.jumps.size()) return false;
    for (std::size_t i = 0; i < a.jumps.size(); ++i)
        if (a.jumps[i].shelve_time_s != b.jumps[i].shelve_time_s ||
            a.jumps[i].unshelve_time_s != b.jumps[i].unshelve_time_s || a.jumps[i].censored != b.jumps[i].censored)
            return false;
    return true;
}

} // namespace

TEST_CASE("configuration validation") {
    LevelScheme s;
    TrajectoryConfig c;
    c.seed = 1;
    CHECK_THROWS_AS(simulate_trajectory(s, c), InvalidConfig); // no stop
    c.duration_s = 10.0;
    c.target_dark_periods = 3;
    CHECK_THROWS_AS(simulate_trajectory(s, c), InvalidConfig); // both
    c.target_dark_periods.reset();
    c.bin_width_s = 0.0;
    CHECK_THROWS_AS(simulate_trajectory(s, c), InvalidConfig);
    c.bin_width_s = 1.0;
    c.detection_efficiency = 0.0;
    CHECK_THROWS_AS(simulate_trajectory(s, c), InvalidConfig);
    c.detection_efficiency = 1.0;
    s.bright_rate = 0.0;
    CHECK_THROWS_AS(simulate_trajectory(s, c), InvalidConfig);
    s.bright_rate = 1000.0;
    s.unshelve_rate = 0.0;
    CHECK_THROWS_AS(simulate_trajectory(s, c), InvalidConfig);
    s.unshelve_rate = 1.0 / 30;
    s.shelve_rate = 0.0;
    CHECK_THROWS_AS(simulate_trajectory(s, m_config(5, 1)), InvalidConfig);
    CHECK_THROWS_AS(run_ensemble(LevelScheme{}, m_config(5, 1), 0), InvalidConfig);
}

TEST_CASE("no shelving gives a pure Poisson trace") {
    LevelScheme s;
    s.shelve_rate = 0.0;
    TrajectoryConfig c;
    c.seed = 7;
    c.duration_s = 20000.0;
    const Trajectory tr = simulate_trajectory(s, c);
    CHECK(tr.jumps.empty());
    REQUIRE(tr.trace.counts.size() == 20000);
    double sum = 0;
    for (auto k : tr.trace.counts) sum += static_cast<double>(k);
    const double m = sum / 20000.0;
    CHECK(std::abs(m - 1000.0) < 5.0 * std::sqrt(1000.0 / 20000.0));
}

TEST_CASE("dark dwell mean at M = 203") {
    const Trajectory tr = simulate_trajectory(LevelScheme{}, m_config(203, 203));
    REQUIRE(tr.jumps.size() >= 203);
    std::vector<JumpRecord> first(tr.jumps.begin(), tr.jumps.begin() + 203);
    const double m = mean(dwells(first));
    CHECK(std::abs(m - 30.0) < 3.0 * 30.0 / std::sqrt(203.0));
    CHECK(tr.warnings.empty());
}

TEST_CASE("determinism and ensemble contracts") {
    const LevelScheme s;
    const TrajectoryConfig c = m_config(50, 99);
    CHECK(same(simulate_trajectory(s, c), simulate_trajectory(s, c)));
    const auto one = run_ensemble(s, c, 1);
    REQUIRE(one.size() == 1);
    CHECK(same(one[0], simulate_trajectory(s, c)));

    const auto serial = run_ensemble(s, c, 4, 1);
    const auto parallel = run_ensemble(s, c, 4, 4);
    const auto odd = run_ensemble(s, c, 4, 3);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(same(serial[i], parallel[i]));
        CHECK(same(serial[i], odd[i]));
    }
    CHECK_FALSE(same(serial[0], serial[1]));
    CHECK(trajectory_seed(99, 0) != trajectory_seed(99, 1));
    CHECK(trajectory_seed(99, 0) != trajectory_seed(100, 0));
}

TEST_CASE("pooled ensemble dwell mean and M contract") {
    const auto ens = run_ensemble(LevelScheme{}, m_config(100, 4242), 10);
    std::vector<double> pooled;
    for (const Trajectory& tr : ens) {
        CHECK(tr.jumps.size() >= 100);
        for (std::size_t i = 0; i < 100; ++i) pooled.push_back(tr.jumps[i].unshelve_time_s - tr.jumps[i].shelve_time_s);
    }
    CHECK(std::abs(mean(pooled) - 30.0) < 3.0 * 30.0 / std::sqrt(1000.0));
}

TEST_CASE("dark dwells pass KS against the exponential law") {
    const Trajectory tr = simulate_trajectory(LevelScheme{}, m_config(400, 11));
    const auto d = dwells(tr.jumps);
    // alpha = 0.01 asymptotic critical value.
    CHECK(ks_statistic_exponential(d, 30.0) < 1.63 / std::sqrt(static_cast<double>(d.size())));
}

TEST_CASE("trace structure invariants") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const Trajectory tr = simulate_trajectory(LevelScheme{}, m_config(203, seed));
        const double bw = tr.trace.bin_width_s;
        // Records are ordered and disjoint.
        for (std::size_t i = 0; i < tr.jumps.size(); ++i) {
            CHECK(tr.jumps[i].unshelve_time_s > tr.jumps[i].shelve_time_s);
            if (i) CHECK(tr.jumps[i].shelve_time_s > tr.jumps[i - 1].unshelve_time_s);
        }
        // Every bin inside a dark interval is exactly zero.
        for (const JumpRecord& j : tr.jumps) {
            const auto a = static_cast<std::size_t>(std::ceil(j.shelve_time_s / bw));
            const auto b = static_cast<std::size_t>(std::floor(j.unshelve_time_s / bw));
            for (std::size_t k = a; k < b && k < tr.trace.counts.size(); ++k) CHECK(tr.trace.counts[k] == 0);
        }
        for (const JumpRecord& j : tr.jumps)
            if (!j.censored) CHECK(tr.trace.duration_s() >= j.unshelve_time_s);
        CHECK(tr.trace.duration_s() >= tr.jumps[202].unshelve_time_s);
    }
}

TEST_CASE("bright-bin mean matches the detected rate") {
    LevelScheme s;
    TrajectoryConfig c;
    c.seed = 5;
    c.duration_s = 40000.0;
    c.detection_efficiency = 0.25;
    const Trajectory tr = simulate_trajectory(s, c);
    // Bins with no overlap with any dark interval.
    std::vector<bool> touched(tr.trace.counts.size(), false);
    for (const JumpRecord& j : tr.jumps) {
        const auto a = static_cast<std::size_t>(std::floor(j.shelve_time_s));
        const auto b = std::min(touched.size() - 1, static_cast<std::size_t>(std::floor(j.unshelve_time_s)));
        for (std::size_t k = a; k <= b; ++k) touched[k] = true;
    }
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < touched.size(); ++k)
        if (!touched[k]) {
            sum += static_cast<double>(tr.trace.counts[k]);
            ++n;
        }
    REQUIRE(n >= 10000);
    const double expect = 1000.0 * 0.25;
    CHECK(std::abs(sum / n - expect) < 5.0 * std::sqrt(expect / n));
}

TEST_CASE("intermediate level delays shelving") {
    LevelScheme s;
    s.intermediate_lifetime = 6e-9;
    const Trajectory tr = simulate_trajectory(s, m_config(20, 8));
    CHECK(tr.jumps.size() >= 20);
    LevelScheme slow;
    slow.intermediate_lifetime = 5.0;
    const Trajectory t2 = simulate_trajectory(slow, m_config(20, 8));
    CHECK(t2.jumps.size() >= 20);
}

TEST_CASE("coarse bins raise a warning") {
    TrajectoryConfig c;
    c.seed = 1;
    c.bin_width_s = 10.0;
    c.duration_s = 1000.0;
    CHECK_FALSE(simulate_trajectory(LevelScheme{}, c).warnings.empty());
}
