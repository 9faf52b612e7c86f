#pragma once

#include "tadecay/simulator.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tadecay {

struct DarkPeriod {
    double t0_s;
    double t1_s;
    double dwell_s;
};

// Median of the bins above half the global maximum.
double bright_level(const FluorescenceTrace& trace);

std::vector<DarkPeriod> detect_dark_periods(const FluorescenceTrace& trace, double threshold_frac,
                                            std::size_t min_dark_bins);

class DwellEnsemble {
public:
    explicit DwellEnsemble(std::vector<double> dwells_s);
    static DwellEnsemble from_periods(const std::vector<DarkPeriod>& periods);

    const std::vector<double>& dwells() const noexcept { return dwells_; }
    std::size_t M() const noexcept { return dwells_.size(); }

private:
    std::vector<double> dwells_;
};

// Number of dwells strictly longer than t.
std::size_t counting_function(const DwellEnsemble& ens, double t);

struct SurvivalCurve {
    std::vector<double> t_s;
    std::vector<std::size_t> n_of_t;
    std::vector<double> ratio;
    std::size_t M = 0;
};

SurvivalCurve survival_curve(const DwellEnsemble& ens, double bin_s, double t_max_s);

struct FitResult {
    double tau_s;
    double tau_stderr_s;
    double log_intercept;
    std::size_t points_used;
};

// Weighted least squares of ln N on t with weights N over the points N > 0.
FitResult fit_log_linear(std::span<const double> t, std::span<const double> n);
FitResult fit_lifetime(const SurvivalCurve& curve);

double born_survival(double tau_s, double t);

// sup |F_n - F| of the dwells against Exponential(1/tau).
double ks_statistic_exponential(std::span<const double> dwells, double tau_s);
// Asymptotic 5% critical value 1.36/sqrt(M).
double ks_critical_value(std::size_t m);

struct ComparisonRow {
    double t_s;
    double ratio;
    double born;
    double deviation;      // ratio - born
    double binomial_sigma; // sqrt(born (1 - born) / M)
};

struct ComparisonReport {
    double sup_deviation;
    std::optional<double> ks_statistic;
    double ks_critical;
    std::optional<bool> ks_pass;
    std::vector<ComparisonRow> table;
};

ComparisonReport compare_counting_to_born(const SurvivalCurve& curve, double tau_s,
                                          const DwellEnsemble* ensemble = nullptr);

struct LifetimeWidthReport {
    double tau_from_width;
    double fitted_tau;
    double pull;
    bool consistent; // |pull| < 3
};

// width_tau_err: uncertainty of hbar/gamma in time units, if known.
LifetimeWidthReport lifetime_width_report(double gamma_energy, const FitResult& fitted, double hbar,
                                          std::optional<double> width_tau_err = std::nullopt);

} // namespace tadecay
