#include "tadecay/analysis.hpp"

#include "tadecay/errors.hpp"
#include "tadecay/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tadecay {

double bright_level(const FluorescenceTrace& trace) {
    if (trace.counts.empty()) throw ValidationError("trace is empty");
    const std::uint64_t peak = *std::max_element(trace.counts.begin(), trace.counts.end());
    if (peak == 0) throw NoBrightLevel("all bins are zero; the bright level cannot be calibrated");
    std::vector<double> high;
    for (std::uint64_t c : trace.counts)
        if (2.0 * static_cast<double>(c) > static_cast<double>(peak)) high.push_back(static_cast<double>(c));
    std::sort(high.begin(), high.end());
    const std::size_t n = high.size();
    const double med = n % 2 ? high[n / 2] : 0.5 * (high[n / 2 - 1] + high[n / 2]);
    if (!(med > 0.0)) throw NoBrightLevel("bright level estimate is zero");
    return med;
}

std::vector<DarkPeriod> detect_dark_periods(const FluorescenceTrace& trace, double threshold_frac,
                                            std::size_t min_dark_bins) {
    if (!(threshold_frac > 0.0 && threshold_frac < 1.0)) throw ValidationError("threshold_frac must be in (0, 1)");
    if (min_dark_bins < 1) throw ValidationError("min_dark_bins must be >= 1");
    if (!(trace.bin_width_s > 0.0)) throw ValidationError("bin width must be > 0");
    const double cut = threshold_frac * bright_level(trace);
    const auto& c = trace.counts;
    const std::size_t n = c.size();
    std::vector<DarkPeriod> out;
    std::size_t i = 0;
    while (i < n) {
        if (!(static_cast<double>(c[i]) < cut)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && static_cast<double>(c[j]) < cut) ++j;
        // Runs touching either end are censored.
        if (i > 0 && j < n && j - i >= min_dark_bins) {
            const double t0 = trace.t_start_s + static_cast<double>(i) * trace.bin_width_s;
            const double t1 = trace.t_start_s + static_cast<double>(j) * trace.bin_width_s;
            out.push_back({t0, t1, t1 - t0});
        }
        i = j;
    }
    return out;
}

DwellEnsemble::DwellEnsemble(std::vector<double> dwells_s) : dwells_(std::move(dwells_s)) {
    if (dwells_.empty()) throw ValidationError("dwell ensemble must not be empty");
    for (double d : dwells_)
        if (!(d > 0.0) || !std::isfinite(d)) throw ValidationError("dwell times must be positive");
}

DwellEnsemble DwellEnsemble::from_periods(const std::vector<DarkPeriod>& periods) {
    std::vector<double> d;
    d.reserve(periods.size());
    for (const DarkPeriod& p : periods) d.push_back(p.dwell_s);
    return DwellEnsemble(std::move(d));
}

std::size_t counting_function(const DwellEnsemble& ens, double t) {
    if (std::isnan(t) || t < 0.0) throw NegativeDuration("counting_function needs t >= 0");
    return kernels::count_greater(ens.dwells().data(), ens.M(), t);
}

SurvivalCurve survival_curve(const DwellEnsemble& ens, double bin_s, double t_max_s) {
    if (!(bin_s > 0.0) || !std::isfinite(bin_s)) throw ValidationError("bin_s must be > 0");
    if (!(t_max_s >= bin_s) || !std::isfinite(t_max_s)) throw ValidationError("t_max_s must be >= bin_s");
    SurvivalCurve sc;
    sc.M = ens.M();
    const double limit = t_max_s * (1.0 + 1e-12);
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * bin_s;
        if (t > limit) break;
        const std::size_t n = counting_function(ens, t);
        sc.t_s.push_back(t);
        sc.n_of_t.push_back(n);
        sc.ratio.push_back(static_cast<double>(n) / static_cast<double>(sc.M));
    }
    return sc;
}

FitResult fit_log_linear(std::span<const double> t, std::span<const double> n) {
    if (t.size() != n.size()) throw ValidationError("t and N differ in length");
    double sw = 0, st = 0, sy = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(n[i] > 0.0)) continue;
        sw += n[i];
        st += n[i] * t[i];
        sy += n[i] * std::log(n[i]);
        ++used;
    }
    if (used < 2) throw InsufficientPoints("need at least 2 points with N(t) > 0, have " + std::to_string(used));
    const double tm = st / sw, ym = sy / sw;
    double stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(n[i] > 0.0)) continue;
        const double dt = t[i] - tm;
        stt += n[i] * dt * dt;
        sty += n[i] * dt * (std::log(n[i]) - ym);
    }
    if (!(stt > 0.0)) throw InsufficientPoints("fit points do not span distinct times");
    const double slope = sty / stt;
    if (!(slope < 0.0)) throw NonDecayingData("fitted slope is not negative", slope);
    // Var(ln N) ~ 1/N, so the weights are inverse variances.
    const double slope_err = std::sqrt(1.0 / stt);
    FitResult r;
    r.tau_s = -1.0 / slope;
    r.tau_stderr_s = slope_err / (slope * slope);
    r.log_intercept = ym - slope * tm;
    r.points_used = used;
    return r;
}

FitResult fit_lifetime(const SurvivalCurve& curve) {
    std::vector<double> n(curve.n_of_t.begin(), curve.n_of_t.end());
    return fit_log_linear(curve.t_s, n);
}

double born_survival(double tau_s, double t) {
    if (!(tau_s > 0.0)) throw ValidationError("tau must be > 0");
    if (std::isnan(t) || t < 0.0) throw CausalityViolation("born_survival needs t >= 0");
    return std::exp(-t / tau_s);
}

double ks_statistic_exponential(std::span<const double> dwells, double tau_s) {
    if (dwells.empty()) throw ValidationError("KS statistic needs at least one sample");
    if (!(tau_s > 0.0)) throw ValidationError("tau must be > 0");
    std::vector<double> x(dwells.begin(), dwells.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = -std::expm1(-x[i] / tau_s);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(std::size_t m) {
    if (m == 0) throw ValidationError("M must be >= 1");
    return 1.36 / std::sqrt(static_cast<double>(m));
}

ComparisonReport compare_counting_to_born(const SurvivalCurve& curve, double tau_s, const DwellEnsemble* ensemble) {
    if (curve.M < 1) throw ValidationError("curve needs M >= 1");
    if (!(tau_s > 0.0)) throw ValidationError("tau must be > 0");
    ComparisonReport rep;
    rep.sup_deviation = 0.0;
    const double m = static_cast<double>(curve.M);
    for (std::size_t i = 0; i < curve.t_s.size(); ++i) {
        const double b = born_survival(tau_s, curve.t_s[i]);
        ComparisonRow row{curve.t_s[i], curve.ratio[i], b, curve.ratio[i] - b, std::sqrt(b * (1.0 - b) / m)};
        rep.sup_deviation = std::max(rep.sup_deviation, std::abs(row.deviation));
        rep.table.push_back(row);
    }
    const std::size_t ks_m = ensemble ? ensemble->M() : curve.M;
    rep.ks_critical = ks_critical_value(ks_m);
    if (ensemble) {
        rep.ks_statistic = ks_statistic_exponential(ensemble->dwells(), tau_s);
        rep.ks_pass = *rep.ks_statistic < rep.ks_critical;
    }
    return rep;
}

LifetimeWidthReport lifetime_width_report(double gamma_energy, const FitResult& fitted, double hbar,
                                          std::optional<double> width_tau_err) {
    if (!(gamma_energy > 0.0) || !(hbar > 0.0) || !(fitted.tau_s > 0.0))
        throw ValidationError("lifetime_width_report needs positive inputs");
    if (!(fitted.tau_stderr_s >= 0.0) || (width_tau_err && !(*width_tau_err >= 0.0)))
        throw ValidationError("uncertainties must be >= 0");
    LifetimeWidthReport r;
    r.tau_from_width = hbar / gamma_energy;
    r.fitted_tau = fitted.tau_s;
    const double w = width_tau_err.value_or(0.0);
    const double sigma = std::sqrt(fitted.tau_stderr_s * fitted.tau_stderr_s + w * w);
    const double diff = fitted.tau_s - r.tau_from_width;
    if (sigma > 0.0)
        r.pull = diff / sigma;
    else
        r.pull = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    r.consistent = std::abs(r.pull) < 3.0;
    return r;
}

} // namespace tadecay
