#include "tadecay/commands.hpp"

#include "tadecay/errors.hpp"
#include "tadecay/hardy.hpp"
#include "tadecay/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tadecay {
namespace fs = std::filesystem;
namespace {

TrajectoryConfig trajectory_of(const RunConfig& cfg) {
    TrajectoryConfig t = cfg.trajectory;
    t.seed = *cfg.seed;
    return t;
}

double tau_ref(const RunConfig& cfg) { return cfg.survival.tau_s.value_or(1.0 / cfg.scheme.unshelve_rate); }

double t_max_for(const RunConfig& cfg, const DwellEnsemble& ens) {
    if (cfg.survival.t_max_s) return *cfg.survival.t_max_s;
    const double longest = *std::max_element(ens.dwells().begin(), ens.dwells().end());
    return std::max(1.0, std::ceil(longest / cfg.survival.bin_s)) * cfg.survival.bin_s;
}

DwellEnsemble ensemble_of(const std::vector<DarkPeriod>& periods) {
    if (periods.empty()) throw InsufficientPoints("no dark periods detected");
    return DwellEnsemble::from_periods(periods);
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

class Files {
public:
    explicit Files(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + p.string() + "'");
        out << content;
        if (!out.flush()) throw Error("write to '" + p.string() + "' failed");
        result.written.push_back(p);
    }

    CommandResult result;

private:
    fs::path dir_;
};

template <class W, class T>
std::string to_text(W writer, const T& value) {
    std::ostringstream os;
    writer(os, value);
    return os.str();
}

fs::path input_path(const std::optional<std::string>& set, const fs::path& base, const fs::path& out_dir,
                    const char* fallback) {
    fs::path p = set ? fs::path(*set) : out_dir / fallback;
    if (set && p.is_relative()) p = base / p;
    if (!fs::is_regular_file(p)) throw ValidationError("input file '" + p.string() + "' does not exist");
    return p;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + p.string() + "'");
    return in;
}

std::string fit_block(const FitResult& f) {
    std::ostringstream os;
    os << "tau_s = " << format_real(f.tau_s) << '\n'
       << "tau_stderr_s = " << format_real(f.tau_stderr_s) << '\n'
       << "log_intercept = " << format_real(f.log_intercept) << '\n'
       << "points_used = " << f.points_used << '\n';
    return os.str();
}

const char* kind_name(HardyKind k) {
    switch (k) {
    case HardyKind::Upper: return "upper";
    case HardyKind::Lower: return "lower";
    default: return "neither";
    }
}

std::string hardy_report(const RunConfig& cfg) {
    const auto& h = cfg.hardy;
    const ResonancePole pole(cfg.gamow.e_r, cfg.gamow.gamma);
    const double lo = h.grid_lo.value_or(pole.e_r() - 200 * pole.gamma());
    const double hi = h.grid_hi.value_or(pole.e_r() + 200 * pole.gamma());
    const EnergyGrid grid = EnergyGrid::uniform(lo, hi, h.grid_n);
    SampledWaveFunction f = SampledWaveFunction::sample(grid, [&](double e) { return gamow_density(e, pole); });
    if (h.function == "bw_conjugate") f = f.conjugate();
    const SupportProfile sp = fourier_support_profile(f);
    const HardyClass c = hardy_classify(f, h.tol);
    std::ostringstream os;
    os << "function = " << h.function << '\n'
       << "grid_lo = " << format_real(lo) << '\n'
       << "grid_hi = " << format_real(hi) << '\n'
       << "grid_n = " << h.grid_n << '\n'
       << "classification = " << kind_name(c.kind) << '\n'
       << "leakage = " << format_real(c.leakage) << '\n'
       << "mass_negative = " << format_real(sp.mass_negative) << '\n'
       << "mass_nonnegative = " << format_real(sp.mass_nonnegative) << '\n'
       << "total = " << format_real(sp.total) << '\n';
    if (h.evolve_t) {
        const Units u{cfg.gamow.hbar};
        const EvolvedState ev = semigroup_multiplier(f, *h.evolve_t, Guard::Probe, u);
        os << "evolve_t = " << format_real(*h.evolve_t) << '\n'
           << "evolved_lower_leakage = " << format_real(ev.lower_leakage) << '\n'
           << "evolved_classification = " << kind_name(hardy_classify(ev.f, h.tol).kind) << '\n';
    }
    return os.str();
}

} // namespace

ReportPipeline run_report_pipeline(const RunConfig& cfg) {
    cfg.validate_for(Mode::Report);
    ReportPipeline p;
    p.trajectory = simulate_trajectory(cfg.scheme, trajectory_of(cfg));
    p.periods = detect_dark_periods(p.trajectory.trace, cfg.detect.threshold_frac, cfg.detect.min_dark_bins);
    const DwellEnsemble ens = ensemble_of(p.periods);
    p.curve = survival_curve(ens, cfg.survival.bin_s, t_max_for(cfg, ens));
    p.tau_ref_s = tau_ref(cfg);
    p.fit = fit_lifetime(p.curve);
    p.comparison = compare_counting_to_born(p.curve, p.tau_ref_s, &ens);
    const double gamma = cfg.width.gamma.value_or(cfg.width.hbar * cfg.scheme.unshelve_rate);
    p.width = lifetime_width_report(gamma, p.fit, cfg.width.hbar, cfg.width.tau_err_s);
    p.ground_truth_m = static_cast<std::size_t>(
        std::count_if(p.trajectory.jumps.begin(), p.trajectory.jumps.end(), [](const JumpRecord& j) { return !j.censored; }));
    p.tau_envelope_s = 3.0 * p.tau_ref_s / std::sqrt(static_cast<double>(std::max<std::size_t>(p.ground_truth_m, 1)));
    return p;
}

std::string format_report(const RunConfig& cfg, const ReportPipeline& p) {
    std::ostringstream os;
    const auto& c = p.comparison;
    os << "[run]\n"
       << "seed = " << *cfg.seed << '\n'
       << "ground_truth_dark_periods = " << p.ground_truth_m << '\n'
       << "detected_dark_periods = " << p.periods.size() << '\n'
       << "trace_bins = " << p.trajectory.trace.counts.size() << '\n'
       << "\n[fit]\n"
       << fit_block(p.fit) << "tau_ref_s = " << format_real(p.tau_ref_s) << '\n'
       << "tau_envelope_s = " << format_real(p.tau_envelope_s) << '\n'
       << "tau_within_envelope = " << yes_no(std::abs(p.fit.tau_s - p.tau_ref_s) <= p.tau_envelope_s) << '\n'
       << "\n[compare]\n"
       << "sup_deviation = " << format_real(c.sup_deviation) << '\n'
       << "ks_statistic = " << format_real(*c.ks_statistic) << '\n'
       << "ks_critical = " << format_real(c.ks_critical) << '\n'
       << "ks_pass = " << yes_no(*c.ks_pass) << '\n'
       << "\n[lifetime_width]\n"
       << "hbar = " << format_real(cfg.width.hbar) << '\n'
       << "gamma = " << format_real(cfg.width.gamma.value_or(cfg.width.hbar * cfg.scheme.unshelve_rate)) << '\n'
       << "tau_from_width_s = " << format_real(p.width.tau_from_width) << '\n'
       << "fitted_tau_s = " << format_real(p.width.fitted_tau) << '\n'
       << "pull = " << format_real(p.width.pull) << '\n'
       << "consistent = " << yes_no(p.width.consistent) << '\n';
    for (const std::string& w : p.trajectory.warnings) os << "\n# warning: " << w << '\n';
    return os.str();
}

std::vector<PairingRow> gamow_rows(const RunConfig& cfg) {
    cfg.validate_for(Mode::Gamow);
    const auto& g = cfg.gamow;
    const ResonancePole pole(g.e_r, g.gamma);
    const RationalTestFunction test(1.0, {{cplx(g.test_pole_re, g.test_pole_im), g.test_order}});
    const Units u{g.hbar};
    quad::Options opt;
    opt.abs_tol = g.abs_tol;
    const cplx base = cauchy_pairing(test, pole, opt);
    std::vector<PairingRow> rows;
    for (std::size_t k = 0; k < g.t_points; ++k) {
        const double t = g.t_points == 1 ? g.t_min
                                         : g.t_min + (g.t_max - g.t_min) * static_cast<double>(k) /
                                                         static_cast<double>(g.t_points - 1);
        const cplx r = evolved_pairing(test, pole, t, u, opt) / base;
        rows.push_back({t, std::abs(r), std::arg(r), std::exp(-g.gamma * t / (2.0 * g.hbar))});
    }
    return rows;
}

CommandResult run_subcommand(const RunConfig& cfg, Mode mode, const fs::path& out_dir, const fs::path& base_dir) {
    cfg.validate_for(mode);
    // Inputs are checked before anything runs.
    fs::path in;
    if (mode == Mode::Detect) in = input_path(cfg.detect.trace_path, base_dir, out_dir, "trace.csv");
    if (mode == Mode::Survival) in = input_path(cfg.survival.dark_path, base_dir, out_dir, "dark.csv");
    if (mode == Mode::Fit) in = input_path(cfg.fit.survival_path, base_dir, out_dir, "survival.csv");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir)) throw Error("cannot create output directory '" + out_dir.string() + "'");

    Files files(out_dir);
    switch (mode) {
    case Mode::Simulate: {
        const Trajectory tr = simulate_trajectory(cfg.scheme, trajectory_of(cfg));
        files.write("trace.csv", to_text(write_trace_csv, tr.trace));
        files.write("jumps.csv", to_text(write_jumps_csv, tr.jumps));
        files.result.warnings = tr.warnings;
        break;
    }
    case Mode::Detect: {
        auto is = open_in(in);
        const FluorescenceTrace tr = read_trace_csv(is, cfg.trajectory.bin_width_s);
        files.write("dark.csv", to_text(write_dark_csv,
                                        detect_dark_periods(tr, cfg.detect.threshold_frac, cfg.detect.min_dark_bins)));
        break;
    }
    case Mode::Survival: {
        auto is = open_in(in);
        const DwellEnsemble ens = ensemble_of(read_dark_csv(is));
        const SurvivalCurve sc = survival_curve(ens, cfg.survival.bin_s, t_max_for(cfg, ens));
        files.write("survival.csv", to_text(write_survival_csv, survival_rows(sc, tau_ref(cfg))));
        break;
    }
    case Mode::Fit: {
        auto is = open_in(in);
        const FitResult f = fit_lifetime(curve_from_rows(read_survival_csv(is)));
        files.write("fit.txt", fit_block(f));
        break;
    }
    case Mode::Gamow: files.write("pairing.csv", to_text(write_pairing_csv, gamow_rows(cfg))); break;
    case Mode::Hardy: files.write("hardy.txt", hardy_report(cfg)); break;
    case Mode::Report: {
        const ReportPipeline p = run_report_pipeline(cfg);
        files.write("trace.csv", to_text(write_trace_csv, p.trajectory.trace));
        files.write("jumps.csv", to_text(write_jumps_csv, p.trajectory.jumps));
        files.write("dark.csv", to_text(write_dark_csv, p.periods));
        files.write("survival.csv", to_text(write_survival_csv, survival_rows(p.curve, p.tau_ref_s)));
        files.write("report.txt", format_report(cfg, p));
        files.result.warnings = p.trajectory.warnings;
        break;
    }
    }
    return files.result;
}

} // namespace tadecay
