#include "tadecay/config.hpp"

#include "tadecay/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tadecay {
namespace {

constexpr std::array<std::pair<Mode, const char*>, 7> kModes{{{Mode::Simulate, "simulate"},
                                                              {Mode::Detect, "detect"},
                                                              {Mode::Survival, "survival"},
                                                              {Mode::Fit, "fit"},
                                                              {Mode::Gamow, "gamow"},
                                                              {Mode::Hardy, "hardy"},
                                                              {Mode::Report, "report"}}};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Value {
    std::size_t line;
    std::string_view text;

    double real() const {
        double v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || p != text.data() + text.size()) throw ParseError(line, "not a number: '" + std::string(text) + "'");
        if (!std::isfinite(v)) throw RangeError("line " + std::to_string(line) + ": value must be finite");
        return v;
    }

    std::uint64_t integer() const {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec == std::errc::result_out_of_range) throw RangeError("line " + std::to_string(line) + ": integer out of range");
        if (ec != std::errc() || p != text.data() + text.size())
            throw ParseError(line, "not a non-negative integer: '" + std::string(text) + "'");
        return v;
    }

    [[noreturn]] void range(const std::string& key, const char* rule) const {
        throw RangeError("line " + std::to_string(line) + ": " + key + " " + rule);
    }
};

using Setter = std::function<void(RunConfig&, const std::string&, const Value&)>;

template <class Get>
Setter real_key(Get get, bool (*ok)(double), const char* rule) {
    return [get, ok, rule](RunConfig& c, const std::string& key, const Value& v) {
        const double x = v.real();
        if (!ok(x)) v.range(key, rule);
        get(c) = x;
    };
}

bool gt0(double x) { return x > 0.0; }
bool ge0(double x) { return x >= 0.0; }
bool any(double) { return true; }
bool frac_open(double x) { return x > 0.0 && x < 1.0; }
bool frac_half_open(double x) { return x > 0.0 && x <= 1.0; }

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["mode"] = [](RunConfig& c, const std::string&, const Value& v) {
            c.mode = parse_mode(v.text);
            if (!c.mode) throw ParseError(v.line, "unknown mode '" + std::string(v.text) + "'");
        };
        t["seed"] = [](RunConfig& c, const std::string&, const Value& v) { c.seed = v.integer(); };

        t["scheme.bright_rate"] = real_key([](RunConfig& c) -> double& { return c.scheme.bright_rate; }, ge0, "must be >= 0");
        t["scheme.shelve_rate"] = real_key([](RunConfig& c) -> double& { return c.scheme.shelve_rate; }, ge0, "must be >= 0");
        t["scheme.unshelve_rate"] =
            real_key([](RunConfig& c) -> double& { return c.scheme.unshelve_rate; }, gt0, "must be > 0");
        t["scheme.intermediate_lifetime"] =
            real_key([](RunConfig& c) -> double& { return c.scheme.intermediate_lifetime; }, ge0, "must be >= 0");

        t["trajectory.bin_width_s"] =
            real_key([](RunConfig& c) -> double& { return c.trajectory.bin_width_s; }, gt0, "must be > 0");
        t["trajectory.duration_s"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const double x = v.real();
            if (!(x > 0.0)) v.range(key, "must be > 0");
            c.trajectory.duration_s = x;
        };
        t["trajectory.target_dark_periods"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const std::uint64_t m = v.integer();
            if (m < 1) v.range(key, "must be >= 1");
            c.trajectory.target_dark_periods = static_cast<std::size_t>(m);
        };
        t["trajectory.detection_efficiency"] = real_key(
            [](RunConfig& c) -> double& { return c.trajectory.detection_efficiency; }, frac_half_open, "must be in (0, 1]");

        t["detect.threshold_frac"] =
            real_key([](RunConfig& c) -> double& { return c.detect.threshold_frac; }, frac_open, "must be in (0, 1)");
        t["detect.min_dark_bins"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const std::uint64_t m = v.integer();
            if (m < 1) v.range(key, "must be >= 1");
            c.detect.min_dark_bins = static_cast<std::size_t>(m);
        };
        t["detect.trace"] = [](RunConfig& c, const std::string&, const Value& v) { c.detect.trace_path = std::string(v.text); };

        t["survival.bin_s"] = real_key([](RunConfig& c) -> double& { return c.survival.bin_s; }, gt0, "must be > 0");
        t["survival.t_max_s"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const double x = v.real();
            if (!(x > 0.0)) v.range(key, "must be > 0");
            c.survival.t_max_s = x;
        };
        t["survival.tau_s"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const double x = v.real();
            if (!(x > 0.0)) v.range(key, "must be > 0");
            c.survival.tau_s = x;
        };
        t["survival.dark"] = [](RunConfig& c, const std::string&, const Value& v) { c.survival.dark_path = std::string(v.text); };
        t["fit.survival"] = [](RunConfig& c, const std::string&, const Value& v) { c.fit.survival_path = std::string(v.text); };

        t["width.gamma"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const double x = v.real();
            if (!(x > 0.0)) v.range(key, "must be > 0");
            c.width.gamma = x;
        };
        t["width.hbar"] = real_key([](RunConfig& c) -> double& { return c.width.hbar; }, gt0, "must be > 0");
        t["width.tau_err_s"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const double x = v.real();
            if (!(x >= 0.0)) v.range(key, "must be >= 0");
            c.width.tau_err_s = x;
        };

        t["pole.e_r"] = real_key([](RunConfig& c) -> double& { return c.gamow.e_r; }, any, "");
        t["pole.gamma"] = real_key([](RunConfig& c) -> double& { return c.gamow.gamma; }, gt0, "must be > 0");
        t["units.hbar"] = real_key([](RunConfig& c) -> double& { return c.gamow.hbar; }, gt0, "must be > 0");
        t["gamow.test_pole_re"] = real_key([](RunConfig& c) -> double& { return c.gamow.test_pole_re; }, any, "");
        t["gamow.test_pole_im"] = real_key([](RunConfig& c) -> double& { return c.gamow.test_pole_im; }, gt0,
                                           "must be > 0 (upper half-plane test function)");
        t["gamow.test_order"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const std::uint64_t m = v.integer();
            if (m < 2 || m > 16) v.range(key, "must be in [2, 16]");
            c.gamow.test_order = static_cast<int>(m);
        };
        t["gamow.t_min"] = real_key([](RunConfig& c) -> double& { return c.gamow.t_min; }, any, "");
        t["gamow.t_max"] = real_key([](RunConfig& c) -> double& { return c.gamow.t_max; }, any, "");
        t["gamow.t_points"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const std::uint64_t m = v.integer();
            if (m < 1 || m > 100000) v.range(key, "must be in [1, 100000]");
            c.gamow.t_points = static_cast<std::size_t>(m);
        };
        t["gamow.abs_tol"] = real_key([](RunConfig& c) -> double& { return c.gamow.abs_tol; }, gt0, "must be > 0");

        t["grid.lo"] = [](RunConfig& c, const std::string&, const Value& v) { c.hardy.grid_lo = v.real(); };
        t["grid.hi"] = [](RunConfig& c, const std::string&, const Value& v) { c.hardy.grid_hi = v.real(); };
        t["grid.n"] = [](RunConfig& c, const std::string& key, const Value& v) {
            const std::uint64_t m = v.integer();
            if (m < 16 || m > (1u << 24)) v.range(key, "must be in [16, 2^24]");
            c.hardy.grid_n = static_cast<std::size_t>(m);
        };
        t["hardy.function"] = [](RunConfig& c, const std::string& key, const Value& v) {
            if (v.text != "bw" && v.text != "bw_conjugate") v.range(key, "must be bw or bw_conjugate");
            c.hardy.function = std::string(v.text);
        };
        t["hardy.tol"] = real_key([](RunConfig& c) -> double& { return c.hardy.tol; }, frac_open, "must be in (0, 1)");
        t["hardy.evolve_t"] = [](RunConfig& c, const std::string&, const Value& v) { c.hardy.evolve_t = v.real(); };
        return t;
    }();
    return table;
}

} // namespace

std::optional<Mode> parse_mode(std::string_view name) {
    for (const auto& [m, n] : kModes)
        if (name == n) return m;
    return std::nullopt;
}

const char* mode_name(Mode m) {
    for (const auto& [k, n] : kModes)
        if (k == m) return n;
    return "?";
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "missing key");
        if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
        const auto it = setters().find(key);
        if (it == setters().end()) throw UnknownKey(line_no, key);
        if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");
        it->second(cfg, key, Value{line_no, value});
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void RunConfig::validate_for(Mode m) const {
    if (mode && *mode != m)
        throw InvalidConfig(std::string("config mode is '") + mode_name(*mode) + "' but '" + mode_name(m) + "' was requested");
    const bool simulates = m == Mode::Simulate || m == Mode::Report;
    if (simulates) {
        if (!seed) throw InvalidConfig("'seed' is required for " + std::string(mode_name(m)));
        scheme.validate();
        trajectory.validate();
    }
    if (m == Mode::Gamow) {
        if (!(gamow.t_max >= gamow.t_min)) throw InvalidConfig("gamow.t_max must be >= gamow.t_min");
        if (gamow.t_points < 2 && gamow.t_max != gamow.t_min)
            throw InvalidConfig("gamow.t_points must be >= 2 for a time range");
    }
    if (m == Mode::Hardy) {
        const double lo = hardy.grid_lo.value_or(gamow.e_r - 200 * gamow.gamma);
        const double hi = hardy.grid_hi.value_or(gamow.e_r + 200 * gamow.gamma);
        if (!(hi > lo)) throw InvalidConfig("grid.hi must be > grid.lo");
    }
    if (survival.t_max_s && *survival.t_max_s < survival.bin_s)
        throw InvalidConfig("survival.t_max_s must be >= survival.bin_s");
}

} // namespace tadecay
