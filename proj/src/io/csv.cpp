#include "tadecay/csv.hpp"

#include "tadecay/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

namespace tadecay {
namespace {

constexpr const char* kTraceHeader = "bin_index,t_start_s,counts";
constexpr const char* kJumpsHeader = "index,shelve_time_s,unshelve_time_s,censored";
constexpr const char* kDarkHeader = "index,t0_s,t1_s,dwell_s";
constexpr const char* kSurvivalHeader = "t_s,n_of_t,ratio,born,binomial_sigma";
constexpr const char* kPairingHeader = "t,abs_ratio,phase,expected_abs";

class Reader {
public:
    Reader(std::istream& is, const char* header, std::size_t columns) : is_(is), columns_(columns) {
        if (!next_line() || line_ != header)
            throw ParseError(line_no_, std::string("expected header '") + header + "'");
    }

    // Splits the next data row; false at end of input.
    bool row() {
        if (!next_line()) return false;
        fields_.clear();
        std::string_view s(line_);
        for (;;) {
            const auto comma = s.find(',');
            fields_.push_back(s.substr(0, comma));
            if (comma == std::string_view::npos) break;
            s.remove_prefix(comma + 1);
        }
        if (fields_.size() != columns_)
            throw ParseError(line_no_, "expected " + std::to_string(columns_) + " fields, found " +
                                           std::to_string(fields_.size()));
        return true;
    }

    double real(std::size_t i) const {
        const auto f = fields_[i];
        double v = 0;
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || p != f.data() + f.size() || f.empty())
            throw ParseError(line_no_, "field " + std::to_string(i + 1) + " is not a number");
        return v;
    }

    std::uint64_t integer(std::size_t i) const {
        const auto f = fields_[i];
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || p != f.data() + f.size() || f.empty())
            throw ParseError(line_no_, "field " + std::to_string(i + 1) + " is not a non-negative integer");
        return v;
    }

    void expect_index(std::size_t i, std::uint64_t want) const {
        if (integer(i) != want) throw ParseError(line_no_, "index out of sequence, expected " + std::to_string(want));
    }

    std::size_t line() const noexcept { return line_no_; }

private:
    bool next_line() {
        if (!std::getline(is_, line_)) return false;
        ++line_no_;
        if (!line_.empty() && line_.back() == '\r') line_.pop_back();
        return true;
    }

    std::istream& is_;
    std::size_t columns_;
    std::string line_;
    std::size_t line_no_ = 0;
    std::vector<std::string_view> fields_;
};

} // namespace

std::string format_real(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw NumericalError("cannot format number");
    return std::string(buf, p);
}

std::vector<SurvivalRow> survival_rows(const SurvivalCurve& curve, double tau_s) {
    std::vector<SurvivalRow> rows;
    const double m = static_cast<double>(curve.M);
    for (std::size_t i = 0; i < curve.t_s.size(); ++i) {
        const double b = born_survival(tau_s, curve.t_s[i]);
        rows.push_back({curve.t_s[i], curve.n_of_t[i], curve.ratio[i], b, std::sqrt(b * (1.0 - b) / m)});
    }
    return rows;
}

SurvivalCurve curve_from_rows(const std::vector<SurvivalRow>& rows) {
    if (rows.empty()) throw ValidationError("survival table is empty");
    SurvivalCurve c;
    for (const SurvivalRow& r : rows) {
        c.t_s.push_back(r.t_s);
        c.n_of_t.push_back(r.n_of_t);
        c.ratio.push_back(r.ratio);
        if (c.M == 0 && r.ratio > 0.0) c.M = static_cast<std::size_t>(std::llround(static_cast<double>(r.n_of_t) / r.ratio));
    }
    if (c.M == 0) throw ValidationError("survival table has no point with N(t) > 0");
    return c;
}

void write_trace_csv(std::ostream& os, const FluorescenceTrace& trace) {
    os << kTraceHeader << '\n';
    for (std::size_t k = 0; k < trace.counts.size(); ++k)
        os << k << ',' << format_real(trace.t_start_s + static_cast<double>(k) * trace.bin_width_s) << ','
           << trace.counts[k] << '\n';
}

void write_jumps_csv(std::ostream& os, const std::vector<JumpRecord>& jumps) {
    os << kJumpsHeader << '\n';
    for (std::size_t i = 0; i < jumps.size(); ++i)
        os << i << ',' << format_real(jumps[i].shelve_time_s) << ',' << format_real(jumps[i].unshelve_time_s) << ','
           << (jumps[i].censored ? 1 : 0) << '\n';
}

void write_dark_csv(std::ostream& os, const std::vector<DarkPeriod>& periods) {
    os << kDarkHeader << '\n';
    for (std::size_t i = 0; i < periods.size(); ++i)
        os << i << ',' << format_real(periods[i].t0_s) << ',' << format_real(periods[i].t1_s) << ','
           << format_real(periods[i].dwell_s) << '\n';
}

void write_survival_csv(std::ostream& os, const std::vector<SurvivalRow>& rows) {
    os << kSurvivalHeader << '\n';
    for (const SurvivalRow& r : rows)
        os << format_real(r.t_s) << ',' << r.n_of_t << ',' << format_real(r.ratio) << ',' << format_real(r.born) << ','
           << format_real(r.binomial_sigma) << '\n';
}

void write_pairing_csv(std::ostream& os, const std::vector<PairingRow>& rows) {
    os << kPairingHeader << '\n';
    for (const PairingRow& r : rows)
        os << format_real(r.t) << ',' << format_real(r.abs_ratio) << ',' << format_real(r.phase) << ','
           << format_real(r.expected_abs) << '\n';
}

FluorescenceTrace read_trace_csv(std::istream& is, double bin_width_s) {
    if (!(bin_width_s > 0.0)) throw ValidationError("bin width must be > 0");
    Reader r(is, kTraceHeader, 3);
    FluorescenceTrace tr;
    tr.bin_width_s = bin_width_s;
    while (r.row()) {
        const std::size_t k = tr.counts.size();
        r.expect_index(0, k);
        const double t = r.real(1);
        if (k == 0) tr.t_start_s = t;
        const double want = tr.t_start_s + static_cast<double>(k) * bin_width_s;
        if (std::abs(t - want) > 1e-9 * std::max(1.0, std::abs(want)))
            throw ParseError(r.line(), "t_start_s does not match the configured bin width");
        tr.counts.push_back(r.integer(2));
    }
    if (tr.counts.empty()) throw ParseError(r.line(), "trace has no bins");
    return tr;
}

std::vector<JumpRecord> read_jumps_csv(std::istream& is) {
    Reader r(is, kJumpsHeader, 4);
    std::vector<JumpRecord> out;
    while (r.row()) {
        r.expect_index(0, out.size());
        const std::uint64_t c = r.integer(3);
        if (c > 1) throw ParseError(r.line(), "censored must be 0 or 1");
        out.push_back({r.real(1), r.real(2), c == 1});
    }
    return out;
}

std::vector<DarkPeriod> read_dark_csv(std::istream& is) {
    Reader r(is, kDarkHeader, 4);
    std::vector<DarkPeriod> out;
    while (r.row()) {
        r.expect_index(0, out.size());
        const DarkPeriod d{r.real(1), r.real(2), r.real(3)};
        if (!(d.t1_s > d.t0_s) || !(d.dwell_s > 0.0)) throw ParseError(r.line(), "dark period must have t1 > t0");
        out.push_back(d);
    }
    return out;
}

std::vector<SurvivalRow> read_survival_csv(std::istream& is) {
    Reader r(is, kSurvivalHeader, 5);
    std::vector<SurvivalRow> out;
    while (r.row()) out.push_back({r.real(0), static_cast<std::size_t>(r.integer(1)), r.real(2), r.real(3), r.real(4)});
    return out;
}

std::vector<PairingRow> read_pairing_csv(std::istream& is) {
    Reader r(is, kPairingHeader, 4);
    std::vector<PairingRow> out;
    while (r.row()) out.push_back({r.real(0), r.real(1), r.real(2), r.real(3)});
    return out;
}

} // namespace tadecay
