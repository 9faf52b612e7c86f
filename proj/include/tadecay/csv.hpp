#pragma once

#include "tadecay/analysis.hpp"
#include "tadecay/simulator.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tadecay {

// Shortest decimal string that reads back to the same double.
std::string format_real(double x);

struct SurvivalRow {
    double t_s;
    std::size_t n_of_t;
    double ratio;
    double born;
    double binomial_sigma;
};

struct PairingRow {
    double t;
    double abs_ratio;
    double phase;
    double expected_abs;
};

std::vector<SurvivalRow> survival_rows(const SurvivalCurve& curve, double tau_s);
SurvivalCurve curve_from_rows(const std::vector<SurvivalRow>& rows);

void write_trace_csv(std::ostream& os, const FluorescenceTrace& trace);
void write_jumps_csv(std::ostream& os, const std::vector<JumpRecord>& jumps);
void write_dark_csv(std::ostream& os, const std::vector<DarkPeriod>& periods);
void write_survival_csv(std::ostream& os, const std::vector<SurvivalRow>& rows);
void write_pairing_csv(std::ostream& os, const std::vector<PairingRow>& rows);

// Readers throw ParseError with the 1-based line number. The trace format
// has no bin-width column, so the width is supplied and checked against the
// t_start_s column.
FluorescenceTrace read_trace_csv(std::istream& is, double bin_width_s);
std::vector<JumpRecord> read_jumps_csv(std::istream& is);
std::vector<DarkPeriod> read_dark_csv(std::istream& is);
std::vector<SurvivalRow> read_survival_csv(std::istream& is);
std::vector<PairingRow> read_pairing_csv(std::istream& is);

} // namespace tadecay
