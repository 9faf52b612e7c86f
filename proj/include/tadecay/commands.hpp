#pragma once

#include "tadecay/analysis.hpp"
#include "tadecay/config.hpp"
#include "tadecay/csv.hpp"
#include "tadecay/simulator.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tadecay {

struct ReportPipeline {
    Trajectory trajectory;
    std::vector<DarkPeriod> periods;
    SurvivalCurve curve;
    double tau_ref_s;
    FitResult fit;
    ComparisonReport comparison;
    LifetimeWidthReport width;
    // Uncensored ground-truth records.
    std::size_t ground_truth_m;
    // 3 tau_ref / sqrt(ground_truth_m)
    double tau_envelope_s;
};

// simulate -> detect -> survival -> fit -> compare, without file output.
ReportPipeline run_report_pipeline(const RunConfig& cfg);
std::string format_report(const RunConfig& cfg, const ReportPipeline& p);

std::vector<PairingRow> gamow_rows(const RunConfig& cfg);

struct CommandResult {
    std::vector<std::filesystem::path> written;
    std::vector<std::string> warnings;
};

// Validates the configuration and input paths, then runs `mode` writing its
// artifacts under out_dir. Relative input paths resolve against base_dir;
// unset inputs default to the previous stage's file in out_dir.
CommandResult run_subcommand(const RunConfig& cfg, Mode mode, const std::filesystem::path& out_dir,
                             const std::filesystem::path& base_dir = ".");

} // namespace tadecay
