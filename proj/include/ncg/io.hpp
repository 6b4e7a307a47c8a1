#pragma once

#include <filesystem>

#include "ncg/experiments.hpp"
#include "ncg/metric_examples.hpp"

namespace ncg {

// All numeric output is written with 17 significant digits so regression
// baselines are stable; CSV is comma-separated, LF, UTF-8, with a header row.

std::string format_full(double v);

std::string ball_to_json(const Ball& b, const LengthFunction& h, const LengthFunction& f);
std::string ball_to_csv(const Ball& b, const LengthFunction& h, const LengthFunction& f);

std::string algebra_element_to_json(const AlgebraElement& f);

std::string spectrum_to_csv(const std::vector<SpectrumEntry>& sp, const Group& g);

// Coordinate-list export (row, col, re, im), deterministic ordering.
std::string operator_to_coo(const SpCMat& m);

std::string report_to_json(const ConvergenceReport& rep);
std::string report_to_csv(const ConvergenceReport& rep);

// Pairwise Kantorovich distances between Dirac states.
std::string distance_table_csv(const FiniteQcms& q);

std::string interval_report_to_json(const IntervalExampleReport& rep);
std::string nbar_report_to_json(const NbarExampleReport& rep);

struct RunManifest {
    std::string command;
    std::string config_snapshot;
    std::uint64_t seed = 0;
    std::string artifact_version = "0.1.0";
    double wall_seconds = 0;
    std::string summary;  // PASS/FAIL/UNDECIDED or error text
    bool ok = false;
};

std::string manifest_to_json(const RunManifest& m);

void write_file(const std::filesystem::path& path, const std::string& content);

// Plot series: two-column (or labeled multi-column) text files per figure.
// The window scatter reproduces the (L_H, log_p F) geometry picture, the
// other series track the per-level convergence quantities.
void emit_plotdata(const ExperimentConfig& cfg, const ConvergenceReport& rep,
                   const std::filesystem::path& dir);

}  // namespace ncg
