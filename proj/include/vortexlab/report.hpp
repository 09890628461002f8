// report.hpp
// Experiment front end: named experiments driven by a flat configuration,
// producing machine-readable JSON reports, CSV data files, and static SVG
// figures. All outputs are deterministic: identical configurations yield
// byte-identical files.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vortexlab/errors.hpp"

namespace vortexlab {

struct ExperimentConfig {
    std::string experiment;   // crystal | spectrum | bounds | escape | blob | domain | verify
    int n = 3;                // crystal size
    double alpha = 1.0;       // interaction exponent
    double delta = 0.75;      // hexagonal-domain parameter
    double epsilon = 1e-4;    // blob scale
    double beta = 0.75;       // exit-radius exponent
    double nu = 4.0;          // concentration exponent
    int markers = 200;        // markers per blob
    bool curve = false;       // bounds: emit the alpha-grid CSV
    std::string alpha_grid;   // "lo:hi:step" for curve experiments
    bool svg = false;         // domain: also render SVG figures
    bool dump_markers = false; // blob: raw marker CSV per snapshot
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double t_end = 0.0;       // optional horizon override (blob)
    double time_budget = 0.0; // wall-clock guard in seconds (blob; 0 = none)
    int threads = 1;
    std::string out_dir = ".";

    // Parses and validates; unknown keys or out-of-range values raise
    // ConfigError.
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
    void validate() const;
};

struct RunResult {
    nlohmann::ordered_json report;
    std::vector<std::string> files_written;
};

// Dispatches one experiment. ConfigError signals a usage problem (CLI exit 2);
// the numeric error types signal a diagnostic failure (CLI exit 3).
RunResult run_experiment(const ExperimentConfig& config);

// Formatting helpers shared by the writers: fixed 17-significant-digit floats.
std::string format_g17(double v);

inline constexpr const char* kVersion = "0.1.0";

} // namespace vortexlab
