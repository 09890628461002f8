// acceptance.hpp
// The acceptance suite: one entry per quantitative criterion, each printing a
// pass/fail verdict with the measured numbers it was judged on.
#pragma once

#include <string>
#include <vector>

namespace vortexlab {

struct AcceptanceOptions {
    // Wall-clock guard for the pinned marker-cloud run of criterion 7.
    double blob_wall_budget = 180.0;
    int threads = 2;
    // Directory for scratch output of the determinism checks; empty uses the
    // system temp directory.
    std::string scratch_dir;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    std::vector<std::string> lines; // per-clause measurements and verdicts
};

// Runs criterion `only_id`, or all ten when only_id == 0.
std::vector<CriterionResult> run_acceptance(int only_id, const AcceptanceOptions& options);

} // namespace vortexlab
