#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repoecg/records.hpp"

namespace repoecg::gitmine {

// A function-like unit touched by a diff, with the sizes used for risk
// classification and its share of the change (churn = lines touched in it).
struct ChangedUnit {
    std::string file_path;
    std::string unit_name;
    long size_loc = 0;     // post-change lines of code in the unit
    long cyclomatic = 1;   // 1 + branching tokens
    long param_count = 0;
    long churn = 0;        // added + deleted lines attributed to the unit
};

// Low-risk cutoffs for the delta-maintainability scores. A unit is low risk
// for a property when its measure is at or below the threshold.
struct RiskThresholds {
    long max_size_loc = 15;
    long max_cyclomatic = 5;
    long max_params = 2;
};

struct DmmScores {
    std::optional<double> unit_size;
    std::optional<double> unit_complexity;
    std::optional<double> unit_interfacing;
};

struct MineResult {
    std::vector<CommitRecord> commits; // authored_at ascending
    long unreadable_objects = 0;       // skipped with a warning, never silently
};

// Walks the clone's history from `branch` (default: HEAD) and produces one
// record per reachable commit. Throws Error(not_a_repo) when the path is not
// a git repository; an empty history yields an empty stream.
MineResult mine_commits(const std::filesystem::path& clone_path,
                        const std::optional<std::string>& branch = {},
                        const RiskThresholds& thresholds = {});

// Extracts changed function-like units from one file's unified diff. Supported
// languages: C-like braces (c/cc/cpp/h/hpp/java/js/…), Python, Fortran.
// Unsupported file types yield an empty list.
std::vector<ChangedUnit> extract_units(std::string_view diff_text, std::string_view file_path);

// Per-property proportion of churn that landed in low-risk units; empty
// optionals when no units were extracted.
DmmScores dmm_scores(const std::vector<ChangedUnit>& units, const RiskThresholds& thresholds);

} // namespace repoecg::gitmine
