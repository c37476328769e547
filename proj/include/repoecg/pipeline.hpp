#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "repoecg/config.hpp"

namespace repoecg::cli {

// Shared command context. `slugs` empty means --all (every configured
// project). `anonymize` maps project names to P1..Pn (config order) in every
// output artifact. All functions throw repoecg::Error; main() maps the error
// class onto the exit code.
struct RunContext {
    Config config;
    std::vector<std::string> slugs;
    bool anonymize = false;
    std::ostream* log = nullptr; // human progress text (never data)
};

// Label a project appears under in output artifacts and out_dir paths.
std::string output_label(const RunContext& ctx, const std::string& slug);

// mine: API dumps + commits.ndjson for each selected project.
void run_mine(const RunContext& ctx, const std::optional<std::string>& token);

// metrics: dumps → <data_dir>/<repo>/monthly.csv.
void run_metrics(const RunContext& ctx);

// stg: monthly.csv → <out_dir>/<repo>/stg_<window>.svg per requested window.
// Window names: "12", "36", "60", "120" (trailing months, clamped to history
// with a warning) or "all".
void run_stg(const RunContext& ctx, const std::vector<std::string>& windows);

// compare: all selected projects → <out_dir>/comparison.csv + comparison.txt.
void run_compare(const RunContext& ctx);

// words: review-comment usefulness corpora → <out_dir>/<repo>/fighting_words.csv
// + fighting_words.svg. With `skip_single_class`, single-class projects are
// skipped with a notice instead of failing (the --all behavior).
void run_words(const RunContext& ctx, bool skip_single_class);

} // namespace repoecg::cli
