#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repoecg/components.hpp"
#include "repoecg/dump_io.hpp"
#include "repoecg/enrich.hpp"
#include "repoecg/records.hpp"
#include "repoecg/util.hpp"

namespace repoecg::metrics {

struct MonthBucket {
    std::string repo_slug;
    int year = 0;
    int month = 0; // 1..12
};

// One calendar month of component values. A component id missing from the
// map is absent — distinct from a stored 0.
struct MonthlyRow {
    MonthBucket bucket;
    std::map<std::string, double> values;

    std::optional<double> get(std::string_view component_id) const;
};

struct MonthlyTable {
    std::string repo_slug;
    std::vector<MonthlyRow> rows; // chronological, contiguous months
    long warnings = 0;            // clamped durations, scorer failures, …
};

struct AggregateOptions {
    enrich::TextScorer* scorer = nullptr; // default: bundled lexicon scorer
    const enrich::GenderTable* gender_table = nullptr;   // default: bundled
    const enrich::CountryTable* country_table = nullptr; // default: bundled
    bool gender_ratio_male = false; // report male/(female+male) instead
};

// Aggregates one repository's records into per-month component values
// covering every month between the first and last event (months with no
// events get all-count-zero rows so the time axis is gapless). Conflicting
// duplicate records (same id, different fields) are a hard error; identical
// duplicates are dropped silently.
MonthlyTable aggregate_monthly(const ingest::Dump& dump,
                               const std::vector<CommitRecord>& commits,
                               const AggregateOptions& options = {});

// Seconds between creation and closure, clamped to 0 (with a counted
// warning) when the clock ran backwards.
double closure_duration(std::int64_t created_at, std::int64_t closed_at,
                        long* clamp_warnings = nullptr);

// Seconds from parent creation to the first comment by someone other than
// the parent author; absent when no such comment exists. `comments` must be
// sorted by created_at.
std::optional<double> response_time(const IssueRecord& parent,
                                    const std::vector<const CommentRecord*>& comments);

// ---- CSV ------------------------------------------------------------------

// One column per registry component (fixed order), one row per month, empty
// cells for absent values. Byte-identical across reruns.
std::string monthly_csv(const MonthlyTable& table);

void write_monthly_csv(const std::filesystem::path& path, const MonthlyTable& table);

// Strict inverse of monthly_csv. Unknown columns → Error(schema_mismatch).
MonthlyTable load_monthly_csv(const std::filesystem::path& path);

} // namespace repoecg::metrics
