#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repoecg::metrics {

enum class ValueKind {
    count,    // nonnegative integer; rendered as log10(1 + v)
    duration, // seconds; rendered as log10(1 + v) (period widths)
    ratio,    // real in [0,1]
    score,    // bounded real (sentiment in [-1,1], readability ~[0,121])
    index,    // Shannon index, >= 0
};

struct ComponentSpec {
    std::string id;      // stable machine name; CSV column header
    std::string label;   // human-readable name used on plots
    ValueKind kind;
    // Lane height per value unit, in "decades" (the height of one log10
    // step). Counts/durations ignore this and use log10(1 + v) directly.
    double render_scale = 1.0;
};

// The canonical monthly component registry, in CSV column order. The first
// kGraphComponentCount entries are the unique graph components (components
// shared between two leads, e.g. response times, are stored once); the tail
// holds auxiliary bookkeeping columns that belong to no lead.
const std::vector<ComponentSpec>& component_registry();

inline constexpr std::size_t kGraphComponentCount = 46;

const ComponentSpec* find_component(std::string_view id); // nullptr when unknown
std::size_t component_index(std::string_view id);         // throws Error(runtime) when unknown

// Component ids (kept as named constants so call sites cannot typo a column).
namespace component {
inline constexpr const char* issues_created = "issues_created";
inline constexpr const char* issues_closed = "issues_closed";
inline constexpr const char* issue_closure_duration = "issue_closure_duration";
inline constexpr const char* useful_issue_comment_ratio = "useful_issue_comment_ratio";
inline constexpr const char* toxic_issue_comment_ratio = "toxic_issue_comment_ratio";
inline constexpr const char* prs_created = "prs_created";
inline constexpr const char* prs_closed = "prs_closed";
inline constexpr const char* pr_closure_duration = "pr_closure_duration";
inline constexpr const char* useful_review_comment_ratio = "useful_review_comment_ratio";
inline constexpr const char* toxic_review_comment_ratio = "toxic_review_comment_ratio";
inline constexpr const char* commits_total = "commits_total";
inline constexpr const char* commit_authors = "commit_authors";
inline constexpr const char* dmm_unit_interfacing = "dmm_unit_interfacing";
inline constexpr const char* dmm_unit_complexity = "dmm_unit_complexity";
inline constexpr const char* dmm_unit_size = "dmm_unit_size";
inline constexpr const char* issue_reporters = "issue_reporters";
inline constexpr const char* issue_comments = "issue_comments";
inline constexpr const char* issue_response_time = "issue_response_time";
inline constexpr const char* pr_creators = "pr_creators";
inline constexpr const char* review_comments = "review_comments";
inline constexpr const char* pr_response_time = "pr_response_time";
inline constexpr const char* issue_labels_new = "issue_labels_new";
inline constexpr const char* issue_labels_total = "issue_labels_total";
inline constexpr const char* pr_labels_new = "pr_labels_new";
inline constexpr const char* pr_labels_total = "pr_labels_total";
inline constexpr const char* newcomer_issues = "newcomer_issues";
inline constexpr const char* deduplicated_issues = "deduplicated_issues";
inline constexpr const char* issue_comment_sentiment_median = "issue_comment_sentiment_median";
inline constexpr const char* review_comment_sentiment_median = "review_comment_sentiment_median";
inline constexpr const char* issue_comment_readability = "issue_comment_readability";
inline constexpr const char* issue_body_readability = "issue_body_readability";
inline constexpr const char* pr_comment_readability = "pr_comment_readability";
inline constexpr const char* pr_body_readability = "pr_body_readability";
inline constexpr const char* reactions_issues = "reactions_issues";
inline constexpr const char* reactions_issue_comments = "reactions_issue_comments";
inline constexpr const char* reactions_review_comments = "reactions_review_comments";
inline constexpr const char* affiliation_heterogeneity_commits = "affiliation_heterogeneity_commits";
inline constexpr const char* parent_commits = "parent_commits";
inline constexpr const char* gender_ratio_issues = "gender_ratio_issues";
inline constexpr const char* location_coverage_issues = "location_coverage_issues";
inline constexpr const char* gender_ratio_prs = "gender_ratio_prs";
inline constexpr const char* location_coverage_prs = "location_coverage_prs";
inline constexpr const char* association_heterogeneity_issues = "association_heterogeneity_issues";
inline constexpr const char* user_type_variation_issues = "user_type_variation_issues";
inline constexpr const char* association_heterogeneity_prs = "association_heterogeneity_prs";
inline constexpr const char* user_type_variation_prs = "user_type_variation_prs";
// Auxiliary (not part of any graph lead):
inline constexpr const char* prs_merged = "prs_merged";
inline constexpr const char* closed_open_issue_ratio = "closed_open_issue_ratio";
} // namespace component

} // namespace repoecg::metrics
