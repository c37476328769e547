#include "repoecg/components.hpp"

#include <map>

#include "repoecg/errors.hpp"

namespace repoecg::metrics {

namespace {

std::vector<ComponentSpec> make_registry() {
    using K = ValueKind;
    // Readability scores run to ~120, so they render at 0.01 decades per
    // point; every other linear quantity gets one decade per unit.
    constexpr double kReadabilityScale = 0.01;
    std::vector<ComponentSpec> r = {
        {component::issues_created, "# issues created", K::count, 1.0},
        {component::issues_closed, "# issues closed", K::count, 1.0},
        {component::issue_closure_duration, "issue closure duration", K::duration, 1.0},
        {component::useful_issue_comment_ratio, "useful issue-comment ratio", K::ratio, 1.0},
        {component::toxic_issue_comment_ratio, "toxic issue-comment ratio", K::ratio, 1.0},
        {component::prs_created, "# PRs created", K::count, 1.0},
        {component::prs_closed, "# PRs closed", K::count, 1.0},
        {component::pr_closure_duration, "PR closure duration", K::duration, 1.0},
        {component::useful_review_comment_ratio, "useful review-comment ratio", K::ratio, 1.0},
        {component::toxic_review_comment_ratio, "toxic review-comment ratio", K::ratio, 1.0},
        {component::commits_total, "total commits", K::count, 1.0},
        {component::commit_authors, "total authors", K::count, 1.0},
        {component::dmm_unit_interfacing, "unit interfacing", K::ratio, 1.0},
        {component::dmm_unit_complexity, "cyclomatic complexity", K::ratio, 1.0},
        {component::dmm_unit_size, "method size", K::ratio, 1.0},
        {component::issue_reporters, "# issue reporters", K::count, 1.0},
        {component::issue_comments, "# issue comments", K::count, 1.0},
        {component::issue_response_time, "issue response time", K::duration, 1.0},
        {component::pr_creators, "# PR creators", K::count, 1.0},
        {component::review_comments, "# review comments", K::count, 1.0},
        {component::pr_response_time, "PR response time", K::duration, 1.0},
        {component::issue_labels_new, "# new issue-labels", K::count, 1.0},
        {component::issue_labels_total, "# total issue-labels", K::count, 1.0},
        {component::pr_labels_new, "# new PR-labels", K::count, 1.0},
        {component::pr_labels_total, "# total PR-labels", K::count, 1.0},
        {component::newcomer_issues, "# newcomer issues", K::count, 1.0},
        {component::deduplicated_issues, "# deduplicated issues", K::count, 1.0},
        {component::issue_comment_sentiment_median, "issue-comment sentiment (median)", K::score, 1.0},
        {component::review_comment_sentiment_median, "review-comment sentiment (median)", K::score, 1.0},
        {component::issue_comment_readability, "issue-comment readability", K::score, kReadabilityScale},
        {component::issue_body_readability, "issue-body readability", K::score, kReadabilityScale},
        {component::pr_comment_readability, "PR-comment readability", K::score, kReadabilityScale},
        {component::pr_body_readability, "PR-body readability", K::score, kReadabilityScale},
        {component::reactions_issues, "reactions on issues", K::count, 1.0},
        {component::reactions_issue_comments, "reactions on issue-comments", K::count, 1.0},
        {component::reactions_review_comments, "reactions on review-comments", K::count, 1.0},
        {component::affiliation_heterogeneity_commits, "affiliation heterogeneity (commits)", K::index, 1.0},
        {component::parent_commits, "# parent commits", K::count, 1.0},
        {component::gender_ratio_issues, "gender ratio (issues)", K::ratio, 1.0},
        {component::location_coverage_issues, "location coverage (issues)", K::count, 1.0},
        {component::gender_ratio_prs, "gender ratio (PRs)", K::ratio, 1.0},
        {component::location_coverage_prs, "location coverage (PRs)", K::count, 1.0},
        {component::association_heterogeneity_issues, "association heterogeneity (issues)", K::index, 1.0},
        {component::user_type_variation_issues, "user-type variation (issues)", K::index, 1.0},
        {component::association_heterogeneity_prs, "association heterogeneity (PRs)", K::index, 1.0},
        {component::user_type_variation_prs, "user-type variation (PRs)", K::index, 1.0},
        // Auxiliary bookkeeping columns (no graph lead):
        {component::prs_merged, "# PRs merged", K::count, 1.0},
        {component::closed_open_issue_ratio, "closed/opened issue ratio", K::ratio, 1.0},
    };
    return r;
}

} // namespace

const std::vector<ComponentSpec>& component_registry() {
    static const std::vector<ComponentSpec> registry = make_registry();
    return registry;
}

const ComponentSpec* find_component(std::string_view id) {
    static const std::map<std::string, std::size_t, std::less<>> index = [] {
        std::map<std::string, std::size_t, std::less<>> m;
        const auto& reg = component_registry();
        for (std::size_t i = 0; i < reg.size(); ++i) m[reg[i].id] = i;
        return m;
    }();
    auto it = index.find(id);
    if (it == index.end()) return nullptr;
    return &component_registry()[it->second];
}

std::size_t component_index(std::string_view id) {
    const auto& reg = component_registry();
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (reg[i].id == id) return i;
    fail(Errc::runtime, "unknown component id '" + std::string(id) + "'");
}

} // namespace repoecg::metrics
