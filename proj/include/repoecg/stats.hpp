#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repoecg/metricize.hpp"

namespace repoecg::stats {

struct WilcoxonResult {
    double w = 0.0;    // min(W+, W-)
    double p = 1.0;    // two-sided
    long n = 0;        // pairs remaining after dropping zero differences
    bool exact = true; // exact distribution vs normal approximation
};

// Paired Wilcoxon signed-rank test. Zero differences are dropped; ties get
// midranks. Exact two-sided p by full enumeration when n <= 25 with no ties;
// otherwise an exact tie-aware distribution (dynamic programming) up to
// n = 64, then a tie- and continuity-corrected normal approximation.
// Throws AllZeroDifferences when every difference is zero.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

namespace detail {
// The branch used when the tie-free enumeration cannot run (ties present or
// n > 25): the tie-aware dynamic program up to n = 64, then the corrected
// normal approximation. Takes the paired differences directly (zeros are
// dropped here too). Exposed so tests can run it on inputs the enumeration
// branch would otherwise claim and compare the two.
WilcoxonResult wilcoxon_fallback(const std::vector<double>& diffs);
} // namespace detail

// Holm step-down adjustment; result in input order, capped at 1.
// Throws Error(runtime) on empty input.
std::vector<double> holm_bonferroni(const std::vector<double>& p_values);

// (#(a_i > b_j) - #(a_i < b_j)) / (|a| |b|). Throws Error(runtime) when
// either sample is empty.
double cliffs_delta(const std::vector<double>& a, const std::vector<double>& b);

// Mean of each non-sentiment graph component's raw monthly values over the
// table's full history; components absent in every month are left out.
struct ComponentMeanVector {
    std::string repo_slug;
    std::map<std::string, double> means; // component id → mean
};

ComponentMeanVector component_means(const metrics::MonthlyTable& table);

struct PairwiseComparison {
    std::string repo_a;
    std::string repo_b;
    double delta = 0.0;              // Cliff's delta over the paired means
    std::optional<double> p_raw;     // absent when the test is undefined
    std::optional<double> p_adjusted;
    std::string stars;               // "", "*", "**", "***"
    long shared_components = 0;
};

struct ComparisonMatrix {
    std::vector<std::string> repos;          // row/column order
    std::vector<PairwiseComparison> cells;   // all ordered pairs (a != b)
};

// Pairwise comparison over every ordered project pair. Components missing
// from either project are dropped pairwise; fewer than 5 shared components →
// Error(insufficient_overlap). Raw p-values of all unordered pairs are
// adjusted jointly. Throws Error(insufficient_projects) for < 2 inputs.
ComparisonMatrix compare_projects(const std::vector<ComponentMeanVector>& vectors);

// Stars from the adjusted p at strict thresholds 0.05 / 0.01 / 0.001.
std::string stars_for(std::optional<double> p_adjusted);

// comparison.csv: a,b,delta,p_raw,p_adjusted,stars (ordered pairs, row order).
std::string comparison_csv(const ComparisonMatrix& m);

// Human-readable matrix: one row/column per project, "delta stars" cells.
std::string comparison_table(const ComparisonMatrix& m);

} // namespace repoecg::stats
