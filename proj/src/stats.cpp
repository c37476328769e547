#include "repoecg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>

#include "repoecg/components.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/util.hpp"

namespace repoecg::stats {

namespace {

// Midranks of |d| over the nonzero differences. Ranks are stored doubled so
// midranks (multiples of 0.5) stay integral.
struct Ranked {
    std::vector<long long> doubled_ranks; // aligned with the diffs
    bool has_ties = false;
    std::vector<long long> tie_sizes; // run lengths over sorted |d|
};

Ranked rank_abs(const std::vector<double>& diffs) {
    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(diffs[x]) < std::abs(diffs[y]);
    });

    Ranked r;
    r.doubled_ranks.assign(n, 0);
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start;
        while (end + 1 < n && std::abs(diffs[order[end + 1]]) == std::abs(diffs[order[start]]))
            ++end;
        const std::size_t run = end - start + 1;
        // midrank of 1-based positions start+1 .. start+run, doubled
        const long long doubled = static_cast<long long>(2 * start + run + 1);
        for (std::size_t k = start; k <= end; ++k) r.doubled_ranks[order[k]] = doubled;
        if (run > 1) r.has_ties = true;
        r.tie_sizes.push_back(static_cast<long long>(run));
        start = end + 1;
    }
    return r;
}

// Exact distribution over all 2^n sign assignments, tie-free integer ranks.
WilcoxonResult enumeration_result(const std::vector<double>& diffs, const Ranked& ranked) {
    const std::size_t n = diffs.size();
    long long total = 0;
    long long w_plus = 0;
    std::vector<long long> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        ranks[i] = ranked.doubled_ranks[i] / 2;
        total += ranks[i];
        if (diffs[i] > 0.0) w_plus += ranks[i];
    }
    const long long w_min = std::min(w_plus, total - w_plus);

    std::vector<unsigned long long> ways(static_cast<std::size_t>(total) + 1, 0);
    ways[0] = 1;
    for (long long r : ranks)
        for (long long s = total; s >= r; --s)
            ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - r)];

    unsigned long long tail = 0;
    for (long long s = 0; s <= w_min; ++s) tail += ways[static_cast<std::size_t>(s)];

    WilcoxonResult res;
    res.n = static_cast<long>(n);
    res.w = static_cast<double>(w_min);
    res.p = std::min(1.0, 2.0 * static_cast<double>(tail) / std::ldexp(1.0, static_cast<int>(n)));
    res.exact = true;
    return res;
}

// Tie-aware branch: exact dynamic program over the doubled midranks while the
// subset count fits (n <= 64), then the corrected normal approximation.
WilcoxonResult fallback_result(const std::vector<double>& diffs) {
    const Ranked ranked = rank_abs(diffs);
    const std::size_t n = diffs.size();
    long long total2 = 0;
    long long w2_plus = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total2 += ranked.doubled_ranks[i];
        if (diffs[i] > 0.0) w2_plus += ranked.doubled_ranks[i];
    }
    const long long w2 = std::min(w2_plus, total2 - w2_plus);

    WilcoxonResult res;
    res.n = static_cast<long>(n);
    res.w = static_cast<double>(w2) / 2.0;

    if (n <= 64) {
        std::vector<unsigned __int128> ways(static_cast<std::size_t>(total2) + 1, 0);
        ways[0] = 1;
        for (long long r : ranked.doubled_ranks)
            for (long long s = total2; s >= r; --s)
                ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - r)];
        unsigned __int128 tail = 0;
        for (long long s = 0; s <= w2; ++s) tail += ways[static_cast<std::size_t>(s)];
        const long double p = 2.0L * static_cast<long double>(tail) /
                              std::ldexp(1.0L, static_cast<int>(n));
        res.p = static_cast<double>(std::min<long double>(p, 1.0L));
        res.exact = true;
        return res;
    }

    const double dn = static_cast<double>(n);
    const double mean = dn * (dn + 1.0) / 4.0;
    double tie_term = 0.0;
    for (long long t : ranked.tie_sizes) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
    res.exact = false;
    if (var <= 0.0) {
        res.p = 1.0;
        return res;
    }
    // Continuity correction: w is at or below the mean, so shift half a step up.
    const double z = (res.w - mean + 0.5) / std::sqrt(var);
    res.p = std::min(1.0, std::erfc(-z / std::sqrt(2.0))); // = 2 Phi(z)
    return res;
}

std::vector<double> nonzero_diffs(const std::vector<double>& diffs) {
    std::vector<double> out;
    out.reserve(diffs.size());
    for (double d : diffs)
        if (d != 0.0) out.push_back(d);
    return out;
}

} // namespace

namespace detail {

WilcoxonResult wilcoxon_fallback(const std::vector<double>& diffs) {
    std::vector<double> nz = nonzero_diffs(diffs);
    if (nz.empty()) throw AllZeroDifferences();
    return fallback_result(nz);
}

} // namespace detail

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) fail(Errc::runtime, "paired samples must have equal length");
    if (a.empty()) fail(Errc::runtime, "paired test requires at least one pair");
    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) throw AllZeroDifferences();

    const Ranked ranked = rank_abs(diffs);
    if (!ranked.has_ties && diffs.size() <= 25) return enumeration_result(diffs, ranked);
    return fallback_result(diffs);
}

std::vector<double> holm_bonferroni(const std::vector<double>& p_values) {
    if (p_values.empty()) fail(Errc::runtime, "adjustment requires at least one p-value");
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p > 0.0) || p > 1.0) fail(Errc::runtime, "p-values must lie in (0, 1]");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return p_values[x] < p_values[y]; });

    std::vector<double> adjusted(m, 0.0);
    double running = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        running = std::max(running, static_cast<double>(m - j) * p_values[order[j]]);
        adjusted[order[j]] = std::min(1.0, running);
    }
    return adjusted;
}

double cliffs_delta(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) fail(Errc::runtime, "effect size requires two nonempty samples");
    std::vector<double> sorted_b = b;
    std::sort(sorted_b.begin(), sorted_b.end());
    long long net = 0;
    for (double x : a) {
        const auto lower = std::lower_bound(sorted_b.begin(), sorted_b.end(), x);
        const auto upper = std::upper_bound(lower, sorted_b.end(), x);
        const long long greater = lower - sorted_b.begin();          // b_j < x
        const long long less = sorted_b.end() - upper;               // b_j > x
        net += greater - less;
    }
    const double delta =
        static_cast<double>(net) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    return delta == 0.0 ? 0.0 : delta;
}

ComponentMeanVector component_means(const metrics::MonthlyTable& table) {
    ComponentMeanVector out;
    out.repo_slug = table.repo_slug;
    const auto& registry = metrics::component_registry();
    for (std::size_t i = 0; i < metrics::kGraphComponentCount; ++i) {
        const auto& spec = registry[i];
        if (spec.id == metrics::component::issue_comment_sentiment_median ||
            spec.id == metrics::component::review_comment_sentiment_median)
            continue;
        double sum = 0.0;
        long count = 0;
        for (const auto& row : table.rows) {
            if (auto value = row.get(spec.id)) {
                sum += *value;
                ++count;
            }
        }
        if (count > 0) out.means[spec.id] = sum / static_cast<double>(count);
    }
    return out;
}

ComparisonMatrix compare_projects(const std::vector<ComponentMeanVector>& vectors) {
    if (vectors.size() < 2)
        fail(Errc::insufficient_projects, "comparison requires at least two projects with metrics");

    struct UnorderedCell {
        std::size_t i = 0;
        std::size_t j = 0;
        double delta = 0.0;
        std::optional<double> p_raw;
        std::optional<double> p_adjusted;
        long shared = 0;
    };
    std::vector<UnorderedCell> pairs;

    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            std::vector<double> va;
            std::vector<double> vb;
            for (const auto& [id, mean] : vectors[i].means) {
                auto it = vectors[j].means.find(id);
                if (it == vectors[j].means.end()) continue;
                va.push_back(mean);
                vb.push_back(it->second);
            }
            if (va.size() < 5)
                fail(Errc::insufficient_overlap,
                     "projects " + vectors[i].repo_slug + " and " + vectors[j].repo_slug +
                         " share only " + std::to_string(va.size()) +
                         " components; at least 5 are required");

            UnorderedCell cell;
            cell.i = i;
            cell.j = j;
            cell.shared = static_cast<long>(va.size());
            try {
                cell.p_raw = wilcoxon_signed_rank(va, vb).p;
                cell.delta = cliffs_delta(va, vb);
            } catch (const AllZeroDifferences&) {
                cell.delta = 0.0; // identical paired vectors: defined neutral result
            }
            pairs.push_back(std::move(cell));
        }
    }

    std::vector<double> raw;
    for (const auto& cell : pairs)
        if (cell.p_raw) raw.push_back(*cell.p_raw);
    if (!raw.empty()) {
        const std::vector<double> adjusted = holm_bonferroni(raw);
        std::size_t k = 0;
        for (auto& cell : pairs)
            if (cell.p_raw) cell.p_adjusted = adjusted[k++];
    }

    ComparisonMatrix matrix;
    for (const auto& v : vectors) matrix.repos.push_back(v.repo_slug);
    for (std::size_t a = 0; a < vectors.size(); ++a) {
        for (std::size_t b = 0; b < vectors.size(); ++b) {
            if (a == b) continue;
            const UnorderedCell* source = nullptr;
            for (const auto& cell : pairs)
                if ((cell.i == std::min(a, b)) && (cell.j == std::max(a, b))) source = &cell;
            PairwiseComparison out;
            out.repo_a = vectors[a].repo_slug;
            out.repo_b = vectors[b].repo_slug;
            const double delta = a < b ? source->delta : -source->delta;
            out.delta = delta == 0.0 ? 0.0 : delta;
            out.p_raw = source->p_raw;
            out.p_adjusted = source->p_adjusted;
            out.stars = stars_for(out.p_adjusted);
            out.shared_components = source->shared;
            matrix.cells.push_back(std::move(out));
        }
    }
    return matrix;
}

std::string stars_for(std::optional<double> p_adjusted) {
    if (!p_adjusted) return "";
    if (*p_adjusted < 0.001) return "***";
    if (*p_adjusted < 0.01) return "**";
    if (*p_adjusted < 0.05) return "*";
    return "";
}

std::string comparison_csv(const ComparisonMatrix& m) {
    std::string out = "a,b,delta,p_raw,p_adjusted,stars\n";
    for (const auto& cell : m.cells) {
        out += cell.repo_a + "," + cell.repo_b + "," + util::format_number(cell.delta) + ",";
        if (cell.p_raw) out += util::format_number(*cell.p_raw);
        out += ",";
        if (cell.p_adjusted) out += util::format_number(*cell.p_adjusted);
        out += "," + cell.stars + "\n";
    }
    return out;
}

std::string comparison_table(const ComparisonMatrix& m) {
    const std::size_t n = m.repos.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[m.repos[i]] = i;

    std::vector<std::vector<std::string>> grid(n + 1, std::vector<std::string>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        grid[0][i + 1] = m.repos[i];
        grid[i + 1][0] = m.repos[i];
        grid[i + 1][i + 1] = "-";
    }
    for (const auto& cell : m.cells) {
        const std::size_t r = index.at(cell.repo_a) + 1;
        const std::size_t c = index.at(cell.repo_b) + 1;
        grid[r][c] = util::format_fixed(cell.delta, 2) + cell.stars;
    }

    std::vector<std::size_t> widths(n + 1, 0);
    for (const auto& row : grid)
        for (std::size_t c = 0; c <= n; ++c) widths[c] = std::max(widths[c], row[c].size());

    std::string out;
    for (const auto& row : grid) {
        for (std::size_t c = 0; c <= n; ++c) {
            std::string cell = row[c];
            if (c == 0) {
                cell.resize(widths[c], ' '); // left-aligned label column
            } else {
                cell.insert(0, widths[c] - cell.size(), ' ');
            }
            if (c > 0) out += "  ";
            out += cell;
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    }
    out += "*: p<0.05  **: p<0.01  ***: p<0.001 (Holm-adjusted)\n";
    return out;
}

} // namespace repoecg::stats
