// Acceptance checks for the released toolchain. Each TEST_CASE is one
// user-visible guarantee; a listener prints a single PASS/FAIL line per
// check so the binary's output reads as a checklist.

#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "repoecg/components.hpp"
#include "repoecg/enrich.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/gitmine.hpp"
#include "repoecg/metricize.hpp"
#include "repoecg/stats.hpp"
#include "repoecg/stg.hpp"
#include "repoecg/util.hpp"
#include "repoecg/wordscore.hpp"

#include "support/fixture_data.hpp"
#include "support/fixture_repo.hpp"
#include "support/fixture_server.hpp"
#include "support/proc.hpp"
#include "support/temp_dir.hpp"

using namespace repoecg;

namespace {

// ---------------------------------------------------------------------------
// One PASS/FAIL line per test case.
// ---------------------------------------------------------------------------

struct ChecklistPrinter : doctest::IReporter {
    std::ostream& out;
    std::string current;

    explicit ChecklistPrinter(const doctest::ContextOptions& in) : out(*in.cout) {}

    void report_query(const doctest::QueryData&) override {}
    void test_run_start() override {}
    void test_run_end(const doctest::TestRunStats&) override {}
    void test_case_start(const doctest::TestCaseData& in) override { current = in.m_name; }
    void test_case_reenter(const doctest::TestCaseData&) override {}
    void test_case_end(const doctest::CurrentTestCaseStats& in) override {
        out << (in.testCaseSuccess ? "[PASS] " : "[FAIL] ") << current << "\n";
    }
    void test_case_exception(const doctest::TestCaseException&) override {}
    void subcase_start(const doctest::SubcaseSignature&) override {}
    void subcase_end() override {}
    void log_assert(const doctest::AssertData&) override {}
    void log_message(const doctest::MessageData&) override {}
    void test_case_skipped(const doctest::TestCaseData&) override {}
};

REGISTER_LISTENER("checklist", 1, ChecklistPrinter);

Errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::ok;
}

// ---------------------------------------------------------------------------
// Independent oracles.
// ---------------------------------------------------------------------------

// Two-sided signed-rank p by walking every one of the 2^n sign assignments.
double sign_enumeration_p(const std::vector<double>& diffs) {
    const int n = static_cast<int>(diffs.size());
    REQUIRE(n >= 1);
    REQUIRE(n <= 20); // the literal walk is exponential

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::fabs(diffs[a]) < std::fabs(diffs[b]); });
    std::vector<long> rank(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
        if (k > 0) // tie-free by construction
            REQUIRE(std::fabs(diffs[order[k]]) != std::fabs(diffs[order[k - 1]]));
        rank[order[k]] = k + 1;
    }

    long w_plus = 0;
    for (int i = 0; i < n; ++i)
        if (diffs[i] > 0.0) w_plus += rank[i];
    const long total = static_cast<long>(n) * (n + 1) / 2;
    const long w_min = std::min(w_plus, total - w_plus);

    std::uint64_t at_or_below = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        long w = 0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) w += rank[i];
        if (w <= w_min) ++at_or_below;
    }
    const double p = 2.0 * static_cast<double>(at_or_below) / std::ldexp(1.0, n);
    return std::min(1.0, p);
}

// Same distribution, tabulated: subset-sum counts over ranks 1..n. Usable for
// any n; must agree with the literal walk wherever both run.
double sign_tabulated_p(int n, long w_min) {
    const long max_sum = static_cast<long>(n) * (n + 1) / 2;
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(max_sum) + 1, 0);
    ways[0] = 1;
    for (int r = 1; r <= n; ++r)
        for (long s = max_sum; s >= r; --s)
            ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - r)];
    std::uint64_t at_or_below = 0;
    for (long s = 0; s <= w_min; ++s) at_or_below += ways[static_cast<std::size_t>(s)];
    const double p = 2.0 * static_cast<double>(at_or_below) / std::ldexp(1.0, n);
    return std::min(1.0, p);
}

double brute_cliffs(const std::vector<double>& a, const std::vector<double>& b) {
    long net = 0;
    for (double x : a)
        for (double y : b) net += (x > y ? 1 : 0) - (x < y ? 1 : 0);
    const double d = static_cast<double>(net) /
                     (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    return d == 0.0 ? 0.0 : d;
}

// ---------------------------------------------------------------------------
// Shared fixture plumbing.
// ---------------------------------------------------------------------------

metrics::MonthlyTable aggregated_fixture(const std::filesystem::path& clone_dir) {
    testsupport::fixture::make_repo(clone_dir);
    const gitmine::MineResult mined = gitmine::mine_commits(clone_dir);
    REQUIRE(mined.unreadable_objects == 0);
    return metrics::aggregate_monthly(testsupport::fixture::dump(), mined.commits);
}

const metrics::ComponentSpec& spec_for(std::string_view id) {
    for (const auto& spec : metrics::component_registry())
        if (spec.id == id) return spec;
    REQUIRE(false);
    std::abort();
}

struct ParsedSpike {
    std::string cls;
    double base_y = 0.0;
    double apex_y = 0.0;
};

// Pulls every spike triangle out of the SVG, in document order.
std::vector<ParsedSpike> parse_spikes(const std::string& svg) {
    std::vector<ParsedSpike> out;
    const std::string open = "<path class=\"";
    std::size_t pos = 0;
    while ((pos = svg.find(open, pos)) != std::string::npos) {
        const std::size_t cls_start = pos + open.size();
        const std::size_t cls_end = svg.find('"', cls_start);
        REQUIRE(cls_end != std::string::npos);
        const std::string cls = svg.substr(cls_start, cls_end - cls_start);
        pos = cls_end;
        if (cls != "sp" && cls.rfind("sp ", 0) != 0) continue;

        const std::string d_open = " d=\"M";
        const std::size_t d_start = svg.find(d_open, cls_end);
        REQUIRE(d_start != std::string::npos);
        const std::size_t num_start = d_start + d_open.size();
        const std::size_t d_end = svg.find('"', num_start);
        REQUIRE(d_end != std::string::npos);
        std::istringstream numbers(svg.substr(num_start, d_end - num_start));

        double x0 = 0, y0 = 0, x1 = 0, y1 = 0, x2 = 0, y2 = 0;
        char l1 = 0, l2 = 0;
        numbers >> x0 >> y0 >> l1 >> x1 >> y1 >> l2 >> x2 >> y2;
        REQUIRE(numbers);
        REQUIRE(l1 == 'L');
        REQUIRE(l2 == 'L');
        REQUIRE(x2 > x0);   // the triangle has width
        REQUIRE(y2 == y0);  // and returns to its own baseline
        out.push_back({cls, y0, y1});
        pos = d_end;
    }
    return out;
}

std::vector<const stg::CycleSpike*> flattened_spikes(const stg::StgDocument& doc) {
    std::vector<const stg::CycleSpike*> out;
    for (const auto& lane : doc.lanes)
        for (const auto& strip : lane.strips)
            for (const auto& cycle : strip.cycles)
                for (const auto& spike : cycle.spikes) out.push_back(&spike);
    return out;
}

double first_spike_height(const std::string& svg) {
    const std::vector<ParsedSpike> spikes = parse_spikes(svg);
    REQUIRE(!spikes.empty());
    return std::fabs(spikes.front().base_y - spikes.front().apex_y);
}

} // namespace

// ---------------------------------------------------------------------------
// 1. Diversity index.
// ---------------------------------------------------------------------------

TEST_CASE("diversity index matches direct entropy evaluation") {
    const std::map<std::string, long> even{{"A", 5}, {"B", 5}};
    CHECK(std::fabs(enrich::shannon_index(even) - std::log(2.0)) <= 1e-12);

    std::mt19937 rng(7021);
    std::uniform_int_distribution<int> category_count(1, 8);
    std::uniform_int_distribution<long> member_count(1, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        std::map<std::string, long> counts;
        const int categories = category_count(rng);
        for (int c = 0; c < categories; ++c)
            counts["cat" + std::to_string(c)] = member_count(rng);

        long total = 0;
        for (const auto& [name, n] : counts) total += n;
        // Summed in reverse insertion order and in long double, so agreement
        // is not an artifact of reusing the implementation's evaluation.
        long double entropy = 0.0L;
        for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
            const long double p = static_cast<long double>(it->second) / total;
            entropy -= p * std::log(p);
        }
        CAPTURE(trial);
        CHECK(std::fabs(enrich::shannon_index(counts) - static_cast<double>(entropy)) <= 1e-12);
    }
}

// ---------------------------------------------------------------------------
// 2. Signed-rank test.
// ---------------------------------------------------------------------------

TEST_CASE("signed-rank p-values agree with exhaustive sign enumeration") {
    // The worked example: five positive differences.
    const stats::WilcoxonResult all_positive =
        stats::wilcoxon_signed_rank({1, 2, 3, 4, 5}, {0, 0, 0, 0, 0});
    CHECK(all_positive.exact);
    CHECK(all_positive.p == 0.0625);

    // Every sign assignment for every n up to 10. Ranks are the sufficient
    // statistic for tie-free data, so magnitudes 1..n cover all cases.
    for (int n = 1; n <= 10; ++n) {
        const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<double> sample(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                sample[static_cast<std::size_t>(i)] =
                    (mask >> i & 1) ? static_cast<double>(i + 1) : -static_cast<double>(i + 1);
            const stats::WilcoxonResult got = stats::wilcoxon_signed_rank(sample, zeros);
            CAPTURE(n);
            CAPTURE(mask);
            CHECK(got.exact);
            CHECK(got.n == n);
            CHECK(got.p == sign_enumeration_p(sample));
        }
    }

    // Arbitrary tie-free magnitudes, not just 1..n.
    std::mt19937 rng(40925);
    std::uniform_real_distribution<double> magnitude(0.1, 100.0);
    std::bernoulli_distribution sign(0.5);
    for (int n = 2; n <= 10; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> sample;
            std::vector<double> seen;
            while (sample.size() < static_cast<std::size_t>(n)) {
                const double m = magnitude(rng);
                if (std::find(seen.begin(), seen.end(), m) != seen.end()) continue;
                seen.push_back(m);
                sample.push_back(sign(rng) ? m : -m);
            }
            const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
            CAPTURE(n);
            CAPTURE(rep);
            CHECK(stats::wilcoxon_signed_rank(sample, zeros).p == sign_enumeration_p(sample));
        }
    }

    // The tabulated form of the same distribution matches the literal walk…
    std::uniform_int_distribution<int> coin(0, 1);
    for (int n = 1; n <= 12; ++n) {
        std::vector<double> sample(static_cast<std::size_t>(n));
        long w_plus = 0;
        for (int i = 0; i < n; ++i) {
            const bool positive = coin(rng) == 1;
            sample[static_cast<std::size_t>(i)] =
                positive ? static_cast<double>(i + 1) : -static_cast<double>(i + 1);
            if (positive) w_plus += i + 1;
        }
        const long total = static_cast<long>(n) * (n + 1) / 2;
        if (n <= 20)
            CHECK(sign_tabulated_p(n, std::min(w_plus, total - w_plus)) ==
                  sign_enumeration_p(sample));
    }

    // …so it can referee the large-sample approximation.
    for (int n = 8; n <= 25; ++n) {
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<double> diffs(static_cast<std::size_t>(n));
            long w_plus = 0;
            for (int i = 0; i < n; ++i) {
                const bool positive = coin(rng) == 1;
                diffs[static_cast<std::size_t>(i)] =
                    positive ? static_cast<double>(i + 1) : -static_cast<double>(i + 1);
                if (positive) w_plus += i + 1;
            }
            std::shuffle(diffs.begin(), diffs.end(), rng);
            const long total = static_cast<long>(n) * (n + 1) / 2;
            const double exact_p = sign_tabulated_p(n, std::min(w_plus, total - w_plus));
            const stats::WilcoxonResult approx = stats::detail::wilcoxon_fallback(diffs);
            CAPTURE(n);
            CAPTURE(rep);
            CHECK(!approx.exact);
            CHECK(std::fabs(approx.p - exact_p) <= 1e-3);
        }
    }
}

// ---------------------------------------------------------------------------
// 3. Multiple-comparison correction.
// ---------------------------------------------------------------------------

TEST_CASE("holm correction reproduces the worked example and dominates raw p-values") {
    const std::vector<double> adjusted = stats::holm_bonferroni({0.01, 0.04, 0.03});
    REQUIRE(adjusted.size() == 3);
    CHECK(std::fabs(adjusted[0] - 0.03) <= 1e-12);
    CHECK(std::fabs(adjusted[1] - 0.06) <= 1e-12);
    CHECK(std::fabs(adjusted[2] - 0.06) <= 1e-12);

    std::mt19937 rng(88341);
    std::uniform_int_distribution<int> family_size(1, 12);
    std::uniform_real_distribution<double> p_value(1e-9, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = family_size(rng);
        std::vector<double> raw(static_cast<std::size_t>(m));
        for (double& p : raw) p = p_value(rng);
        const std::vector<double> adj = stats::holm_bonferroni(raw);
        REQUIRE(adj.size() == raw.size());
        CAPTURE(trial);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            CHECK(adj[i] >= raw[i]);
            CHECK(adj[i] <= 1.0);
        }
        for (std::size_t i = 0; i < raw.size(); ++i)
            for (std::size_t j = 0; j < raw.size(); ++j) {
                if (raw[i] < raw[j]) CHECK(adj[i] <= adj[j]);
                if (raw[i] == raw[j]) CHECK(adj[i] == adj[j]);
            }
    }
}

// ---------------------------------------------------------------------------
// 4. Effect sizes and the comparison matrix.
// ---------------------------------------------------------------------------

TEST_CASE("effect sizes match brute-force pair counting and comparisons are antisymmetric") {
    std::mt19937 rng(51230);
    std::uniform_int_distribution<int> length(1, 12);
    std::uniform_int_distribution<int> value(-3, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> a(static_cast<std::size_t>(length(rng)));
        std::vector<double> b(static_cast<std::size_t>(length(rng)));
        for (double& v : a) v = value(rng);
        for (double& v : b) v = value(rng);
        CAPTURE(trial);
        CHECK(stats::cliffs_delta(a, b) == brute_cliffs(a, b));
        CHECK(stats::cliffs_delta(b, a) == brute_cliffs(b, a));
    }

    // Three projects on fully separated scales share six components.
    const std::vector<std::string> ids{"issues_created",  "issues_closed",
                                       "prs_created",     "commits_total",
                                       "issue_comments",  "review_comments"};
    std::vector<stats::ComponentMeanVector> vectors;
    const double scales[] = {1.0, 10.0, 100.0};
    const char* names[] = {"acc/low", "acc/mid", "acc/high"};
    for (int p = 0; p < 3; ++p) {
        stats::ComponentMeanVector v;
        v.repo_slug = names[p];
        for (std::size_t k = 0; k < ids.size(); ++k)
            v.means[ids[k]] = scales[p] * static_cast<double>(k + 1);
        vectors.push_back(std::move(v));
    }

    const stats::ComparisonMatrix matrix = stats::compare_projects(vectors);
    REQUIRE(matrix.repos.size() == 3);
    REQUIRE(matrix.cells.size() == 6); // every ordered pair
    for (const auto& cell : matrix.cells) {
        const auto mirror =
            std::find_if(matrix.cells.begin(), matrix.cells.end(), [&](const auto& other) {
                return other.repo_a == cell.repo_b && other.repo_b == cell.repo_a;
            });
        REQUIRE(mirror != matrix.cells.end());
        CAPTURE(cell.repo_a);
        CAPTURE(cell.repo_b);
        CHECK(cell.shared_components == 6);
        CHECK(cell.delta == -mirror->delta);
        CHECK(cell.p_raw.has_value());
        REQUIRE(mirror->p_raw.has_value());
        CHECK(cell.p_raw.value() == mirror->p_raw.value());
        REQUIRE(cell.p_adjusted.has_value());
        REQUIRE(mirror->p_adjusted.has_value());
        CHECK(cell.p_adjusted.value() == mirror->p_adjusted.value());
        CHECK(cell.stars == mirror->stars);
        // Fully separated scales force |delta| = 1.
        CHECK(std::fabs(cell.delta) == 1.0);
    }
}

// ---------------------------------------------------------------------------
// 5. Fighting words.
// ---------------------------------------------------------------------------

TEST_CASE("fighting-words scores negate under corpus swap and vanish on identical corpora") {
    words::FightingWordsOptions options;
    options.min_count = 1;

    const std::vector<std::string> direct{"fix the parser bug", "apply this patch to the parser",
                                          "the fix works"};
    const std::vector<std::string> social{"thanks", "nice work everyone", "thanks again"};

    const std::vector<words::TokenZScore> forward = words::fighting_words(direct, social, options);
    const std::vector<words::TokenZScore> swapped = words::fighting_words(social, direct, options);
    REQUIRE(!forward.empty());
    REQUIRE(forward.size() == swapped.size());

    std::map<std::string, const words::TokenZScore*> by_token;
    for (const auto& score : swapped) by_token[score.token] = &score;
    for (const auto& score : forward) {
        REQUIRE(by_token.count(score.token) == 1);
        const words::TokenZScore& mirror = *by_token[score.token];
        CAPTURE(score.token);
        CHECK(score.z == -mirror.z);
        CHECK(score.log_odds == -mirror.log_odds);
        CHECK(score.count_useful == mirror.count_not_useful);
        CHECK(score.count_not_useful == mirror.count_useful);
    }

    const std::vector<std::string> same{"alpha beta beta gamma", "delta epsilon", "beta gamma"};
    const std::vector<words::TokenZScore> neutral = words::fighting_words(same, same, options);
    REQUIRE(!neutral.empty());
    for (const auto& score : neutral) {
        CAPTURE(score.token);
        CHECK(score.z == 0.0);
        CHECK(score.log_odds == 0.0);
        CHECK(score.top10_class == 0);
    }

    CHECK(thrown_code([&] { words::fighting_words({}, {"hello world"}, options); }) ==
          Errc::single_class_corpus);
    CHECK(thrown_code([&] { words::fighting_words({"hello world"}, {}, options); }) ==
          Errc::single_class_corpus);
    CHECK(thrown_code([&] { words::fighting_words({}, {}, options); }) ==
          Errc::single_class_corpus);
}

// ---------------------------------------------------------------------------
// 6. Frozen monthly table.
// ---------------------------------------------------------------------------

TEST_CASE("the scripted fixture history reproduces the frozen monthly table quickly") {
    const std::string golden = util::read_text_file(
        std::filesystem::path(REPOECG_TEST_DATA_DIR) / "monthly_golden.csv");
    REQUIRE(!golden.empty());

    const auto start = std::chrono::steady_clock::now();
    testsupport::TempDir first_run("acc-golden-a");
    const std::string csv = metrics::monthly_csv(aggregated_fixture(first_run.path()));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    CHECK(csv == golden);
    CAPTURE(seconds);
    CHECK(seconds < 5.0);

    // A fresh end-to-end rerun produces the same bytes.
    testsupport::TempDir second_run("acc-golden-b");
    CHECK(metrics::monthly_csv(aggregated_fixture(second_run.path())) == csv);
}

// ---------------------------------------------------------------------------
// 7. Graph rendering.
// ---------------------------------------------------------------------------

TEST_CASE("sustainability graphs render deterministically with amplitude-faithful spikes") {
    testsupport::TempDir scratch("acc-stg");
    const metrics::MonthlyTable table = aggregated_fixture(scratch.path());
    REQUIRE(!table.rows.empty());
    const util::YearMonth first{table.rows.front().bucket.year, table.rows.front().bucket.month};
    const util::YearMonth last{table.rows.back().bucket.year, table.rows.back().bucket.month};

    const stg::StgDocument doc = stg::build_stg(table, first, last);
    const std::string svg = stg::render_svg(doc);
    CHECK(svg == stg::render_svg(stg::build_stg(table, first, last)));

    // Every rendered spike's height must equal its document amplitude (clipped
    // to the strip), and zero/absent components sit exactly on the baseline.
    struct SpikeTally {
        bool absent = false;
        bool zero = false;
        bool positive = false;
    };
    const auto verify_spikes = [](const std::string& rendered, const stg::StgDocument& document) {
        const stg::StyleConfig style;
        const double usable = style.lane_height / 2.0 - 3.0;
        const std::vector<ParsedSpike> drawn = parse_spikes(rendered);
        const std::vector<const stg::CycleSpike*> expected = flattened_spikes(document);
        REQUIRE(!drawn.empty());
        REQUIRE(drawn.size() == expected.size());

        SpikeTally tally;
        for (std::size_t i = 0; i < drawn.size(); ++i) {
            const stg::CycleSpike& spike = *expected[i];
            const double height = std::fabs(drawn[i].base_y - drawn[i].apex_y);
            const double want = std::min(spike.amplitude * style.decade_px, usable);
            CAPTURE(i);
            CAPTURE(spike.component_id);
            CHECK(std::fabs(height - want) <= 0.011); // coordinates print at 2 decimals

            const bool flat_value = spike.absent || spike.amplitude == 0.0;
            CHECK(flat_value == (height == 0.0));
            CHECK(spike.absent == (drawn[i].cls.find("absent") != std::string::npos));
            if (spike.direction == stg::Direction::crest)
                CHECK(drawn[i].apex_y <= drawn[i].base_y);
            else
                CHECK(drawn[i].apex_y >= drawn[i].base_y);

            tally.absent = tally.absent || spike.absent;
            tally.zero = tally.zero || (!spike.absent && spike.amplitude == 0.0);
            tally.positive = tally.positive || spike.amplitude > 0.0;
        }
        return tally;
    };

    const SpikeTally fixture_tally = verify_spikes(svg, doc);
    CHECK(fixture_tally.zero);     // the fixture has true zeroes…
    CHECK(fixture_tally.positive); // …and real activity
    CHECK(svg.find("\"base absent\"") != std::string::npos); // absent period tails styled

    // Months with partial or missing rows render those components as absent:
    // flat at the baseline and styled distinguishably.
    metrics::MonthlyTable sparse;
    sparse.repo_slug = "acc/sparse";
    metrics::MonthlyRow march;
    march.bucket = {2021, 3};
    march.values["issues_created"] = 9.0;
    metrics::MonthlyRow april;
    april.bucket = {2021, 4};
    april.values["issues_closed"] = 2.0;
    sparse.rows = {march, april};

    const stg::StgDocument sparse_doc = stg::build_stg(sparse, {2021, 3}, {2021, 5});
    REQUIRE(!sparse_doc.lanes.empty());
    const stg::LaneDoc& issues_lane = sparse_doc.lanes.front();
    REQUIRE(issues_lane.strips.size() == 1);
    REQUIRE(issues_lane.strips[0].cycles.size() == 3);
    CHECK(!issues_lane.strips[0].cycles[0].spikes[0].absent); // March: created measured
    CHECK(issues_lane.strips[0].cycles[0].spikes[1].absent);  //   …but closed missing
    CHECK(issues_lane.strips[0].cycles[1].spikes[0].absent);  // April: the reverse
    CHECK(!issues_lane.strips[0].cycles[1].spikes[1].absent);
    for (const auto& spike : issues_lane.strips[0].cycles[2].spikes)
        CHECK(spike.absent); // May has no row at all

    const SpikeTally sparse_tally = verify_spikes(stg::render_svg(sparse_doc), sparse_doc);
    CHECK(sparse_tally.absent);
    CHECK(sparse_tally.positive);

    // Bigger counts draw taller spikes.
    const metrics::ComponentSpec& issues = spec_for("issues_created");
    std::mt19937 rng(61109);
    std::uniform_real_distribution<double> count_value(0.0, 1e6);
    for (int trial = 0; trial < 1000; ++trial) {
        double lo = count_value(rng);
        double hi = count_value(rng);
        if (lo == hi) continue;
        if (lo > hi) std::swap(lo, hi);
        CAPTURE(trial);
        CHECK(stg::amplitude_for(issues, lo) < stg::amplitude_for(issues, hi));
    }

    const auto single_month_svg = [&](double issues_created) {
        metrics::MonthlyTable tiny;
        tiny.repo_slug = "acc/mono";
        metrics::MonthlyRow row;
        row.bucket = {2021, 3};
        row.values["issues_created"] = issues_created;
        tiny.rows.push_back(row);
        return stg::render_svg(stg::build_stg(tiny, {2021, 3}, {2021, 3}));
    };
    CHECK(first_spike_height(single_month_svg(9.0)) < first_spike_height(single_month_svg(24.0)));
}

// ---------------------------------------------------------------------------
// 8. End-to-end pipeline.
// ---------------------------------------------------------------------------

TEST_CASE("the full pipeline runs end to end against a local API fixture") {
    ::unsetenv("REPOECG_TOKEN");

    testsupport::TempDir scratch("acc-e2e");
    const std::filesystem::path clone = scratch.path() / "clone";
    testsupport::fixture::make_repo(clone);

    testsupport::FixtureServer server; // serves fixture/alpha and fixture/beta

    const std::filesystem::path data_dir = scratch.path() / "data";
    const std::filesystem::path out_dir = scratch.path() / "out";
    std::filesystem::create_directories(data_dir);
    std::filesystem::create_directories(out_dir);

    const std::filesystem::path config_path = scratch.path() / "repoecg.toml";
    {
        std::ofstream config(config_path);
        config << "[core]\n"
               << "data_dir = " << data_dir.string() << "\n"
               << "out_dir = " << out_dir.string() << "\n"
               << "api_base_url = " << server.base_url() << "\n"
               << "parallel = 2\n\n"
               << "[words]\n"
               << "min_count = 1\n\n"
               << "[projects]\n"
               << "fixture/alpha = " << clone.string() << "\n"
               << "fixture/beta = " << clone.string() << "\n";
    }

    const std::string base = std::string(REPOECG_CLI_PATH) + " -c " +
                             testsupport::shell_quote(config_path.string()) + " ";
    const auto start = std::chrono::steady_clock::now();
    for (const char* step : {"mine", "metrics", "stg -w all", "compare", "words"}) {
        const testsupport::CommandResult run = testsupport::run_command(base + step);
        CAPTURE(step);
        CAPTURE(run.output);
        REQUIRE(run.exit_code == 0);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CAPTURE(seconds);
    CHECK(seconds < 60.0);

    for (const char* project : {"fixture__alpha", "fixture__beta"}) {
        CAPTURE(project);
        CHECK(std::filesystem::exists(data_dir / project / "raw" / "manifest.json"));
        CHECK(std::filesystem::exists(data_dir / project / "raw" / "commits.ndjson"));
        CHECK(std::filesystem::exists(data_dir / project / "monthly.csv"));
        CHECK(std::filesystem::exists(out_dir / project / "stg_all.svg"));
        CHECK(std::filesystem::exists(out_dir / project / "fighting_words.csv"));
        CHECK(std::filesystem::exists(out_dir / project / "fighting_words.svg"));
    }
    CHECK(std::filesystem::exists(out_dir / "comparison.csv"));
    CHECK(std::filesystem::exists(out_dir / "comparison.txt"));

    // The mined table served over HTTP matches the locally aggregated one.
    const metrics::MonthlyTable fetched =
        metrics::load_monthly_csv(data_dir / "fixture__alpha" / "monthly.csv");
    CHECK(fetched.repo_slug == "fixture/alpha");
    CHECK(metrics::monthly_csv(fetched) ==
          util::read_text_file(std::filesystem::path(REPOECG_TEST_DATA_DIR) /
                               "monthly_golden.csv"));
}
