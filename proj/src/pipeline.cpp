#include "repoecg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include "repoecg/dump_io.hpp"
#include "repoecg/enrich.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/github_client.hpp"
#include "repoecg/gitmine.hpp"
#include "repoecg/metricize.hpp"
#include "repoecg/stats.hpp"
#include "repoecg/stg.hpp"
#include "repoecg/util.hpp"
#include "repoecg/wordscore.hpp"

namespace repoecg::cli {

namespace {

std::mutex g_log_mutex;

void note(const RunContext& ctx, const std::string& text) {
    if (!ctx.log) return;
    std::lock_guard<std::mutex> lock(g_log_mutex);
    *ctx.log << text << '\n';
}

std::vector<ProjectEntry> selected_projects(const RunContext& ctx) {
    if (ctx.config.projects.empty()) fail(Errc::config, "no projects configured");
    if (ctx.slugs.empty()) return ctx.config.projects;
    std::vector<ProjectEntry> out;
    for (const auto& slug : ctx.slugs) {
        auto it = std::find_if(ctx.config.projects.begin(), ctx.config.projects.end(),
                               [&](const ProjectEntry& p) { return p.slug == slug; });
        if (it == ctx.config.projects.end())
            fail(Errc::config, "project " + slug + " is not in the config");
        out.push_back(*it);
    }
    return out;
}

// Bounded worker pool over projects; rethrows the first failure in project
// order once every worker has finished.
void for_each_project(const RunContext& ctx, const std::vector<ProjectEntry>& projects,
                      const std::function<void(const ProjectEntry&)>& fn) {
    const int workers =
        std::max(1, std::min<int>(ctx.config.parallel, static_cast<int>(projects.size())));
    if (workers == 1) {
        for (const auto& project : projects) fn(project);
        return;
    }
    std::vector<std::exception_ptr> errors(projects.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= projects.size()) return;
                try {
                    fn(projects[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);
}

std::filesystem::path project_out_dir(const RunContext& ctx, const std::string& label) {
    std::string dir_name = label;
    if (auto slash = dir_name.find('/'); slash != std::string::npos)
        dir_name = dir_name.substr(0, slash) + "__" + dir_name.substr(slash + 1);
    return ctx.config.out_dir / dir_name;
}

metrics::MonthlyTable load_metrics_for(const RunContext& ctx, const std::string& slug) {
    const std::filesystem::path path =
        ingest::dump_dir(ctx.config.data_dir, slug) / "monthly.csv";
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        fail(Errc::missing_metrics, "no monthly metrics for " + slug + "; run `metrics` first");
    return metrics::load_monthly_csv(path);
}

} // namespace

std::string output_label(const RunContext& ctx, const std::string& slug) {
    if (!ctx.anonymize) return slug;
    for (std::size_t i = 0; i < ctx.config.projects.size(); ++i)
        if (ctx.config.projects[i].slug == slug) return "P" + std::to_string(i + 1);
    return slug;
}

void run_mine(const RunContext& ctx, const std::optional<std::string>& token) {
    const auto projects = selected_projects(ctx);
    for_each_project(ctx, projects, [&](const ProjectEntry& project) {
        ingest::FetchOptions options;
        options.api_base_url = ctx.config.api_base_url;
        options.auth_token = token;
        options.max_parallel = ctx.config.parallel;
        options.log = [&](const std::string& line) { note(ctx, project.slug + ": " + line); };

        const DumpManifest manifest =
            ingest::fetch_repo(project.slug, ingest::all_record_kinds(), options,
                               ctx.config.data_dir);
        long total = 0;
        for (const auto& [kind, count] : manifest.record_counts) total += count;
        note(ctx, project.slug + ": fetched " + std::to_string(total) + " records");

        if (project.clone_path) {
            const gitmine::MineResult mined =
                gitmine::mine_commits(*project.clone_path, std::nullopt, ctx.config.thresholds);
            ingest::write_commits(ctx.config.data_dir, project.slug, mined.commits);
            std::string line = project.slug + ": mined " + std::to_string(mined.commits.size()) +
                               " commits";
            if (mined.unreadable_objects > 0)
                line += " (" + std::to_string(mined.unreadable_objects) +
                        " unreadable objects skipped)";
            note(ctx, line);
        } else {
            note(ctx, project.slug + ": no clone path configured; commit metrics will be absent");
        }
    });
}

void run_metrics(const RunContext& ctx) {
    const auto projects = selected_projects(ctx);

    std::optional<enrich::GenderTable> gender_override;
    if (ctx.config.gender_table)
        gender_override = enrich::GenderTable::from_tsv(*ctx.config.gender_table);
    std::optional<enrich::CountryTable> country_override;
    if (ctx.config.country_table)
        country_override = enrich::CountryTable::from_tsv(*ctx.config.country_table);

    for_each_project(ctx, projects, [&](const ProjectEntry& project) {
        const ingest::Dump dump =
            ingest::load_dump(ingest::dump_dir(ctx.config.data_dir, project.slug));
        if (dump.malformed_lines > 0)
            note(ctx, project.slug + ": skipped " + std::to_string(dump.malformed_lines) +
                          " malformed dump lines");
        long malformed_commits = 0;
        const std::vector<CommitRecord> commits =
            ingest::load_commits(ctx.config.data_dir, project.slug, &malformed_commits);
        if (malformed_commits > 0)
            note(ctx, project.slug + ": skipped " + std::to_string(malformed_commits) +
                          " malformed commit lines");

        metrics::AggregateOptions options;
        std::unique_ptr<enrich::TextScorer> scorer;
        if (ctx.config.scorer.rfind("external:", 0) == 0) {
            scorer = enrich::make_external_scorer(ctx.config.scorer.substr(9));
            options.scorer = scorer.get();
        }
        options.gender_table = gender_override ? &*gender_override : nullptr;
        options.country_table = country_override ? &*country_override : nullptr;
        options.gender_ratio_male = ctx.config.gender_ratio == "male";

        const metrics::MonthlyTable table = metrics::aggregate_monthly(dump, commits, options);
        const std::filesystem::path path =
            ingest::dump_dir(ctx.config.data_dir, project.slug) / "monthly.csv";
        metrics::write_monthly_csv(path, table);

        std::string line = project.slug + ": " + std::to_string(table.rows.size()) + " months";
        if (table.warnings > 0) line += ", " + std::to_string(table.warnings) + " warnings";
        note(ctx, line);
    });
}

void run_stg(const RunContext& ctx, const std::vector<std::string>& windows) {
    static const std::vector<std::string> kAllWindows = {"12", "36", "60", "120", "all"};
    const std::vector<std::string>& wanted = windows.empty() ? kAllWindows : windows;
    for (const auto& window : wanted)
        if (window != "all" && window != "12" && window != "36" && window != "60" &&
            window != "120")
            fail(Errc::config, "unknown window '" + window + "'; use 12, 36, 60, 120, or all");

    const auto projects = selected_projects(ctx);
    for_each_project(ctx, projects, [&](const ProjectEntry& project) {
        const metrics::MonthlyTable table = load_metrics_for(ctx, project.slug);
        if (table.rows.empty())
            fail(Errc::missing_metrics,
                 "metrics for " + project.slug + " cover no months; nothing to draw");

        const util::YearMonth history_first{table.rows.front().bucket.year,
                                            table.rows.front().bucket.month};
        const util::YearMonth last{table.rows.back().bucket.year, table.rows.back().bucket.month};
        const int span = util::month_ordinal(last) - util::month_ordinal(history_first) + 1;
        const std::string label = output_label(ctx, project.slug);

        for (const auto& window : wanted) {
            util::YearMonth first = history_first;
            if (window != "all") {
                const int n = std::stoi(window);
                if (n >= span) {
                    if (n > span)
                        note(ctx, project.slug + ": window " + window + " exceeds the " +
                                      std::to_string(span) + "-month history; using full history");
                } else {
                    first = util::month_from_ordinal(util::month_ordinal(last) - n + 1);
                }
            }
            stg::StgDocument doc = stg::build_stg(table, first, last);
            doc.repo_slug = label;
            const std::filesystem::path path =
                stg::stg_output_path(ctx.config.out_dir, label, window);
            std::filesystem::create_directories(path.parent_path());
            util::write_text_file_atomic(path, stg::render_svg(doc, ctx.config.style));
            note(ctx, project.slug + ": wrote " + path.string());
        }
    });
}

void run_compare(const RunContext& ctx) {
    const auto projects = selected_projects(ctx);
    if (projects.size() < 2)
        fail(Errc::insufficient_projects, "comparison requires at least two projects");

    std::vector<stats::ComponentMeanVector> vectors;
    vectors.reserve(projects.size());
    for (const auto& project : projects) {
        stats::ComponentMeanVector vec = stats::component_means(load_metrics_for(ctx, project.slug));
        vec.repo_slug = output_label(ctx, project.slug);
        vectors.push_back(std::move(vec));
    }

    const stats::ComparisonMatrix matrix = stats::compare_projects(vectors);
    std::filesystem::create_directories(ctx.config.out_dir);
    util::write_text_file_atomic(ctx.config.out_dir / "comparison.csv",
                                 stats::comparison_csv(matrix));
    const std::string table = stats::comparison_table(matrix);
    util::write_text_file_atomic(ctx.config.out_dir / "comparison.txt", table);
    note(ctx, table);
}

void run_words(const RunContext& ctx, bool skip_single_class) {
    const auto projects = selected_projects(ctx);
    for_each_project(ctx, projects, [&](const ProjectEntry& project) {
        const ingest::Dump dump =
            ingest::load_dump(ingest::dump_dir(ctx.config.data_dir, project.slug));

        // Pull-request comments (conversation and review) scored for usefulness.
        std::vector<const CommentRecord*> pr_comments;
        for (const auto& comment : dump.comments)
            if (comment.parent_kind != ParentKind::issue) pr_comments.push_back(&comment);

        std::unique_ptr<enrich::TextScorer> scorer;
        if (ctx.config.scorer.rfind("external:", 0) == 0)
            scorer = enrich::make_external_scorer(ctx.config.scorer.substr(9));
        else
            scorer = enrich::make_lexicon_scorer();

        std::vector<std::pair<long, std::string>> items;
        items.reserve(pr_comments.size());
        for (const auto* comment : pr_comments)
            items.emplace_back(comment->comment_id, comment->body);
        const std::vector<enrich::TextScore> scores = scorer->score(items);

        std::vector<std::string> useful_texts;
        std::vector<std::string> not_useful_texts;
        long dropped_empty = 0;
        for (std::size_t i = 0; i < pr_comments.size(); ++i) {
            std::string cleaned = words::clean_text(pr_comments[i]->body);
            if (cleaned.empty()) {
                ++dropped_empty;
                continue;
            }
            (scores[i].useful ? useful_texts : not_useful_texts).push_back(std::move(cleaned));
        }
        if (dropped_empty > 0)
            note(ctx, project.slug + ": dropped " + std::to_string(dropped_empty) +
                          " utterances empty after cleaning");

        const std::string label = output_label(ctx, project.slug);
        std::vector<words::TokenZScore> result;
        try {
            result = words::fighting_words(useful_texts, not_useful_texts, ctx.config.words);
        } catch (const Error& e) {
            if (e.code() == Errc::single_class_corpus && skip_single_class) {
                note(ctx, project.slug + ": single-class corpus; skipped");
                return;
            }
            throw;
        }

        const std::filesystem::path dir = project_out_dir(ctx, label);
        std::filesystem::create_directories(dir);
        util::write_text_file_atomic(dir / "fighting_words.csv",
                                     words::fighting_words_csv(result));
        util::write_text_file_atomic(dir / "fighting_words.svg",
                                     words::scatter_svg(result, label));
        note(ctx, project.slug + ": " + std::to_string(result.size()) + " scored tokens");
    });
}

} // namespace repoecg::cli
