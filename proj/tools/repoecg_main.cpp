#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repoecg/config.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/pipeline.hpp"

namespace {

std::optional<std::string> token_from(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv(repoecg::cli::kTokenEnvVar); env && *env)
        return std::string(env);
    return std::nullopt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"repoecg: mines GitHub repositories, aggregates monthly sustainability "
                 "metrics, renders ECG-style sustainability graphs, and compares projects"};
    app.require_subcommand(1);

    std::string config_path = repoecg::cli::kDefaultConfigPath;
    bool anonymize = false;
    bool quiet = false;
    app.add_option("-c,--config", config_path, "Config file (key = value sections)")
        ->capture_default_str();
    app.add_flag("--anonymize", anonymize, "Label projects P1..Pn (config order) in outputs");
    app.add_flag("-q,--quiet", quiet, "Suppress progress output");

    auto* mine = app.add_subcommand("mine", "Fetch issue/PR/comment/profile dumps and mine "
                                            "configured local clones");
    std::vector<std::string> mine_slugs;
    std::string token_flag;
    mine->add_option("projects", mine_slugs, "Project slugs; default: every configured project");
    mine->add_option("--token", token_flag, "API token (default: $REPOECG_TOKEN)");

    auto* metrics = app.add_subcommand("metrics", "Aggregate dumps into monthly.csv per project");
    std::vector<std::string> metrics_slugs;
    metrics->add_option("projects", metrics_slugs,
                        "Project slugs; default: every configured project");

    auto* stg = app.add_subcommand("stg", "Render sustainability graph SVGs from monthly.csv");
    std::vector<std::string> stg_slugs;
    std::vector<std::string> windows;
    stg->add_option("projects", stg_slugs, "Project slugs; default: every configured project");
    stg->add_option("-w,--window", windows,
                    "Trailing window: 12, 36, 60, 120, or all (repeatable; default: every "
                    "window)");

    auto* compare = app.add_subcommand("compare", "Pairwise Wilcoxon / Holm / Cliff's delta "
                                                  "comparison across projects");
    std::vector<std::string> compare_slugs;
    compare->add_option("projects", compare_slugs,
                        "Project slugs; default: every configured project");

    auto* words = app.add_subcommand("words", "Fighting-words analysis of pull-request comment "
                                              "usefulness");
    std::vector<std::string> words_slugs;
    words->add_option("projects", words_slugs, "Project slugs; default: every configured project");

    CLI11_PARSE(app, argc, argv);

    try {
        repoecg::cli::RunContext ctx;
        ctx.config = repoecg::cli::load_config(config_path);
        ctx.anonymize = anonymize;
        ctx.log = quiet ? nullptr : &std::cout;

        if (mine->parsed()) {
            ctx.slugs = mine_slugs;
            repoecg::cli::run_mine(ctx, token_from(token_flag));
        } else if (metrics->parsed()) {
            ctx.slugs = metrics_slugs;
            repoecg::cli::run_metrics(ctx);
        } else if (stg->parsed()) {
            ctx.slugs = stg_slugs;
            repoecg::cli::run_stg(ctx, windows);
        } else if (compare->parsed()) {
            ctx.slugs = compare_slugs;
            repoecg::cli::run_compare(ctx);
        } else if (words->parsed()) {
            ctx.slugs = words_slugs;
            // Explicitly named projects fail hard on a single-class corpus;
            // a run over the whole config skips them with a notice.
            repoecg::cli::run_words(ctx, words_slugs.empty());
        }
    } catch (const repoecg::Error& e) {
        std::cerr << "error (" << repoecg::errc_name(e.code()) << "): " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
