#include "repoecg/metricize.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

#include "repoecg/errors.hpp"

namespace repoecg::metrics {

std::optional<double> MonthlyRow::get(std::string_view component_id) const {
    auto it = values.find(std::string(component_id));
    if (it == values.end()) return std::nullopt;
    return it->second;
}

namespace {

// Label matching ignores case and separators: "Good First Issue",
// "#good-first-issue" and "good_first_issue" all collapse to one key.
std::string normalize_label(std::string_view label) {
    std::string out;
    for (char c : label) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) out += static_cast<char>(std::tolower(u));
    }
    return out;
}

// Drops identical duplicates; a key appearing twice with different fields is
// a hard error (the dump is corrupt, not merely redundant).
template <typename Record, typename KeyFn, typename JsonFn>
std::vector<Record> dedup_records(const std::vector<Record>& records, KeyFn key_of,
                                  JsonFn json_of, std::string_view what) {
    std::vector<Record> out;
    std::map<std::string, std::string> seen;
    for (const auto& r : records) {
        std::string key = key_of(r);
        std::string line = json_of(r);
        auto [it, inserted] = seen.emplace(key, line);
        if (inserted) {
            out.push_back(r);
            continue;
        }
        if (it->second != line)
            fail(Errc::runtime,
                 std::string(what) + " " + key + " appears twice with conflicting fields");
    }
    return out;
}

struct MonthAcc {
    long issues_created = 0, issues_closed = 0;
    long prs_created = 0, prs_closed = 0, prs_merged = 0;
    long conv_comments = 0, review_comments = 0;
    long commits_total = 0;
    std::set<std::string> issue_reporters, pr_creators, commit_authors;
    long issue_labels_total = 0, pr_labels_total = 0;
    long issue_labels_new = 0, pr_labels_new = 0;
    long newcomer_issues = 0, deduplicated_issues = 0;
    long reactions_issues = 0, reactions_conv = 0, reactions_review = 0;
    long parent_commits = 0;
    std::vector<double> issue_closure, pr_closure, issue_resp, pr_resp;
    std::vector<double> dmm_size, dmm_complexity, dmm_interfacing;
    std::vector<const CommentRecord*> conv_list, review_list;
    std::vector<double> issue_comment_read, pr_comment_read, issue_body_read, pr_body_read;
    std::map<std::string, long> affiliation, assoc_issues, assoc_prs, type_issues, type_prs;
    std::vector<const UserProfile*> issue_creator_profiles, pr_creator_profiles;
};

// Scored text aggregates for one month; `ok` is false when the scorer failed
// and the month's text-derived values must stay absent.
struct TextAgg {
    bool ok = false;
    long conv_useful = 0, conv_toxic = 0;
    long review_useful = 0, review_toxic = 0;
    std::vector<double> conv_sentiment, review_sentiment;
};

} // namespace

double closure_duration(std::int64_t created_at, std::int64_t closed_at, long* clamp_warnings) {
    double seconds = static_cast<double>(closed_at - created_at);
    if (seconds < 0) {
        if (clamp_warnings) ++*clamp_warnings;
        return 0.0;
    }
    return seconds;
}

std::optional<double> response_time(const IssueRecord& parent,
                                    const std::vector<const CommentRecord*>& comments) {
    for (const CommentRecord* c : comments) {
        if (c->author_login == parent.author_login) continue;
        double seconds = static_cast<double>(c->created_at - parent.created_at);
        return seconds < 0 ? 0.0 : seconds;
    }
    return std::nullopt;
}

MonthlyTable aggregate_monthly(const ingest::Dump& dump, const std::vector<CommitRecord>& commits,
                               const AggregateOptions& options) {
    MonthlyTable table;
    table.repo_slug = dump.manifest.repo_slug;

    auto issues = dedup_records(
        dump.issues, [](const IssueRecord& r) { return "issue " + std::to_string(r.number); },
        ingest::issue_to_json_line, "record");
    auto pulls = dedup_records(
        dump.pulls, [](const PullRecord& r) { return "pull " + std::to_string(r.number); },
        ingest::pull_to_json_line, "record");
    auto comments = dedup_records(
        dump.comments,
        [](const CommentRecord& c) {
            return std::string(c.parent_kind == ParentKind::review ? "review comment "
                                                                   : "comment ") +
                   std::to_string(c.comment_id);
        },
        ingest::comment_to_json_line, "record");
    auto profiles = dedup_records(
        dump.profiles, [](const UserProfile& p) { return "profile " + p.login; },
        ingest::profile_to_json_line, "record");
    auto commit_records = dedup_records(
        commits, [](const CommitRecord& c) { return "commit " + c.sha; },
        ingest::commit_to_json_line, "record");

    std::map<std::string, const UserProfile*> profile_by_login;
    for (const auto& p : profiles) profile_by_login[p.login] = &p;

    // Covered month span: first to last event, gapless.
    std::optional<int> lo, hi;
    auto touch = [&](std::int64_t t) {
        int ord = util::month_ordinal(util::month_of(t));
        lo = lo ? std::min(*lo, ord) : ord;
        hi = hi ? std::max(*hi, ord) : ord;
    };
    for (const auto& r : issues) {
        touch(r.created_at);
        if (r.closed_at) touch(*r.closed_at);
    }
    for (const auto& r : pulls) {
        touch(r.created_at);
        if (r.closed_at) touch(*r.closed_at);
        if (r.merged_at) touch(*r.merged_at);
    }
    for (const auto& c : comments) touch(c.created_at);
    for (const auto& c : commit_records) touch(c.authored_at);
    if (!lo) return table; // no events, no rows

    const int base = *lo;
    const std::size_t n = static_cast<std::size_t>(*hi - base + 1);
    auto idx_of = [&](std::int64_t t) {
        return static_cast<std::size_t>(util::month_ordinal(util::month_of(t)) - base);
    };
    std::vector<MonthAcc> acc(n);

    // Comments grouped under their parent artifact for response times. Both
    // conversation and review comments answer a pull request.
    std::map<std::pair<bool, long>, std::vector<const CommentRecord*>> by_parent;
    for (const auto& c : comments) {
        bool pull_parent = c.parent_kind != ParentKind::issue;
        by_parent[{pull_parent, c.parent_number}].push_back(&c);
    }
    for (auto& [key, list] : by_parent) {
        std::sort(list.begin(), list.end(), [](const CommentRecord* a, const CommentRecord* b) {
            return std::tie(a->created_at, a->comment_id) < std::tie(b->created_at, b->comment_id);
        });
    }

    // A label is "new" in the earliest month an artifact created with it
    // appears; issue and PR labels are separate namespaces.
    std::map<std::string, int> issue_label_first, pr_label_first;
    auto note_first_use = [&](const std::vector<std::string>& labels, std::int64_t created_at,
                              std::map<std::string, int>& first) {
        int ord = util::month_ordinal(util::month_of(created_at));
        for (const auto& label : labels) {
            std::string norm = normalize_label(label);
            if (norm.empty()) continue;
            auto [it, inserted] = first.emplace(norm, ord);
            if (!inserted) it->second = std::min(it->second, ord);
        }
    };
    for (const auto& r : issues) note_first_use(r.labels, r.created_at, issue_label_first);
    for (const auto& r : pulls) note_first_use(r.labels, r.created_at, pr_label_first);
    for (const auto& [label, ord] : issue_label_first) acc[ord - base].issue_labels_new += 1;
    for (const auto& [label, ord] : pr_label_first) acc[ord - base].pr_labels_new += 1;

    for (const auto& r : issues) {
        MonthAcc& m = acc[idx_of(r.created_at)];
        m.issues_created += 1;
        m.issue_reporters.insert(r.author_login);
        m.reactions_issues += r.total_reactions();
        bool newcomer = false, duplicate = false;
        for (const auto& label : r.labels) {
            std::string norm = normalize_label(label);
            if (norm.empty()) continue;
            m.issue_labels_total += 1;
            newcomer = newcomer || norm == "goodfirstissue" || norm == "helpwanted";
            duplicate = duplicate || norm == "duplicate";
        }
        if (newcomer) m.newcomer_issues += 1;
        if (duplicate) m.deduplicated_issues += 1;
        m.assoc_issues[to_string(r.author_association)] += 1;
        if (auto it = profile_by_login.find(r.author_login); it != profile_by_login.end()) {
            m.type_issues[to_string(it->second->account_type)] += 1;
            m.issue_creator_profiles.push_back(it->second);
        }
        if (auto readability = enrich::flesch_reading_ease(r.body))
            m.issue_body_read.push_back(*readability);
        if (r.closed_at) {
            MonthAcc& closed_month = acc[idx_of(*r.closed_at)];
            closed_month.issues_closed += 1;
            closed_month.issue_closure.push_back(
                closure_duration(r.created_at, *r.closed_at, &table.warnings));
        }
        if (auto it = by_parent.find({false, r.number}); it != by_parent.end()) {
            if (auto rt = response_time(r, it->second)) m.issue_resp.push_back(*rt);
        }
    }

    for (const auto& r : pulls) {
        MonthAcc& m = acc[idx_of(r.created_at)];
        m.prs_created += 1;
        m.pr_creators.insert(r.author_login);
        for (const auto& label : r.labels) {
            if (!normalize_label(label).empty()) m.pr_labels_total += 1;
        }
        m.assoc_prs[to_string(r.author_association)] += 1;
        if (auto it = profile_by_login.find(r.author_login); it != profile_by_login.end()) {
            m.type_prs[to_string(it->second->account_type)] += 1;
            m.pr_creator_profiles.push_back(it->second);
        }
        if (auto readability = enrich::flesch_reading_ease(r.body))
            m.pr_body_read.push_back(*readability);
        if (r.closed_at) {
            MonthAcc& closed_month = acc[idx_of(*r.closed_at)];
            closed_month.prs_closed += 1;
            closed_month.pr_closure.push_back(
                closure_duration(r.created_at, *r.closed_at, &table.warnings));
        }
        if (r.merged_at) acc[idx_of(*r.merged_at)].prs_merged += 1;
        if (auto it = by_parent.find({true, r.number}); it != by_parent.end()) {
            if (auto rt = response_time(r, it->second)) m.pr_resp.push_back(*rt);
        }
    }

    for (const auto& c : comments) {
        MonthAcc& m = acc[idx_of(c.created_at)];
        if (c.parent_kind == ParentKind::review) {
            m.review_comments += 1;
            m.reactions_review += c.total_reactions();
            m.review_list.push_back(&c);
        } else {
            m.conv_comments += 1;
            m.reactions_conv += c.total_reactions();
            m.conv_list.push_back(&c);
        }
        if (auto readability = enrich::flesch_reading_ease(c.body)) {
            if (c.parent_kind == ParentKind::issue)
                m.issue_comment_read.push_back(*readability);
            else
                m.pr_comment_read.push_back(*readability);
        }
    }

    for (const auto& c : commit_records) {
        MonthAcc& m = acc[idx_of(c.authored_at)];
        m.commits_total += 1;
        m.commit_authors.insert(commit_author_key(c));
        m.parent_commits += std::max(c.parent_count - 1, 0);
        m.affiliation[enrich::affiliation_of(c.author_email)] += 1;
        if (c.dmm_unit_size) m.dmm_size.push_back(*c.dmm_unit_size);
        if (c.dmm_unit_complexity) m.dmm_complexity.push_back(*c.dmm_unit_complexity);
        if (c.dmm_unit_interfacing) m.dmm_interfacing.push_back(*c.dmm_unit_interfacing);
    }

    // Comment scoring, one scorer call per month: an external scorer crash
    // blanks that month's text-derived values and counts one warning.
    std::unique_ptr<enrich::TextScorer> bundled;
    enrich::TextScorer* scorer = options.scorer;
    if (!scorer) {
        bundled = enrich::make_lexicon_scorer();
        scorer = bundled.get();
    }
    std::vector<TextAgg> text(n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto& conv = acc[m].conv_list;
        const auto& review = acc[m].review_list;
        if (conv.empty() && review.empty()) continue;
        std::vector<std::pair<long, std::string>> items;
        items.reserve(conv.size() + review.size());
        long next_id = 0;
        for (const CommentRecord* c : conv) items.emplace_back(next_id++, c->body);
        for (const CommentRecord* c : review) items.emplace_back(next_id++, c->body);
        try {
            auto scores = scorer->score(items);
            if (scores.size() != items.size())
                fail(Errc::runtime, "scorer returned a result count mismatch");
            TextAgg& t = text[m];
            t.ok = true;
            for (std::size_t i = 0; i < conv.size(); ++i) {
                t.conv_useful += scores[i].useful ? 1 : 0;
                t.conv_toxic += scores[i].toxic ? 1 : 0;
                t.conv_sentiment.push_back(scores[i].sentiment);
            }
            for (std::size_t i = 0; i < review.size(); ++i) {
                const auto& s = scores[conv.size() + i];
                t.review_useful += s.useful ? 1 : 0;
                t.review_toxic += s.toxic ? 1 : 0;
                t.review_sentiment.push_back(s.sentiment);
            }
        } catch (const Error&) {
            table.warnings += 1;
        }
    }

    const enrich::GenderTable& gender_table =
        options.gender_table ? *options.gender_table : enrich::GenderTable::bundled();
    const enrich::CountryTable& country_table =
        options.country_table ? *options.country_table : enrich::CountryTable::bundled();

    table.rows.reserve(n);
    for (std::size_t m = 0; m < n; ++m) {
        const MonthAcc& a = acc[m];
        const TextAgg& t = text[m];
        util::YearMonth ym = util::month_from_ordinal(base + static_cast<int>(m));
        MonthlyRow row;
        row.bucket = {table.repo_slug, ym.year, ym.month};

        auto set = [&](const char* id, double value) { row.values[id] = value; };
        auto set_count = [&](const char* id, long value) { set(id, static_cast<double>(value)); };
        auto set_mean = [&](const char* id, const std::vector<double>& values) {
            if (!values.empty()) set(id, util::mean(values));
        };
        auto set_shannon = [&](const char* id, const std::map<std::string, long>& counts) {
            if (!counts.empty()) set(id, enrich::shannon_index(counts));
        };

        set_count(component::issues_created, a.issues_created);
        set_count(component::issues_closed, a.issues_closed);
        set_count(component::prs_created, a.prs_created);
        set_count(component::prs_closed, a.prs_closed);
        set_count(component::prs_merged, a.prs_merged);
        set_count(component::issue_comments, a.conv_comments);
        set_count(component::review_comments, a.review_comments);
        set_count(component::commits_total, a.commits_total);
        set_count(component::commit_authors, static_cast<long>(a.commit_authors.size()));
        set_count(component::issue_reporters, static_cast<long>(a.issue_reporters.size()));
        set_count(component::pr_creators, static_cast<long>(a.pr_creators.size()));
        set_count(component::issue_labels_new, a.issue_labels_new);
        set_count(component::issue_labels_total, a.issue_labels_total);
        set_count(component::pr_labels_new, a.pr_labels_new);
        set_count(component::pr_labels_total, a.pr_labels_total);
        set_count(component::newcomer_issues, a.newcomer_issues);
        set_count(component::deduplicated_issues, a.deduplicated_issues);
        set_count(component::reactions_issues, a.reactions_issues);
        set_count(component::reactions_issue_comments, a.reactions_conv);
        set_count(component::reactions_review_comments, a.reactions_review);
        set_count(component::parent_commits, a.parent_commits);

        set_mean(component::issue_closure_duration, a.issue_closure);
        set_mean(component::pr_closure_duration, a.pr_closure);
        set_mean(component::issue_response_time, a.issue_resp);
        set_mean(component::pr_response_time, a.pr_resp);
        set_mean(component::dmm_unit_size, a.dmm_size);
        set_mean(component::dmm_unit_complexity, a.dmm_complexity);
        set_mean(component::dmm_unit_interfacing, a.dmm_interfacing);

        if (t.ok) {
            if (a.conv_comments > 0) {
                double total = static_cast<double>(a.conv_comments);
                set(component::useful_issue_comment_ratio, static_cast<double>(t.conv_useful) / total);
                set(component::toxic_issue_comment_ratio, static_cast<double>(t.conv_toxic) / total);
                set(component::issue_comment_sentiment_median, util::median(t.conv_sentiment));
            }
            if (a.review_comments > 0) {
                double total = static_cast<double>(a.review_comments);
                set(component::useful_review_comment_ratio,
                    static_cast<double>(t.review_useful) / total);
                set(component::toxic_review_comment_ratio,
                    static_cast<double>(t.review_toxic) / total);
                set(component::review_comment_sentiment_median, util::median(t.review_sentiment));
            }
        }

        set_mean(component::issue_comment_readability, a.issue_comment_read);
        set_mean(component::issue_body_readability, a.issue_body_read);
        set_mean(component::pr_comment_readability, a.pr_comment_read);
        set_mean(component::pr_body_readability, a.pr_body_read);

        set_shannon(component::affiliation_heterogeneity_commits, a.affiliation);
        set_shannon(component::association_heterogeneity_issues, a.assoc_issues);
        set_shannon(component::association_heterogeneity_prs, a.assoc_prs);
        set_shannon(component::user_type_variation_issues, a.type_issues);
        set_shannon(component::user_type_variation_prs, a.type_prs);

        if (auto ratio = enrich::gender_ratio(a.issue_creator_profiles, gender_table))
            set(component::gender_ratio_issues, options.gender_ratio_male ? 1.0 - *ratio : *ratio);
        if (auto ratio = enrich::gender_ratio(a.pr_creator_profiles, gender_table))
            set(component::gender_ratio_prs, options.gender_ratio_male ? 1.0 - *ratio : *ratio);
        set_count(component::location_coverage_issues,
                  enrich::location_coverage(a.issue_creator_profiles, country_table));
        set_count(component::location_coverage_prs,
                  enrich::location_coverage(a.pr_creator_profiles, country_table));

        if (a.issues_created > 0)
            set(component::closed_open_issue_ratio,
                static_cast<double>(a.issues_closed) / static_cast<double>(a.issues_created));

        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---- CSV --------------------------------------------------------------------

std::string monthly_csv(const MonthlyTable& table) {
    std::string out = "repo,month";
    for (const auto& spec : component_registry()) {
        out += ',';
        out += spec.id;
    }
    out += '\n';
    for (const auto& row : table.rows) {
        out += row.bucket.repo_slug;
        out += ',';
        out += util::month_label({row.bucket.year, row.bucket.month});
        for (const auto& spec : component_registry()) {
            out += ',';
            if (auto value = row.get(spec.id)) out += util::format_number(*value);
        }
        out += '\n';
    }
    return out;
}

void write_monthly_csv(const std::filesystem::path& path, const MonthlyTable& table) {
    util::write_text_file_atomic(path, monthly_csv(table));
}

MonthlyTable load_monthly_csv(const std::filesystem::path& path) {
    std::string text = util::read_text_file(path);
    auto lines = util::split(text, '\n');
    while (!lines.empty() && util::trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) fail(Errc::schema_mismatch, path.string() + ": empty metrics file");

    const auto& registry = component_registry();
    auto header = util::split(lines.front(), ',');
    if (header.size() != registry.size() + 2 || header[0] != "repo" || header[1] != "month")
        fail(Errc::schema_mismatch, path.string() + ": unexpected metrics header");
    for (std::size_t i = 0; i < registry.size(); ++i) {
        if (header[i + 2] != registry[i].id)
            fail(Errc::schema_mismatch,
                 path.string() + ": unknown or misplaced column '" + header[i + 2] + "'");
    }

    MonthlyTable table;
    std::optional<int> prev_ordinal;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto cells = util::split(lines[li], ',');
        if (cells.size() != registry.size() + 2)
            fail(Errc::schema_mismatch,
                 path.string() + ": row " + std::to_string(li + 1) + " has wrong cell count");
        auto ym = util::parse_month_label(cells[1]);
        if (!ym)
            fail(Errc::schema_mismatch, path.string() + ": bad month label '" + cells[1] + "'");
        if (table.rows.empty())
            table.repo_slug = cells[0];
        else if (cells[0] != table.repo_slug)
            fail(Errc::schema_mismatch, path.string() + ": mixed repository identifiers");
        int ordinal = util::month_ordinal(*ym);
        if (prev_ordinal && ordinal != *prev_ordinal + 1)
            fail(Errc::schema_mismatch, path.string() + ": months are not contiguous");
        prev_ordinal = ordinal;

        MonthlyRow row;
        row.bucket = {cells[0], ym->year, ym->month};
        for (std::size_t i = 0; i < registry.size(); ++i) {
            const std::string& cell = cells[i + 2];
            if (cell.empty()) continue;
            double value = 0.0;
            auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || end != cell.data() + cell.size())
                fail(Errc::schema_mismatch, path.string() + ": bad number '" + cell + "'");
            row.values[registry[i].id] = value;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace repoecg::metrics
