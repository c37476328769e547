#include "repoecg/github_client.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/util.hpp"

using nlohmann::json;

namespace repoecg::ingest {

const char* to_string(RecordKind k) {
    switch (k) {
        case RecordKind::issue: return "issue";
        case RecordKind::pull: return "pull";
        case RecordKind::comment: return "comment";
        case RecordKind::profile: return "profile";
    }
    return "issue";
}

std::set<RecordKind> all_record_kinds() {
    return {RecordKind::issue, RecordKind::pull, RecordKind::comment, RecordKind::profile};
}

namespace {

struct Session {
    const FetchOptions& opt;
    std::optional<std::string> token;

    explicit Session(const FetchOptions& options) : opt(options), token(options.auth_token) {
        if (!token) {
            if (const char* env = std::getenv("REPOECG_TOKEN"); env && *env) token = env;
        }
    }

    void log(const std::string& msg) const {
        if (opt.log) opt.log(msg);
    }
};

httplib::Headers request_headers(const Session& s) {
    httplib::Headers h = {
        {"User-Agent", "repoecg/0.1"},
        {"Accept", "application/vnd.github+json"},
    };
    if (s.token) h.emplace("Authorization", "token " + *s.token);
    return h;
}

bool looks_rate_limited(const httplib::Response& res) {
    if (res.status == 429) return true;
    if (res.status != 403) return false;
    return res.get_header_value("X-RateLimit-Remaining") == "0" ||
           res.has_header("Retry-After");
}

long rate_limit_wait_seconds(const httplib::Response& res) {
    if (res.has_header("Retry-After")) {
        return std::max(0L, std::atol(res.get_header_value("Retry-After").c_str()));
    }
    if (res.has_header("X-RateLimit-Reset")) {
        long long reset = std::atoll(res.get_header_value("X-RateLimit-Reset").c_str());
        return std::max(0LL, reset - static_cast<long long>(std::time(nullptr)));
    }
    return 1;
}

// One GET with auth, honoring rate limits (sleep until the advertised reset,
// at most opt.rate_limit_retries times). 404 is returned to the caller as an
// empty optional when `missing_ok`, otherwise it throws.
std::optional<httplib::Result> api_get(const Session& s, const std::string& target, bool missing_ok) {
    for (int attempt = 0;; ++attempt) {
        httplib::Client client(s.opt.api_base_url);
        client.set_connection_timeout(15, 0);
        client.set_read_timeout(60, 0);
        client.set_follow_location(true);

        auto res = client.Get(target, request_headers(s));
        if (!res) {
            fail(Errc::runtime, "network error fetching " + s.opt.api_base_url + target + ": " +
                                    httplib::to_string(res.error()));
        }
        if (res->status == 200) return res;
        if (res->status == 401) {
            fail(Errc::auth_failure, "authentication failed (HTTP 401) for " + target +
                                         "; check the token in $" + "REPOECG_TOKEN");
        }
        if (looks_rate_limited(*res)) {
            if (attempt >= s.opt.rate_limit_retries) {
                fail(Errc::rate_limited,
                     "rate limit still exhausted after " +
                         std::to_string(s.opt.rate_limit_retries) + " retries on " + target);
            }
            long wait = rate_limit_wait_seconds(*res);
            s.log("rate limited; sleeping " + std::to_string(wait) + "s before retrying " + target);
            std::this_thread::sleep_for(std::chrono::seconds(wait));
            continue;
        }
        if (res->status == 403) {
            fail(Errc::auth_failure, "access forbidden (HTTP 403) for " + target);
        }
        if (res->status == 404) {
            if (missing_ok) return std::nullopt;
            fail(Errc::not_found, "not found (HTTP 404): " + target);
        }
        fail(Errc::runtime, "unexpected HTTP " + std::to_string(res->status) + " for " + target);
    }
}

json parse_body(const httplib::Response& res, const std::string& target) {
    try {
        return json::parse(res.body);
    } catch (const json::exception& e) {
        fail(Errc::runtime, "unparseable API response from " + target + ": " + e.what());
    }
}

// Link: <https://…&page=2>; rel="next", <https://…&page=9>; rel="last"
std::optional<int> last_page_from_link(const std::string& link) {
    auto pos = link.find("rel=\"last\"");
    if (pos == std::string::npos) return std::nullopt;
    auto close = link.rfind('>', pos);
    if (close == std::string::npos) return std::nullopt;
    auto open = link.rfind('<', close);
    if (open == std::string::npos) return std::nullopt;
    std::string url = link.substr(open + 1, close - open - 1);
    auto page_pos = url.rfind("page=");
    if (page_pos == std::string::npos) return std::nullopt;
    // make sure this is "page=", not "per_page="
    while (page_pos > 0 && url[page_pos - 1] == '_') {
        page_pos = url.rfind("page=", page_pos - 2);
        if (page_pos == std::string::npos) return std::nullopt;
    }
    int page = std::atoi(url.c_str() + page_pos + 5);
    if (page <= 0) return std::nullopt;
    return page;
}

std::string with_page(const std::string& base_target, int page) {
    return base_target + "&page=" + std::to_string(page);
}

// Fetches every page of a list endpoint. Page 1 is fetched first to learn the
// page count; remaining pages run on up to opt.max_parallel workers. Items are
// concatenated in page order, so the result is deterministic.
std::vector<json> fetch_paged(const Session& s, const std::string& base_target) {
    std::vector<json> items;
    auto first = api_get(s, with_page(base_target, 1), false);
    json page1 = parse_body(first->value(), base_target);
    if (!page1.is_array()) fail(Errc::runtime, "expected a JSON array from " + base_target);
    for (auto& item : page1) items.push_back(std::move(item));

    std::optional<int> last = last_page_from_link((*first)->get_header_value("Link"));
    if (!last || *last <= 1) return items;

    const int page_count = *last;
    std::vector<std::vector<json>> pages(static_cast<std::size_t>(page_count) + 1);
    std::atomic<int> next_page{2};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        while (true) {
            int page = next_page.fetch_add(1);
            if (page > page_count) return;
            {
                std::scoped_lock lock(error_mutex);
                if (first_error) return;
            }
            try {
                auto res = api_get(s, with_page(base_target, page), false);
                json body = parse_body(res->value(), base_target);
                if (!body.is_array()) fail(Errc::runtime, "expected a JSON array from " + base_target);
                auto& slot = pages[static_cast<std::size_t>(page)];
                for (auto& item : body) slot.push_back(std::move(item));
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    int n_workers = std::min(s.opt.max_parallel, page_count - 1);
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);

    for (int page = 2; page <= page_count; ++page)
        for (auto& item : pages[static_cast<std::size_t>(page)]) items.push_back(std::move(item));
    return items;
}

std::string str_or_empty(const json& j, const char* key) {
    if (j.contains(key) && j[key].is_string()) return j[key].get<std::string>();
    return {};
}

std::optional<std::int64_t> time_or_none(const json& j, const char* key) {
    if (j.contains(key) && j[key].is_string()) return util::parse_time_utc(j[key].get<std::string>());
    return std::nullopt;
}

std::map<std::string, long> reactions_from_item(const json& item) {
    std::map<std::string, long> counts;
    if (!item.contains("reactions") || !item["reactions"].is_object()) return counts;
    for (auto it = item["reactions"].begin(); it != item["reactions"].end(); ++it) {
        if (it.key() == "url" || it.key() == "total_count") continue;
        if (it.value().is_number_integer()) {
            long n = it.value().get<long>();
            if (n > 0) counts[it.key()] = n;
        }
    }
    return counts;
}

std::vector<std::string> labels_from_item(const json& item) {
    std::vector<std::string> labels;
    if (!item.contains("labels") || !item["labels"].is_array()) return labels;
    for (const auto& l : item["labels"]) {
        if (l.is_string()) {
            labels.push_back(l.get<std::string>());
        } else if (l.is_object() && l.contains("name") && l["name"].is_string()) {
            labels.push_back(l["name"].get<std::string>());
        }
    }
    return labels;
}

std::string author_login_from(const json& item) {
    if (item.contains("user") && item["user"].is_object()) return str_or_empty(item["user"], "login");
    return {};
}

long trailing_number(const std::string& url) {
    auto pos = url.find_last_of('/');
    if (pos == std::string::npos) return 0;
    return std::atol(url.c_str() + pos + 1);
}

void fill_common(const json& item, std::string_view slug, IssueRecord& r) {
    r.repo_slug = std::string(slug);
    r.number = item.at("number").get<long>();
    r.title = str_or_empty(item, "title");
    r.body = str_or_empty(item, "body");
    r.author_login = author_login_from(item);
    r.author_association = author_association_from(str_or_empty(item, "author_association"));
    r.created_at = util::parse_time_utc(item.at("created_at").get<std::string>());
    r.closed_at = time_or_none(item, "closed_at");
    r.labels = labels_from_item(item);
    r.reaction_counts = reactions_from_item(item);
}

} // namespace

DumpManifest fetch_repo(std::string_view slug, const std::set<RecordKind>& kinds,
                        const FetchOptions& options, const std::filesystem::path& data_dir) {
    if (slug.find('/') == std::string_view::npos || slug.front() == '/' || slug.back() == '/') {
        fail(Errc::config, "malformed repository slug '" + std::string(slug) + "' (want owner/name)");
    }
    Session session(options);
    try {
    const std::string repo_path = "/repos/" + std::string(slug);
    const std::string per_page = "per_page=" + std::to_string(options.page_size);
    const auto dir = raw_dir(data_dir, slug);
    std::filesystem::create_directories(dir);

    Dump dump;
    dump.manifest.repo_slug = std::string(slug);
    dump.manifest.api_base_url = options.api_base_url;
    dump.manifest.schema_version = kSchemaVersion;

    std::set<long> pr_numbers;
    std::set<std::string> participant_logins;
    auto note_participant = [&](const std::string& login) {
        if (!login.empty()) participant_logins.insert(login);
    };

    if (kinds.count(RecordKind::issue)) {
        session.log("fetching issues for " + std::string(slug));
        auto items = fetch_paged(session, repo_path + "/issues?state=all&" + per_page);
        for (const auto& item : items) {
            if (item.contains("pull_request")) {
                // The issues endpoint interleaves PRs; they are fetched (with
                // merge data) from the pulls endpoint instead.
                pr_numbers.insert(item.at("number").get<long>());
                continue;
            }
            IssueRecord r;
            fill_common(item, slug, r);
            r.is_pull = false;
            note_participant(r.author_login);
            dump.issues.push_back(std::move(r));
        }
    }

    if (kinds.count(RecordKind::pull)) {
        session.log("fetching pull requests for " + std::string(slug));
        auto items = fetch_paged(session, repo_path + "/pulls?state=all&" + per_page);
        for (const auto& item : items) {
            PullRecord r;
            fill_common(item, slug, r);
            r.is_pull = true;
            r.merged_at = time_or_none(item, "merged_at");
            pr_numbers.insert(r.number);
            note_participant(r.author_login);
            dump.pulls.push_back(std::move(r));
        }
    }

    if (kinds.count(RecordKind::comment)) {
        session.log("fetching comments for " + std::string(slug));
        auto conversation = fetch_paged(session, repo_path + "/issues/comments?" + per_page);
        for (const auto& item : conversation) {
            CommentRecord r;
            r.repo_slug = std::string(slug);
            r.comment_id = item.at("id").get<long>();
            r.author_login = author_login_from(item);
            r.author_association = author_association_from(str_or_empty(item, "author_association"));
            r.created_at = util::parse_time_utc(item.at("created_at").get<std::string>());
            r.body = str_or_empty(item, "body");
            r.reaction_counts = reactions_from_item(item);
            r.parent_number = trailing_number(str_or_empty(item, "issue_url"));
            r.parent_kind = pr_numbers.count(r.parent_number) ? ParentKind::pull : ParentKind::issue;
            note_participant(r.author_login);
            dump.comments.push_back(std::move(r));
        }
        auto review = fetch_paged(session, repo_path + "/pulls/comments?" + per_page);
        for (const auto& item : review) {
            CommentRecord r;
            r.repo_slug = std::string(slug);
            r.comment_id = item.at("id").get<long>();
            r.author_login = author_login_from(item);
            r.author_association = author_association_from(str_or_empty(item, "author_association"));
            r.created_at = util::parse_time_utc(item.at("created_at").get<std::string>());
            r.body = str_or_empty(item, "body");
            r.reaction_counts = reactions_from_item(item);
            r.parent_number = trailing_number(str_or_empty(item, "pull_request_url"));
            r.parent_kind = ParentKind::review;
            note_participant(r.author_login);
            dump.comments.push_back(std::move(r));
        }
    }

    if (kinds.count(RecordKind::profile)) {
        session.log("fetching " + std::to_string(participant_logins.size()) + " profiles for " +
                    std::string(slug));
        std::vector<std::string> logins(participant_logins.begin(), participant_logins.end());
        std::vector<std::optional<UserProfile>> slots(logins.size());
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;

        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= logins.size()) return;
                {
                    std::scoped_lock lock(error_mutex);
                    if (first_error) return;
                }
                try {
                    auto res = api_get(session, "/users/" + logins[i], /*missing_ok=*/true);
                    if (!res) continue; // deleted account; skip
                    json item = parse_body(res->value(), "/users/" + logins[i]);
                    UserProfile p;
                    p.login = str_or_empty(item, "login");
                    if (p.login.empty()) p.login = logins[i];
                    if (item.contains("name") && item["name"].is_string())
                        p.display_name = item["name"].get<std::string>();
                    if (item.contains("location") && item["location"].is_string())
                        p.location_raw = item["location"].get<std::string>();
                    p.account_type = account_type_from(str_or_empty(item, "type"));
                    if (item.contains("company") && item["company"].is_string())
                        p.company = item["company"].get<std::string>();
                    slots[i] = std::move(p);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };

        int n_workers = std::max(1, std::min<int>(options.max_parallel,
                                                  static_cast<int>(logins.size())));
        std::vector<std::thread> threads;
        for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        if (first_error) std::rethrow_exception(first_error);
        for (auto& slot : slots)
            if (slot) dump.profiles.push_back(std::move(*slot));
    }

    // Persist record files (sorted, stable serialization), then the manifest.
    auto sort_all = [&]() {
        std::sort(dump.issues.begin(), dump.issues.end(), [](const auto& a, const auto& b) {
            return std::tie(a.created_at, a.number) < std::tie(b.created_at, b.number);
        });
        std::sort(dump.pulls.begin(), dump.pulls.end(), [](const auto& a, const auto& b) {
            return std::tie(a.created_at, a.number) < std::tie(b.created_at, b.number);
        });
        std::sort(dump.comments.begin(), dump.comments.end(), [](const auto& a, const auto& b) {
            return std::tie(a.created_at, a.comment_id) < std::tie(b.created_at, b.comment_id);
        });
        std::sort(dump.profiles.begin(), dump.profiles.end(),
                  [](const auto& a, const auto& b) { return a.login < b.login; });
    };
    sort_all();

    auto write_kind = [&](RecordKind kind, const std::string& filename, const std::string& body,
                          long count) {
        if (!kinds.count(kind)) return;
        util::write_text_file_atomic(dir / filename, body);
        dump.manifest.record_counts[to_string(kind)] = count;
    };

    std::string issues_body, pulls_body, comments_body, profiles_body;
    for (const auto& r : dump.issues) issues_body += issue_to_json_line(r) + "\n";
    for (const auto& r : dump.pulls) pulls_body += pull_to_json_line(r) + "\n";
    for (const auto& r : dump.comments) comments_body += comment_to_json_line(r) + "\n";
    for (const auto& r : dump.profiles) profiles_body += profile_to_json_line(r) + "\n";

    write_kind(RecordKind::issue, "issues.ndjson", issues_body, static_cast<long>(dump.issues.size()));
    write_kind(RecordKind::pull, "pulls.ndjson", pulls_body, static_cast<long>(dump.pulls.size()));
    write_kind(RecordKind::comment, "comments.ndjson", comments_body,
               static_cast<long>(dump.comments.size()));
    write_kind(RecordKind::profile, "profiles.ndjson", profiles_body,
               static_cast<long>(dump.profiles.size()));

    dump.manifest.fetched_at = static_cast<std::int64_t>(std::time(nullptr));
    json manifest;
    manifest["api_base_url"] = dump.manifest.api_base_url;
    manifest["fetched_at"] = dump.manifest.fetched_at;
    json counts = json::object();
    for (const auto& [kind, count] : dump.manifest.record_counts) counts[kind] = count;
    manifest["record_counts"] = counts;
    manifest["repo_slug"] = dump.manifest.repo_slug;
    manifest["schema_version"] = dump.manifest.schema_version;
    util::write_text_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");

    session.log("dump complete for " + std::string(slug));
    return dump.manifest;
    } catch (const json::exception& e) {
        // Structurally unexpected API payload (missing fields, wrong types).
        fail(Errc::runtime, "malformed API response while fetching " + std::string(slug) + ": " +
                                e.what());
    }
}

} // namespace repoecg::ingest
