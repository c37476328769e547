#include "repoecg/dump_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/util.hpp"

using nlohmann::json;

namespace repoecg {

const char* to_string(AuthorAssociation a) {
    switch (a) {
        case AuthorAssociation::MEMBER: return "MEMBER";
        case AuthorAssociation::OWNER: return "OWNER";
        case AuthorAssociation::COLLABORATOR: return "COLLABORATOR";
        case AuthorAssociation::CONTRIBUTOR: return "CONTRIBUTOR";
        case AuthorAssociation::FIRST_TIME_CONTRIBUTOR: return "FIRST_TIME_CONTRIBUTOR";
        case AuthorAssociation::FIRST_TIMER: return "FIRST_TIMER";
        case AuthorAssociation::NONE: return "NONE";
    }
    return "NONE";
}

AuthorAssociation author_association_from(std::string_view s) {
    if (s == "MEMBER") return AuthorAssociation::MEMBER;
    if (s == "OWNER") return AuthorAssociation::OWNER;
    if (s == "COLLABORATOR") return AuthorAssociation::COLLABORATOR;
    if (s == "CONTRIBUTOR") return AuthorAssociation::CONTRIBUTOR;
    if (s == "FIRST_TIME_CONTRIBUTOR") return AuthorAssociation::FIRST_TIME_CONTRIBUTOR;
    if (s == "FIRST_TIMER") return AuthorAssociation::FIRST_TIMER;
    return AuthorAssociation::NONE;
}

const char* to_string(AccountType t) {
    switch (t) {
        case AccountType::User: return "User";
        case AccountType::Bot: return "Bot";
        case AccountType::Organization: return "Organization";
    }
    return "User";
}

AccountType account_type_from(std::string_view s) {
    if (s == "Bot") return AccountType::Bot;
    if (s == "Organization") return AccountType::Organization;
    return AccountType::User;
}

const char* to_string(ParentKind k) {
    switch (k) {
        case ParentKind::issue: return "issue";
        case ParentKind::pull: return "pull";
        case ParentKind::review: return "review";
    }
    return "issue";
}

ParentKind parent_kind_from(std::string_view s) {
    if (s == "pull") return ParentKind::pull;
    if (s == "review") return ParentKind::review;
    return ParentKind::issue;
}

long IssueRecord::total_reactions() const {
    long sum = 0;
    for (const auto& [emoji, count] : reaction_counts) sum += count;
    return sum;
}

long CommentRecord::total_reactions() const {
    long sum = 0;
    for (const auto& [emoji, count] : reaction_counts) sum += count;
    return sum;
}

std::string commit_author_key(const CommitRecord& c) {
    std::string email = util::to_lower(c.author_email);
    constexpr std::string_view noreply = "@users.noreply.github.com";
    if (email.size() > noreply.size() &&
        email.compare(email.size() - noreply.size(), noreply.size(), noreply) == 0) {
        std::string local = email.substr(0, email.size() - noreply.size());
        // "12345+login" or plain "login"
        if (auto plus = local.find('+'); plus != std::string::npos) local = local.substr(plus + 1);
        return local;
    }
    return email;
}

} // namespace repoecg

namespace repoecg::ingest {

namespace {

json reactions_to_json(const std::map<std::string, long>& counts) {
    json obj = json::object();
    for (const auto& [emoji, count] : counts) obj[emoji] = count;
    return obj;
}

std::map<std::string, long> reactions_from_json(const json& obj) {
    std::map<std::string, long> counts;
    for (auto it = obj.begin(); it != obj.end(); ++it) counts[it.key()] = it.value().get<long>();
    return counts;
}

json issue_to_json(const IssueRecord& r) {
    json j;
    j["author_association"] = to_string(r.author_association);
    j["author_login"] = r.author_login;
    j["body"] = r.body;
    j["closed_at"] = r.closed_at ? json(*r.closed_at) : json(nullptr);
    j["created_at"] = r.created_at;
    j["is_pull"] = r.is_pull;
    j["labels"] = r.labels;
    j["number"] = r.number;
    j["reaction_counts"] = reactions_to_json(r.reaction_counts);
    j["repo_slug"] = r.repo_slug;
    j["title"] = r.title;
    return j;
}

void issue_from_json(const json& j, IssueRecord& r) {
    r.repo_slug = j.at("repo_slug").get<std::string>();
    r.number = j.at("number").get<long>();
    r.title = j.at("title").get<std::string>();
    r.body = j.at("body").get<std::string>();
    r.author_login = j.at("author_login").get<std::string>();
    r.author_association = author_association_from(j.at("author_association").get<std::string>());
    r.created_at = j.at("created_at").get<std::int64_t>();
    if (j.contains("closed_at") && !j["closed_at"].is_null())
        r.closed_at = j["closed_at"].get<std::int64_t>();
    r.labels = j.at("labels").get<std::vector<std::string>>();
    r.reaction_counts = reactions_from_json(j.at("reaction_counts"));
    r.is_pull = j.at("is_pull").get<bool>();
}

json pull_to_json(const PullRecord& r) {
    json j = issue_to_json(r);
    j["merged_at"] = r.merged_at ? json(*r.merged_at) : json(nullptr);
    return j;
}

PullRecord pull_from_json(const json& j) {
    PullRecord r;
    issue_from_json(j, r);
    r.is_pull = true;
    if (j.contains("merged_at") && !j["merged_at"].is_null())
        r.merged_at = j["merged_at"].get<std::int64_t>();
    return r;
}

json comment_to_json(const CommentRecord& r) {
    json j;
    j["author_association"] = to_string(r.author_association);
    j["author_login"] = r.author_login;
    j["body"] = r.body;
    j["comment_id"] = r.comment_id;
    j["created_at"] = r.created_at;
    j["parent_kind"] = to_string(r.parent_kind);
    j["parent_number"] = r.parent_number;
    j["reaction_counts"] = reactions_to_json(r.reaction_counts);
    j["repo_slug"] = r.repo_slug;
    return j;
}

CommentRecord comment_from_json(const json& j) {
    CommentRecord r;
    r.repo_slug = j.at("repo_slug").get<std::string>();
    r.parent_kind = parent_kind_from(j.at("parent_kind").get<std::string>());
    r.parent_number = j.at("parent_number").get<long>();
    r.comment_id = j.at("comment_id").get<long>();
    r.author_login = j.at("author_login").get<std::string>();
    r.author_association = author_association_from(j.at("author_association").get<std::string>());
    r.created_at = j.at("created_at").get<std::int64_t>();
    r.body = j.at("body").get<std::string>();
    r.reaction_counts = reactions_from_json(j.at("reaction_counts"));
    return r;
}

json profile_to_json(const UserProfile& r) {
    json j;
    j["account_type"] = to_string(r.account_type);
    j["company"] = r.company ? json(*r.company) : json(nullptr);
    j["display_name"] = r.display_name ? json(*r.display_name) : json(nullptr);
    j["location_raw"] = r.location_raw ? json(*r.location_raw) : json(nullptr);
    j["login"] = r.login;
    return j;
}

UserProfile profile_from_json(const json& j) {
    UserProfile r;
    r.login = j.at("login").get<std::string>();
    if (r.login.empty()) throw std::runtime_error("profile with empty login");
    if (j.contains("display_name") && !j["display_name"].is_null())
        r.display_name = j["display_name"].get<std::string>();
    if (j.contains("location_raw") && !j["location_raw"].is_null())
        r.location_raw = j["location_raw"].get<std::string>();
    r.account_type = account_type_from(j.at("account_type").get<std::string>());
    if (j.contains("company") && !j["company"].is_null())
        r.company = j["company"].get<std::string>();
    return r;
}

json commit_to_json(const CommitRecord& r) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json j;
    j["author_email"] = r.author_email;
    j["author_name"] = r.author_name;
    j["authored_at"] = r.authored_at;
    j["dmm_unit_complexity"] = opt(r.dmm_unit_complexity);
    j["dmm_unit_interfacing"] = opt(r.dmm_unit_interfacing);
    j["dmm_unit_size"] = opt(r.dmm_unit_size);
    j["files_changed"] = r.files_changed;
    j["lines_added"] = r.lines_added;
    j["lines_deleted"] = r.lines_deleted;
    j["parent_count"] = r.parent_count;
    j["sha"] = r.sha;
    return j;
}

CommitRecord commit_from_json(const json& j) {
    CommitRecord r;
    r.sha = j.at("sha").get<std::string>();
    r.author_name = j.at("author_name").get<std::string>();
    r.author_email = j.at("author_email").get<std::string>();
    r.authored_at = j.at("authored_at").get<std::int64_t>();
    r.parent_count = j.at("parent_count").get<int>();
    r.files_changed = j.at("files_changed").get<long>();
    r.lines_added = j.at("lines_added").get<long>();
    r.lines_deleted = j.at("lines_deleted").get<long>();
    auto opt = [&](const char* key) -> std::optional<double> {
        if (j.contains(key) && !j[key].is_null()) return j[key].get<double>();
        return std::nullopt;
    };
    r.dmm_unit_size = opt("dmm_unit_size");
    r.dmm_unit_complexity = opt("dmm_unit_complexity");
    r.dmm_unit_interfacing = opt("dmm_unit_interfacing");
    return r;
}

json manifest_to_json(const DumpManifest& m) {
    json j;
    j["api_base_url"] = m.api_base_url;
    j["fetched_at"] = m.fetched_at;
    json counts = json::object();
    for (const auto& [kind, count] : m.record_counts) counts[kind] = count;
    j["record_counts"] = counts;
    j["repo_slug"] = m.repo_slug;
    j["schema_version"] = m.schema_version;
    return j;
}

DumpManifest manifest_from_json(const json& j) {
    DumpManifest m;
    m.repo_slug = j.at("repo_slug").get<std::string>();
    m.fetched_at = j.at("fetched_at").get<std::int64_t>();
    for (auto it = j.at("record_counts").begin(); it != j.at("record_counts").end(); ++it)
        m.record_counts[it.key()] = it.value().get<long>();
    m.api_base_url = j.at("api_base_url").get<std::string>();
    m.schema_version = j.at("schema_version").get<int>();
    return m;
}

std::string slug_dir_name(std::string_view slug) {
    std::string name(slug);
    auto pos = name.find('/');
    if (pos != std::string::npos) name.replace(pos, 1, "__");
    return name;
}

// Reads one NDJSON file into records via `parse`; skips (and counts)
// malformed lines. A missing file reads as empty.
template <typename Record, typename Parse>
std::vector<Record> read_ndjson(const std::filesystem::path& path, Parse parse, long& malformed) {
    std::vector<Record> records;
    std::ifstream in(path, std::ios::binary);
    if (!in) return records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            records.push_back(parse(json::parse(line)));
        } catch (const std::exception&) {
            ++malformed;
        }
    }
    return records;
}

template <typename Record, typename ToJson>
std::string to_ndjson(const std::vector<Record>& records, ToJson to_json_fn) {
    std::string out;
    for (const auto& r : records) {
        out += to_json_fn(r).dump();
        out += '\n';
    }
    return out;
}

void sort_records(Dump& dump) {
    auto by_created_number = [](const auto& a, const auto& b) {
        return std::tie(a.created_at, a.number) < std::tie(b.created_at, b.number);
    };
    std::sort(dump.issues.begin(), dump.issues.end(), by_created_number);
    std::sort(dump.pulls.begin(), dump.pulls.end(), by_created_number);
    std::sort(dump.comments.begin(), dump.comments.end(), [](const auto& a, const auto& b) {
        return std::tie(a.created_at, a.comment_id) < std::tie(b.created_at, b.comment_id);
    });
    std::sort(dump.profiles.begin(), dump.profiles.end(),
              [](const auto& a, const auto& b) { return a.login < b.login; });
}

} // namespace

std::filesystem::path dump_dir(const std::filesystem::path& data_dir, std::string_view slug) {
    return data_dir / slug_dir_name(slug);
}

std::filesystem::path raw_dir(const std::filesystem::path& data_dir, std::string_view slug) {
    return dump_dir(data_dir, slug) / "raw";
}

std::string issue_to_json_line(const IssueRecord& r) { return issue_to_json(r).dump(); }
std::string pull_to_json_line(const PullRecord& r) { return pull_to_json(r).dump(); }
std::string comment_to_json_line(const CommentRecord& r) { return comment_to_json(r).dump(); }
std::string profile_to_json_line(const UserProfile& r) { return profile_to_json(r).dump(); }
std::string commit_to_json_line(const CommitRecord& r) { return commit_to_json(r).dump(); }

void write_dump(const std::filesystem::path& data_dir, Dump& dump) {
    sort_records(dump);
    const auto dir = raw_dir(data_dir, dump.manifest.repo_slug);
    std::filesystem::create_directories(dir);

    util::write_text_file_atomic(dir / "issues.ndjson", to_ndjson(dump.issues, issue_to_json));
    util::write_text_file_atomic(dir / "pulls.ndjson", to_ndjson(dump.pulls, pull_to_json));
    util::write_text_file_atomic(dir / "comments.ndjson", to_ndjson(dump.comments, comment_to_json));
    util::write_text_file_atomic(dir / "profiles.ndjson", to_ndjson(dump.profiles, profile_to_json));

    dump.manifest.schema_version = kSchemaVersion;
    dump.manifest.record_counts["issue"] = static_cast<long>(dump.issues.size());
    dump.manifest.record_counts["pull"] = static_cast<long>(dump.pulls.size());
    dump.manifest.record_counts["comment"] = static_cast<long>(dump.comments.size());
    dump.manifest.record_counts["profile"] = static_cast<long>(dump.profiles.size());
    // The manifest is written last: its presence marks a complete dump.
    util::write_text_file_atomic(dir / "manifest.json", manifest_to_json(dump.manifest).dump(2) + "\n");
}

Dump load_dump(const std::filesystem::path& dir) {
    const auto raw = dir / "raw";
    const auto manifest_path = raw / "manifest.json";
    if (!std::filesystem::exists(manifest_path)) {
        fail(Errc::partial_fetch,
             "no manifest at " + manifest_path.string() + "; dump is incomplete or missing");
    }
    Dump dump;
    try {
        dump.manifest = manifest_from_json(json::parse(util::read_text_file(manifest_path)));
    } catch (const json::exception& e) {
        fail(Errc::schema_mismatch, "unreadable manifest " + manifest_path.string() + ": " + e.what());
    }
    if (dump.manifest.schema_version != kSchemaVersion) {
        fail(Errc::schema_mismatch,
             "dump schema_version " + std::to_string(dump.manifest.schema_version) +
                 " unsupported (expected " + std::to_string(kSchemaVersion) + ")");
    }

    long malformed = 0;
    dump.issues = read_ndjson<IssueRecord>(
        raw / "issues.ndjson",
        [](const json& j) {
            IssueRecord r;
            issue_from_json(j, r);
            return r;
        },
        malformed);
    dump.pulls = read_ndjson<PullRecord>(raw / "pulls.ndjson", pull_from_json, malformed);
    dump.comments = read_ndjson<CommentRecord>(raw / "comments.ndjson", comment_from_json, malformed);
    dump.profiles = read_ndjson<UserProfile>(raw / "profiles.ndjson", profile_from_json, malformed);
    dump.malformed_lines = malformed;
    sort_records(dump);
    return dump;
}

void write_commits(const std::filesystem::path& data_dir, std::string_view slug,
                   const std::vector<CommitRecord>& commits) {
    const auto dir = raw_dir(data_dir, slug);
    std::filesystem::create_directories(dir);
    util::write_text_file_atomic(dir / "commits.ndjson", to_ndjson(commits, commit_to_json));
}

std::vector<CommitRecord> load_commits(const std::filesystem::path& data_dir,
                                       std::string_view slug, long* malformed) {
    long bad = 0;
    auto commits =
        read_ndjson<CommitRecord>(raw_dir(data_dir, slug) / "commits.ndjson", commit_from_json, bad);
    std::sort(commits.begin(), commits.end(), [](const auto& a, const auto& b) {
        return std::tie(a.authored_at, a.sha) < std::tie(b.authored_at, b.sha);
    });
    if (malformed) *malformed = bad;
    return commits;
}

} // namespace repoecg::ingest
