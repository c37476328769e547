#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repoecg {

enum class AuthorAssociation {
    MEMBER,
    OWNER,
    COLLABORATOR,
    CONTRIBUTOR,
    FIRST_TIME_CONTRIBUTOR,
    FIRST_TIMER,
    NONE,
};

const char* to_string(AuthorAssociation a);
AuthorAssociation author_association_from(std::string_view s); // unknown → NONE

enum class AccountType {
    User,
    Bot,
    Organization,
};

const char* to_string(AccountType t);
AccountType account_type_from(std::string_view s); // unknown → User

enum class ParentKind {
    issue,  // comment on an issue conversation
    pull,   // comment on a PR conversation (issues endpoint)
    review, // pull-review (diff) comment
};

const char* to_string(ParentKind k);
ParentKind parent_kind_from(std::string_view s);

struct IssueRecord {
    std::string repo_slug;
    long number = 0;
    std::string title;
    std::string body;
    std::string author_login;
    AuthorAssociation author_association = AuthorAssociation::NONE;
    std::int64_t created_at = 0;
    std::optional<std::int64_t> closed_at;
    std::vector<std::string> labels;
    std::map<std::string, long> reaction_counts; // emoji name → count
    bool is_pull = false;

    long total_reactions() const;
};

struct PullRecord : IssueRecord {
    std::optional<std::int64_t> merged_at;
    PullRecord() { is_pull = true; }
};

struct CommentRecord {
    std::string repo_slug;
    ParentKind parent_kind = ParentKind::issue;
    long parent_number = 0;
    long comment_id = 0;
    std::string author_login;
    AuthorAssociation author_association = AuthorAssociation::NONE;
    std::int64_t created_at = 0;
    std::string body;
    std::map<std::string, long> reaction_counts;

    long total_reactions() const;
};

struct UserProfile {
    std::string login;
    std::optional<std::string> display_name;
    std::optional<std::string> location_raw;
    AccountType account_type = AccountType::User;
    std::optional<std::string> company;
};

struct DumpManifest {
    std::string repo_slug;
    std::int64_t fetched_at = 0;
    std::map<std::string, long> record_counts; // kind ("issue", "pull", …) → count
    std::string api_base_url;
    int schema_version = 1;
};

struct CommitRecord {
    std::string sha;            // 40-hex
    std::string author_name;
    std::string author_email;   // lowercased
    std::int64_t authored_at = 0;
    int parent_count = 0;
    long files_changed = 0;
    long lines_added = 0;
    long lines_deleted = 0;
    std::optional<double> dmm_unit_size;        // in [0,1] when present
    std::optional<double> dmm_unit_complexity;  // in [0,1] when present
    std::optional<double> dmm_unit_interfacing; // in [0,1] when present
};

// Identity key used for distinct-author counting: lowercase email, with
// GitHub noreply addresses collapsed to the login they embed.
std::string commit_author_key(const CommitRecord& c);

} // namespace repoecg
