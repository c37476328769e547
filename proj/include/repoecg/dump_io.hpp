#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "repoecg/records.hpp"

namespace repoecg::ingest {

inline constexpr int kSchemaVersion = 1;

// In-memory image of one repository dump. `malformed_lines` counts NDJSON
// lines that failed to parse on load (skipped, never silently dropped).
struct Dump {
    std::vector<IssueRecord> issues;
    std::vector<PullRecord> pulls;
    std::vector<CommentRecord> comments;
    std::vector<UserProfile> profiles;
    DumpManifest manifest;
    long malformed_lines = 0;
};

// Directory layout:
//   <data_dir>/<owner>__<name>/raw/{issues,pulls,comments,profiles,commits}.ndjson
//   <data_dir>/<owner>__<name>/raw/manifest.json   (written last; atomicity marker)
std::filesystem::path dump_dir(const std::filesystem::path& data_dir, std::string_view slug);
std::filesystem::path raw_dir(const std::filesystem::path& data_dir, std::string_view slug);

// Sorts records (created_at, then id), refreshes manifest counts, writes the
// four NDJSON files, then the manifest. Serialization is stable: keys sorted,
// one record per line.
void write_dump(const std::filesystem::path& data_dir, Dump& dump);

// Loads a dump written by write_dump/fetch_repo. `dir` is the repository dump
// directory (the one containing raw/). Missing manifest → Error(partial_fetch);
// unsupported schema_version → Error(schema_mismatch). Malformed lines are
// skipped and counted.
Dump load_dump(const std::filesystem::path& dir);

// ---- per-record JSON (exposed for tests and the commit NDJSON writer) ------

std::string issue_to_json_line(const IssueRecord& r);
std::string pull_to_json_line(const PullRecord& r);
std::string comment_to_json_line(const CommentRecord& r);
std::string profile_to_json_line(const UserProfile& r);
std::string commit_to_json_line(const CommitRecord& r);

// Commit records live in the same raw/ directory but come from the local
// clone, not the API, so they are written separately from the manifest.
void write_commits(const std::filesystem::path& data_dir, std::string_view slug,
                   const std::vector<CommitRecord>& commits);

// Returns commits sorted by authored_at ascending; malformed lines counted
// into *malformed when non-null.
std::vector<CommitRecord> load_commits(const std::filesystem::path& data_dir,
                                       std::string_view slug, long* malformed = nullptr);

} // namespace repoecg::ingest
