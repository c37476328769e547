#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "repoecg/dump_io.hpp"
#include "repoecg/records.hpp"

namespace repoecg::ingest {

enum class RecordKind {
    issue,
    pull,
    comment,
    profile,
};

const char* to_string(RecordKind k);

std::set<RecordKind> all_record_kinds();

struct FetchOptions {
    std::string api_base_url = "https://api.github.com";
    std::optional<std::string> auth_token;        // falls back to $REPOECG_TOKEN
    int page_size = 100;                          // API maximum
    int max_parallel = 4;                         // concurrent page fetches
    int rate_limit_retries = 3;                   // sleep-until-reset attempts
    std::function<void(const std::string&)> log;  // optional progress sink
};

// Fetches all pages of each requested kind from a GitHub-compatible REST API
// and persists them under <data_dir>/<owner>__<name>/raw/. The manifest is
// written last, so its presence marks a complete dump. Returns the manifest.
//
// Errors: Error(auth_failure) on 401, Error(rate_limited) once retries are
// exhausted, Error(not_found) on 404, Error(runtime) on transport failures.
// An interrupted fetch leaves no manifest behind.
DumpManifest fetch_repo(std::string_view slug, const std::set<RecordKind>& kinds,
                        const FetchOptions& options, const std::filesystem::path& data_dir);

} // namespace repoecg::ingest
