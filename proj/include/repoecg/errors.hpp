#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace repoecg {

// Stable process exit codes, one per externally visible failure class.
// Kept below 100 so they never collide with CLI11 parse-error codes.
enum class Errc : int {
    ok = 0,
    runtime = 1,
    config = 2,
    auth_failure = 10,
    rate_limited = 11,
    not_found = 12,
    partial_fetch = 13,
    schema_mismatch = 14,
    missing_metrics = 15,
    insufficient_projects = 16,
    single_class_corpus = 17,
    insufficient_overlap = 18,
    not_a_repo = 20,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ok: return "ok";
        case Errc::runtime: return "runtime-error";
        case Errc::config: return "config-error";
        case Errc::auth_failure: return "auth-failure";
        case Errc::rate_limited: return "rate-limited";
        case Errc::not_found: return "not-found";
        case Errc::partial_fetch: return "partial-fetch";
        case Errc::schema_mismatch: return "schema-mismatch";
        case Errc::missing_metrics: return "missing-metrics";
        case Errc::insufficient_projects: return "insufficient-projects";
        case Errc::single_class_corpus: return "single-class-corpus";
        case Errc::insufficient_overlap: return "insufficient-overlap";
        case Errc::not_a_repo: return "not-a-repo";
    }
    return "unknown";
}

// Exception carrying an error class; main() maps it onto the process exit code.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
    throw Error(code, std::move(message));
}

// Raised when a paired test has no nonzero differences (the test statistic is
// undefined); callers that compare identical samples catch this and report a
// defined neutral result instead.
class AllZeroDifferences : public Error {
public:
    AllZeroDifferences() : Error(Errc::runtime, "all differences are zero; test undefined") {}
};

} // namespace repoecg
