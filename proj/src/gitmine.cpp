// Local-clone mining: runs `git log --patch` and turns each commit into a
// CommitRecord with delta-maintainability scores over its changed units.
#include "repoecg/gitmine.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>

#include "repoecg/errors.hpp"
#include "repoecg/util.hpp"

#include <sys/wait.h>

namespace repoecg::gitmine {

namespace {

// ---------------------------------------------------------------------------
// git subprocess plumbing
// ---------------------------------------------------------------------------

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

struct GitOutput {
    std::string text;
    int exit_code = -1;
};

GitOutput run_git(const std::filesystem::path& repo, const std::vector<std::string>& args) {
    std::string cmd = "git -C " + shell_quote(repo.string());
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " 2>/dev/null";

    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) fail(Errc::runtime, "failed to spawn git");
    GitOutput result;
    std::array<char, 65536> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.text.append(buf.data(), n);
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// ---------------------------------------------------------------------------
// per-file patch splitting
// ---------------------------------------------------------------------------

struct FileDiff {
    std::string path;
    std::string text;
};

// Splits a commit's patch into per-file diffs and pulls each file's
// post-change path out of the +++/--- header lines.
std::vector<FileDiff> split_file_diffs(std::string_view patch) {
    std::vector<FileDiff> files;
    std::size_t pos = 0;
    std::vector<std::size_t> starts;
    while (pos < patch.size()) {
        if (util::starts_with(patch.substr(pos), "diff --git ")) starts.push_back(pos);
        auto eol = patch.find('\n', pos);
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    for (std::size_t k = 0; k < starts.size(); ++k) {
        std::size_t begin = starts[k];
        std::size_t end = (k + 1 < starts.size()) ? starts[k + 1] : patch.size();
        FileDiff fd;
        fd.text = std::string(patch.substr(begin, end - begin));

        // Only the header region (before the first hunk) holds the ---/+++
        // lines; added lines may fake them further down.
        std::size_t header_extent = fd.text.find("\n@@");
        if (header_extent == std::string::npos) header_extent = fd.text.size();

        auto path_from = [&](std::string_view marker, std::string_view prefix) -> std::string {
            std::size_t p = fd.text.find(marker);
            if (p == std::string::npos || p >= header_extent) return {};
            p += marker.size();
            std::size_t eol = fd.text.find('\n', p);
            std::string path = fd.text.substr(p, eol - p);
            if (!path.empty() && path.back() == '\r') path.pop_back();
            if (path == "/dev/null") return {};
            if (util::starts_with(path, prefix)) path = path.substr(prefix.size());
            if (path.size() >= 2 && path.front() == '"' && path.back() == '"')
                path = path.substr(1, path.size() - 2);
            return path;
        };
        fd.path = path_from("\n+++ ", "b/");
        if (fd.path.empty()) fd.path = path_from("\n--- ", "a/");
        files.push_back(std::move(fd));
    }
    return files;
}

constexpr char kRecordSep = '\x1e';
constexpr char kFieldSep = '\x1f';

} // namespace

MineResult mine_commits(const std::filesystem::path& clone_path,
                        const std::optional<std::string>& branch,
                        const RiskThresholds& thresholds) {
    if (run_git(clone_path, {"rev-parse", "--git-dir"}).exit_code != 0) {
        fail(Errc::not_a_repo, clone_path.string() + " is not a git repository");
    }
    std::string ref = branch.value_or("HEAD");
    if (run_git(clone_path, {"rev-parse", "--verify", "--quiet", ref + "^{commit}"}).exit_code != 0) {
        if (branch) fail(Errc::not_a_repo, "branch '" + *branch + "' not found in " + clone_path.string());
        return {}; // repository exists but has no commits yet
    }

    std::string format = std::string("--pretty=format:") + kRecordSep + "%H" + kFieldSep + "%an" +
                         kFieldSep + "%ae" + kFieldSep + "%ad" + kFieldSep + "%P";
    GitOutput log = run_git(clone_path, {"log", ref, "--date=unix", "--reverse", "--no-renames",
                                         "--unified=100000", "--no-color", "--patch", format, "--"});
    if (log.exit_code != 0) fail(Errc::runtime, "git log failed in " + clone_path.string());

    MineResult result;
    std::size_t pos = 0;
    while (pos < log.text.size()) {
        std::size_t rec_start = log.text.find(kRecordSep, pos);
        if (rec_start == std::string::npos) break;
        std::size_t rec_end = log.text.find(kRecordSep, rec_start + 1);
        std::string_view chunk(log.text.data() + rec_start + 1,
                               (rec_end == std::string::npos ? log.text.size() : rec_end) -
                                   rec_start - 1);
        pos = rec_end == std::string::npos ? log.text.size() : rec_end;

        std::size_t header_end = chunk.find('\n');
        std::string_view header = chunk.substr(0, header_end);
        std::string_view patch =
            header_end == std::string_view::npos ? std::string_view{} : chunk.substr(header_end + 1);

        auto fields = util::split(header, kFieldSep);
        if (fields.size() != 5 || fields[0].size() != 40) {
            ++result.unreadable_objects;
            continue;
        }
        CommitRecord c;
        c.sha = fields[0];
        c.author_name = fields[1];
        c.author_email = util::to_lower(fields[2]);
        c.authored_at = std::atoll(fields[3].c_str());
        c.parent_count = fields[4].empty() ? 0 : static_cast<int>(util::split(fields[4], ' ').size());

        std::vector<ChangedUnit> units;
        for (const auto& fd : split_file_diffs(patch)) {
            ++c.files_changed;
            // Added/deleted line totals straight from the patch body.
            std::size_t p = 0;
            bool in_hunk = false;
            while (p <= fd.text.size()) {
                std::size_t eol = fd.text.find('\n', p);
                std::string_view line = std::string_view(fd.text).substr(
                    p, eol == std::string::npos ? fd.text.size() - p : eol - p);
                if (util::starts_with(line, "@@")) {
                    in_hunk = true;
                } else if (in_hunk && !line.empty()) {
                    if (line[0] == '+') ++c.lines_added;
                    else if (line[0] == '-') ++c.lines_deleted;
                }
                if (eol == std::string::npos) break;
                p = eol + 1;
            }
            if (!fd.path.empty()) {
                auto file_units = extract_units(fd.text, fd.path);
                units.insert(units.end(), file_units.begin(), file_units.end());
            }
        }
        DmmScores dmm = dmm_scores(units, thresholds);
        c.dmm_unit_size = dmm.unit_size;
        c.dmm_unit_complexity = dmm.unit_complexity;
        c.dmm_unit_interfacing = dmm.unit_interfacing;
        result.commits.push_back(std::move(c));
    }

    std::sort(result.commits.begin(), result.commits.end(), [](const auto& a, const auto& b) {
        return std::tie(a.authored_at, a.sha) < std::tie(b.authored_at, b.sha);
    });
    return result;
}

} // namespace repoecg::gitmine
