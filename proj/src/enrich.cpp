#include "repoecg/enrich.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csignal>
#include <cstring>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/util.hpp"
#include "tables_data.hpp"

using nlohmann::json;

namespace repoecg::enrich {

// ---------------------------------------------------------------------------
// Diversity.
// ---------------------------------------------------------------------------

double shannon_index(const std::map<std::string, long>& category_counts) {
    if (category_counts.empty()) fail(Errc::runtime, "shannon_index: no categories");
    long total = 0;
    for (const auto& [name, count] : category_counts) {
        if (count <= 0) fail(Errc::runtime, "shannon_index: nonpositive count for '" + name + "'");
        total += count;
    }
    double h = 0.0;
    for (const auto& [name, count] : category_counts) {
        double p = static_cast<double>(count) / static_cast<double>(total);
        h -= p * std::log(p);
    }
    return h == 0.0 ? 0.0 : h; // normalize -0.0 from the single-category case
}

// ---------------------------------------------------------------------------
// Markup stripping.
// ---------------------------------------------------------------------------

namespace {

bool is_fence_line(std::string_view line) {
    std::string_view t = line;
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
    return util::starts_with(t, "```") || util::starts_with(t, "~~~");
}

std::string drop_fenced_blocks(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_fence = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        if (is_fence_line(line)) {
            in_fence = !in_fence;
        } else if (!in_fence) {
            out.append(line);
            out += '\n';
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

std::string drop_inline_code(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == '`') {
            std::size_t close = text.find('`', pos + 1);
            if (close != std::string_view::npos) {
                pos = close + 1; // span and both backticks dropped
                continue;
            }
        }
        out += text[pos++];
    }
    return out;
}

std::string drop_urls(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        bool url = false;
        for (std::string_view scheme : {"https://", "http://"}) {
            if (text.substr(pos, scheme.size()) == scheme) {
                url = true;
                break;
            }
        }
        if (url) {
            while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
            continue;
        }
        out += text[pos++];
    }
    return out;
}

} // namespace

std::string strip_markup(std::string_view markdown) {
    return drop_urls(drop_inline_code(drop_fenced_blocks(markdown)));
}

// ---------------------------------------------------------------------------
// Bundled lexicon scorer.
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> lower_alpha_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool looks_like_path(std::string_view word) {
    // A slash inside a non-URL word reads as a file or code path ("src/x.c",
    // "a/b"). URLs are already stripped by the time this runs.
    return word.size() > 1 && word.find('/') != std::string_view::npos;
}

bool references_code(std::string_view raw, std::string_view stripped,
                     const std::vector<std::string>& tokens) {
    if (raw.find('`') != std::string_view::npos) return true;
    std::size_t pos = 0;
    while (pos < stripped.size()) {
        while (pos < stripped.size() && std::isspace(static_cast<unsigned char>(stripped[pos]))) ++pos;
        std::size_t end = pos;
        while (end < stripped.size() && !std::isspace(static_cast<unsigned char>(stripped[end]))) ++end;
        if (end > pos && looks_like_path(stripped.substr(pos, end - pos))) return true;
        pos = end;
    }
    return !tokens.empty() && tables::imperative_verbs().count(tokens.front()) > 0;
}

class LexiconScorer final : public TextScorer {
public:
    std::vector<TextScore> score(const std::vector<std::pair<long, std::string>>& items) override {
        std::vector<TextScore> out;
        out.reserve(items.size());
        for (const auto& [id, body] : items) out.push_back(score_text(body));
        return out;
    }
};

} // namespace

TextScore score_text(std::string_view body) {
    TextScore result;
    if (body.empty()) return result;
    std::string stripped = strip_markup(body);
    std::vector<std::string> tokens = lower_alpha_tokens(stripped);

    static const std::map<std::string, double> sentiment_map = [] {
        std::map<std::string, double> m;
        for (const auto& [word, value] : tables::sentiment_words()) m[word] = value;
        return m;
    }();

    double sum = 0.0;
    long matched = 0;
    for (const auto& token : tokens) {
        auto it = sentiment_map.find(token);
        if (it != sentiment_map.end()) {
            sum += it->second;
            ++matched;
        }
        if (tables::profanity().count(token)) result.toxic = true;
    }
    if (matched > 0) result.sentiment = sum / static_cast<double>(matched);
    result.useful = references_code(body, stripped, tokens);
    return result;
}

std::unique_ptr<TextScorer> make_lexicon_scorer() {
    return std::make_unique<LexiconScorer>();
}

// ---------------------------------------------------------------------------
// External scorer subprocess.
// ---------------------------------------------------------------------------

namespace {

class ExternalScorer final : public TextScorer {
public:
    explicit ExternalScorer(std::string command) : command_(std::move(command)) {}

    std::vector<TextScore> score(const std::vector<std::pair<long, std::string>>& items) override {
        if (items.empty()) return {};

        // A dying child must surface as a failed exit status, not SIGPIPE.
        static std::once_flag sigpipe_once;
        std::call_once(sigpipe_once, [] { std::signal(SIGPIPE, SIG_IGN); });

        int to_child[2];
        int from_child[2];
        if (::pipe(to_child) != 0 || ::pipe(from_child) != 0)
            fail(Errc::runtime, "external scorer: pipe failed");

        pid_t pid = ::fork();
        if (pid < 0) fail(Errc::runtime, "external scorer: fork failed");
        if (pid == 0) {
            ::dup2(to_child[0], STDIN_FILENO);
            ::dup2(from_child[1], STDOUT_FILENO);
            ::close(to_child[0]);
            ::close(to_child[1]);
            ::close(from_child[0]);
            ::close(from_child[1]);
            ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
            ::_exit(127);
        }
        ::close(to_child[0]);
        ::close(from_child[1]);

        // Feed requests from a separate thread so a scorer that replies
        // before draining its stdin cannot deadlock us.
        std::string request;
        for (const auto& [id, body] : items) {
            json line;
            line["id"] = id;
            line["text"] = body;
            request += line.dump();
            request += '\n';
        }
        std::thread writer([fd = to_child[1], &request] {
            std::size_t written = 0;
            while (written < request.size()) {
                ssize_t n = ::write(fd, request.data() + written, request.size() - written);
                if (n <= 0) break; // EPIPE et al.; the exit status tells the story
                written += static_cast<std::size_t>(n);
            }
            ::close(fd);
        });

        std::string reply;
        char buf[65536];
        ssize_t n;
        while ((n = ::read(from_child[0], buf, sizeof buf)) > 0) reply.append(buf, static_cast<std::size_t>(n));
        ::close(from_child[0]);
        writer.join();

        int status = 0;
        ::waitpid(pid, &status, 0);
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
            fail(Errc::runtime, "external scorer exited abnormally: " + command_);

        std::map<long, TextScore> by_id;
        std::istringstream lines(reply);
        std::string line;
        while (std::getline(lines, line)) {
            if (util::trim(line).empty()) continue;
            json parsed;
            try {
                parsed = json::parse(line);
                TextScore s;
                s.sentiment = parsed.at("sentiment").get<double>();
                s.useful = parsed.at("useful").get<bool>();
                s.toxic = parsed.at("toxic").get<bool>();
                by_id[parsed.at("id").get<long>()] = s;
            } catch (const json::exception&) {
                fail(Errc::runtime, "external scorer replied with malformed line: " + line);
            }
        }

        std::vector<TextScore> out;
        out.reserve(items.size());
        for (const auto& [id, body] : items) {
            auto it = by_id.find(id);
            if (it == by_id.end())
                fail(Errc::runtime, "external scorer reply missing id " + std::to_string(id));
            out.push_back(it->second);
        }
        return out;
    }

private:
    std::string command_;
};

} // namespace

std::unique_ptr<TextScorer> make_external_scorer(std::string command) {
    return std::make_unique<ExternalScorer>(std::move(command));
}

// ---------------------------------------------------------------------------
// Readability.
// ---------------------------------------------------------------------------

long count_syllables(std::string_view word) {
    std::string w;
    for (char c : word)
        if (std::isalpha(static_cast<unsigned char>(c)))
            w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (w.empty()) return 0;

    auto is_vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    long groups = 0;
    bool in_group = false;
    for (char c : w) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    bool ends_le = w.size() >= 2 && w[w.size() - 2] == 'l' && w.back() == 'e';
    if (w.back() == 'e' && !ends_le && w.size() > 2) --groups;
    return std::max(1L, groups);
}

std::optional<double> flesch_reading_ease(std::string_view body) {
    std::string text = strip_markup(body);

    long words = 0;
    long syllables = 0;
    long sentences = 0;
    long words_in_segment = 0;

    std::size_t pos = 0;
    auto flush_segment = [&] {
        if (words_in_segment > 0) ++sentences;
        words_in_segment = 0;
    };
    while (pos < text.size()) {
        char c = text[pos];
        if (c == '.' || c == '!' || c == '?') {
            while (pos < text.size() &&
                   (text[pos] == '.' || text[pos] == '!' || text[pos] == '?'))
                ++pos;
            flush_segment();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        bool has_alpha = false;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
               text[end] != '.' && text[end] != '!' && text[end] != '?') {
            if (std::isalpha(static_cast<unsigned char>(text[end]))) has_alpha = true;
            ++end;
        }
        if (has_alpha) {
            ++words;
            ++words_in_segment;
            syllables += count_syllables(text.substr(pos, end - pos));
        }
        pos = end;
    }
    flush_segment();

    if (words == 0) return std::nullopt;
    if (sentences == 0) sentences = 1;
    double w = static_cast<double>(words);
    double s = static_cast<double>(sentences);
    double syl = static_cast<double>(syllables);
    return 206.835 - 1.015 * (w / s) - 84.6 * (syl / w);
}

// ---------------------------------------------------------------------------
// Gender table.
// ---------------------------------------------------------------------------

namespace {

std::string normalize_name(std::string_view name) {
    std::string out;
    for (char c : name)
        if (std::isalpha(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Shared TSV scaffolding: "# <version>" header, then key<TAB>value lines.
template <typename Fn>
std::string parse_tsv(std::string_view text, std::string_view what, Fn&& on_row) {
    std::string version;
    std::size_t pos = 0;
    long line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        std::string trimmed = util::trim(line);
        if (!trimmed.empty()) {
            if (trimmed.front() == '#') {
                if (version.empty()) version = util::trim(trimmed.substr(1));
            } else {
                auto tab = line.find('\t');
                if (tab == std::string_view::npos)
                    fail(Errc::config, std::string(what) + ": line " + std::to_string(line_no) +
                                           " is not key<TAB>value");
                on_row(util::trim(line.substr(0, tab)), util::trim(line.substr(tab + 1)), line_no);
            }
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return version;
}

} // namespace

const GenderTable& GenderTable::bundled() {
    static const GenderTable table = from_tsv_text(tables::gender_tsv());
    return table;
}

GenderTable GenderTable::from_tsv(const std::filesystem::path& path) {
    return from_tsv_text(util::read_text_file(path));
}

GenderTable GenderTable::from_tsv_text(std::string_view text) {
    GenderTable table;
    table.version = parse_tsv(text, "gender table", [&](std::string key, std::string value, long line_no) {
        Gender g;
        if (value == "female" || value == "mostly_female") g = Gender::female;
        else if (value == "male" || value == "mostly_male") g = Gender::male;
        else if (value == "androgynous" || value == "unknown") g = Gender::unknown;
        else
            fail(Errc::config,
                 "gender table: unknown category '" + value + "' on line " + std::to_string(line_no));
        table.by_name_[normalize_name(key)] = g;
    });
    return table;
}

Gender GenderTable::lookup_name(std::string_view given_name) const {
    std::string key = normalize_name(given_name);
    if (key.empty()) return Gender::unknown;
    auto it = by_name_.find(key);
    return it == by_name_.end() ? Gender::unknown : it->second;
}

Gender GenderTable::lookup(const UserProfile& profile) const {
    if (profile.display_name && !util::trim(*profile.display_name).empty()) {
        std::string first = util::split(util::trim(*profile.display_name), ' ').front();
        return lookup_name(first);
    }
    return lookup_name(profile.login);
}

// ---------------------------------------------------------------------------
// Country table.
// ---------------------------------------------------------------------------

namespace {

// Lowercase, drop periods, fold remaining punctuation to spaces, collapse.
std::string normalize_phrase(std::string_view phrase) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : phrase) {
        if (c == '.') continue;
        if (std::isalnum(c) || c >= 0x80) { // keep UTF-8 continuation bytes
            if (pending_space && !out.empty()) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(c));
        } else {
            pending_space = true;
        }
    }
    return out;
}

} // namespace

const CountryTable& CountryTable::bundled() {
    static const CountryTable table = from_tsv_text(tables::country_tsv());
    return table;
}

CountryTable CountryTable::from_tsv(const std::filesystem::path& path) {
    return from_tsv_text(util::read_text_file(path));
}

CountryTable CountryTable::from_tsv_text(std::string_view text) {
    CountryTable table;
    table.version = parse_tsv(text, "country table", [&](std::string key, std::string value, long line_no) {
        if (value.empty())
            fail(Errc::config, "country table: empty country on line " + std::to_string(line_no));
        table.by_phrase_[normalize_phrase(key)] = value;
    });
    return table;
}

std::optional<std::string> CountryTable::lookup(std::string_view location_raw) const {
    auto find = [&](const std::string& key) -> std::optional<std::string> {
        if (key.empty()) return std::nullopt;
        auto it = by_phrase_.find(key);
        if (it == by_phrase_.end()) return std::nullopt;
        return it->second;
    };

    // Whole phrase, then comma-separated segments, then single tokens.
    if (auto hit = find(normalize_phrase(location_raw))) return hit;
    for (const auto& segment : util::split(location_raw, ',')) {
        if (auto hit = find(normalize_phrase(segment))) return hit;
    }
    for (const auto& token : util::split(normalize_phrase(location_raw), ' ')) {
        if (auto hit = find(token)) return hit;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Participant-level aggregates.
// ---------------------------------------------------------------------------

std::optional<double> gender_ratio(const std::vector<const UserProfile*>& participants,
                                   const GenderTable& table) {
    std::set<std::string> seen;
    long female = 0, male = 0;
    for (const UserProfile* profile : participants) {
        if (!profile || !seen.insert(profile->login).second) continue;
        switch (table.lookup(*profile)) {
            case Gender::female: ++female; break;
            case Gender::male: ++male; break;
            case Gender::unknown: break;
        }
    }
    if (female + male == 0) return std::nullopt;
    return static_cast<double>(female) / static_cast<double>(female + male);
}

long location_coverage(const std::vector<const UserProfile*>& participants,
                       const CountryTable& table) {
    std::set<std::string> seen;
    std::set<std::string> countries;
    for (const UserProfile* profile : participants) {
        if (!profile || !seen.insert(profile->login).second) continue;
        if (!profile->location_raw) continue;
        if (auto country = table.lookup(*profile->location_raw)) countries.insert(*country);
    }
    return static_cast<long>(countries.size());
}

// ---------------------------------------------------------------------------
// Affiliation.
// ---------------------------------------------------------------------------

std::string affiliation_of(std::string_view email) {
    auto at = email.rfind('@');
    if (at == std::string_view::npos || at + 1 >= email.size()) return "unaffiliated";
    std::string domain = util::to_lower(util::trim(email.substr(at + 1)));
    if (domain.empty() || tables::generic_email_providers().count(domain)) return "unaffiliated";
    return domain;
}

std::string_view bundled_gender_tsv() { return tables::gender_tsv(); }
std::string_view bundled_country_tsv() { return tables::country_tsv(); }

} // namespace repoecg::enrich
