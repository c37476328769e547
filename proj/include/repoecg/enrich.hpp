#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repoecg/records.hpp"

namespace repoecg::enrich {

// ---------------------------------------------------------------------------
// Diversity.
// ---------------------------------------------------------------------------

// Shannon diversity H' = -sum p_i ln p_i over category proportions.
// Throws Error(runtime) on an empty input or nonpositive counts.
double shannon_index(const std::map<std::string, long>& category_counts);

// ---------------------------------------------------------------------------
// Text scoring.
// ---------------------------------------------------------------------------

struct TextScore {
    double sentiment = 0.0; // in [-1, 1]
    bool useful = false;
    bool toxic = false;
};

// Removes fenced code blocks, inline code spans, and URLs so markup never
// leaks into scores or readability.
std::string strip_markup(std::string_view markdown);

// Batch scorer interface. Items are (id, raw markdown body); results come
// back in input order. Implementations must be deterministic per input.
class TextScorer {
public:
    virtual ~TextScorer() = default;
    virtual std::vector<TextScore> score(
        const std::vector<std::pair<long, std::string>>& items) = 0;
};

// Bundled deterministic scorer: sentiment from a signed word list (mean of
// matched word values), useful iff the text references code (backtick span,
// path, or an imperative verb from a bundled list), toxic iff it hits the
// bundled profanity lexicon. Empty text scores {0, false, false}.
std::unique_ptr<TextScorer> make_lexicon_scorer();

// External scorer subprocess: NDJSON {"id","text"} on stdin, {"id",
// "sentiment","useful","toxic"} per line on stdout. A crash or malformed
// reply throws Error(runtime); callers turn that into an absent month value
// plus a counted warning.
std::unique_ptr<TextScorer> make_external_scorer(std::string command);

// Score one body with the bundled lexicon rules (convenience for bindings
// and tests).
TextScore score_text(std::string_view body);

// ---------------------------------------------------------------------------
// Readability.
// ---------------------------------------------------------------------------

// Flesch Reading Ease of the markup-stripped text; empty/word-free text is
// absent. 206.835 - 1.015 (words/sentences) - 84.6 (syllables/words).
std::optional<double> flesch_reading_ease(std::string_view body);

long count_syllables(std::string_view word); // vowel-group heuristic, min 1

// ---------------------------------------------------------------------------
// Gender and location tables (offline, versioned TSV).
// ---------------------------------------------------------------------------

enum class Gender { female, male, unknown };

class GenderTable {
public:
    static const GenderTable& bundled();
    static GenderTable from_tsv(const std::filesystem::path& path);
    static GenderTable from_tsv_text(std::string_view text);

    // Looks up the participant's given name (first token of the display name,
    // falling back to the login). mostly_* categories count toward their
    // majority side; androgynous and missing names are unknown.
    Gender lookup(const UserProfile& profile) const;
    Gender lookup_name(std::string_view given_name) const;

    std::string version;

private:
    std::map<std::string, Gender> by_name_;
};

class CountryTable {
public:
    static const CountryTable& bundled();
    static CountryTable from_tsv(const std::filesystem::path& path);
    static CountryTable from_tsv_text(std::string_view text);

    // Resolves a free-text location to a country name: the normalized whole
    // phrase first, then comma-separated segments, then single tokens.
    std::optional<std::string> lookup(std::string_view location_raw) const;

    std::string version;

private:
    std::map<std::string, std::string> by_phrase_;
};

// female / (female + male) over the given profiles (callers pass distinct
// participants); absent when nobody resolves to either side.
std::optional<double> gender_ratio(const std::vector<const UserProfile*>& participants,
                                   const GenderTable& table);

// Count of distinct resolved countries among the participants.
long location_coverage(const std::vector<const UserProfile*>& participants,
                       const CountryTable& table);

// ---------------------------------------------------------------------------
// Affiliation.
// ---------------------------------------------------------------------------

// Organizational affiliation key for a commit author email: the email domain,
// with generic mail providers (and missing domains) bucketed as
// "unaffiliated".
std::string affiliation_of(std::string_view email);

// Embedded table sources (same grammar as the on-disk TSV overrides).
std::string_view bundled_gender_tsv();
std::string_view bundled_country_tsv();

} // namespace repoecg::enrich
