#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repoecg::util {

// ---------------------------------------------------------------------------
// Time. All timestamps in the code base are UTC epoch seconds; these helpers
// are the only place ISO-8601 text is parsed or produced.
// ---------------------------------------------------------------------------

// Parses "YYYY-MM-DDTHH:MM:SSZ" (fractional seconds ignored, numeric UTC
// offsets honored). Throws Error(schema_mismatch) on malformed input.
std::int64_t parse_time_utc(std::string_view iso8601);

// Formats epoch seconds as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_time_utc(std::int64_t epoch_seconds);

struct YearMonth {
    int year = 0;
    int month = 0; // 1..12
    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

YearMonth month_of(std::int64_t epoch_seconds);

// Months as a single integer for arithmetic: ordinal = year*12 + (month-1).
int month_ordinal(YearMonth ym);
YearMonth month_from_ordinal(int ordinal);

std::string month_label(YearMonth ym); // "2021-03"
std::optional<YearMonth> parse_month_label(std::string_view text);

// ---------------------------------------------------------------------------
// Numbers. CSV values use the shortest round-trip form so reruns are
// byte-identical; SVG coordinates use fixed decimals.
// ---------------------------------------------------------------------------

std::string format_number(double value);
std::string format_fixed(double value, int decimals);

// ---------------------------------------------------------------------------
// Strings.
// ---------------------------------------------------------------------------

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool starts_with(std::string_view s, std::string_view prefix);

// ---------------------------------------------------------------------------
// Small numerics used by several aggregators.
// ---------------------------------------------------------------------------

double mean(const std::vector<double>& values);   // empty input is a caller bug
double median(std::vector<double> values);        // copies; sorts internally

// ---------------------------------------------------------------------------
// Files.
// ---------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);

// Writes via a temp file + rename so a crash never leaves a half-written file.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace repoecg::util
