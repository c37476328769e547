#include "repoecg/util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include "repoecg/errors.hpp"

namespace repoecg::util {

namespace {

bool parse_int(std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace

std::int64_t parse_time_utc(std::string_view s) {
    // YYYY-MM-DDTHH:MM:SS followed by 'Z', an offset, or nothing.
    auto bad = [&]() -> std::int64_t {
        fail(Errc::schema_mismatch, "malformed timestamp: '" + std::string(s) + "'");
    };
    if (s.size() < 19) return bad();
    int y, mo, d, h, mi, se;
    if (!parse_int(s.substr(0, 4), y) || s[4] != '-' ||
        !parse_int(s.substr(5, 2), mo) || s[7] != '-' ||
        !parse_int(s.substr(8, 2), d) || (s[10] != 'T' && s[10] != ' ') ||
        !parse_int(s.substr(11, 2), h) || s[13] != ':' ||
        !parse_int(s.substr(14, 2), mi) || s[16] != ':' ||
        !parse_int(s.substr(17, 2), se)) {
        return bad();
    }
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') { // fractional seconds: ignore
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    int offset_s = 0;
    if (pos < s.size()) {
        char c = s[pos];
        if (c == 'Z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            int oh = 0, om = 0;
            // +hh:mm or +hhmm
            if (pos + 6 <= s.size() && s[pos + 3] == ':' &&
                parse_int(s.substr(pos + 1, 2), oh) && parse_int(s.substr(pos + 4, 2), om)) {
                pos += 6;
            } else if (pos + 5 <= s.size() &&
                       parse_int(s.substr(pos + 1, 2), oh) && parse_int(s.substr(pos + 3, 2), om)) {
                pos += 5;
            } else {
                return bad();
            }
            offset_s = (oh * 3600 + om * 60) * (c == '-' ? -1 : 1);
        } else {
            return bad();
        }
    }
    if (pos != s.size()) return bad();
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) return bad();

    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return bad();
    sys_days days{ymd};
    std::int64_t epoch = duration_cast<seconds>(days.time_since_epoch()).count();
    epoch += h * 3600 + mi * 60 + se;
    return epoch - offset_s;
}

std::string format_time_utc(std::int64_t epoch_seconds) {
    using namespace std::chrono;
    std::int64_t day_count = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --day_count;
    }
    year_month_day ymd{sys_days{days{day_count}}};
    int h = static_cast<int>(rem / 3600);
    int mi = static_cast<int>((rem % 3600) / 60);
    int se = static_cast<int>(rem % 60);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), h, mi, se);
    return buf;
}

YearMonth month_of(std::int64_t epoch_seconds) {
    using namespace std::chrono;
    std::int64_t day_count = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) --day_count;
    year_month_day ymd{sys_days{days{day_count}}};
    return YearMonth{int(ymd.year()), static_cast<int>(unsigned(ymd.month()))};
}

int month_ordinal(YearMonth ym) { return ym.year * 12 + (ym.month - 1); }

YearMonth month_from_ordinal(int ordinal) {
    int year = ordinal / 12;
    int rem = ordinal % 12;
    if (rem < 0) {
        rem += 12;
        --year;
    }
    return YearMonth{year, rem + 1};
}

std::string month_label(YearMonth ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

std::optional<YearMonth> parse_month_label(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    int y, m;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m)) return std::nullopt;
    if (m < 1 || m > 12) return std::nullopt;
    return YearMonth{y, m};
}

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) fail(Errc::runtime, "number formatting failed");
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    // Avoid "-0.00": normalize negative zero before printing.
    if (value == 0.0) value = 0.0;
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

double mean(const std::vector<double>& values) {
    if (values.empty()) fail(Errc::runtime, "mean of empty vector");
    return std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
}

double median(std::vector<double> values) {
    if (values.empty()) fail(Errc::runtime, "median of empty vector");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::runtime, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::runtime, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) fail(Errc::runtime, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace repoecg::util
