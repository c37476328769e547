#include "repoecg/config.hpp"

#include <charconv>
#include <set>

#include "repoecg/errors.hpp"
#include "repoecg/util.hpp"

namespace repoecg::cli {

namespace {

[[noreturn]] void bad(std::size_t line_no, const std::string& what) {
    fail(Errc::config, "config line " + std::to_string(line_no) + ": " + what);
}

double parse_real(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) bad(line_no, "expected a number, got '" + std::string(text) + "'");
    return value;
}

long parse_integer(std::string_view text, std::size_t line_no) {
    long value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) bad(line_no, "expected an integer, got '" + std::string(text) + "'");
    return value;
}

bool valid_slug(std::string_view slug) {
    const std::size_t slash = slug.find('/');
    if (slash == 0 || slash == std::string_view::npos || slash + 1 == slug.size()) return false;
    if (slug.find('/', slash + 1) != std::string_view::npos) return false;
    for (char c : slug) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' || c == '/';
        if (!ok) return false;
    }
    return true;
}

} // namespace

Config parse_config_text(std::string_view text) {
    Config config;
    std::string section;
    std::set<std::string> seen_slugs;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                        : eol - pos));
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = util::trim(line);

        if (!line.empty()) {
            if (line.front() == '[') {
                if (line.back() != ']') bad(line_no, "unterminated section header");
                section = line.substr(1, line.size() - 2);
                if (section != "core" && section != "projects" && section != "thresholds" &&
                    section != "style" && section != "words")
                    bad(line_no, "unknown section [" + section + "]");
            } else if (section.empty()) {
                bad(line_no, "entry before any [section] header");
            } else {
                std::string key;
                std::string value;
                if (std::size_t eq = line.find('='); eq != std::string::npos) {
                    key = util::trim(line.substr(0, eq));
                    value = util::trim(line.substr(eq + 1));
                } else {
                    key = line;
                }
                if (key.empty()) bad(line_no, "missing key");

                if (section == "projects") {
                    if (!valid_slug(key)) bad(line_no, "project must be owner/name, got '" + key + "'");
                    if (!seen_slugs.insert(key).second) bad(line_no, "duplicate project " + key);
                    ProjectEntry entry;
                    entry.slug = key;
                    if (!value.empty()) entry.clone_path = value;
                    config.projects.push_back(std::move(entry));
                } else if (value.empty()) {
                    bad(line_no, "key '" + key + "' needs a value");
                } else if (section == "core") {
                    if (key == "data_dir") config.data_dir = value;
                    else if (key == "out_dir") config.out_dir = value;
                    else if (key == "api_base_url") config.api_base_url = value;
                    else if (key == "scorer") {
                        if (value != "bundled" && value.rfind("external:", 0) != 0)
                            bad(line_no, "scorer must be 'bundled' or 'external:<command>'");
                        if (value.rfind("external:", 0) == 0 &&
                            util::trim(value.substr(9)).empty())
                            bad(line_no, "external scorer needs a command");
                        config.scorer = value;
                    } else if (key == "gender_ratio") {
                        if (value != "female" && value != "male")
                            bad(line_no, "gender_ratio must be 'female' or 'male'");
                        config.gender_ratio = value;
                    } else if (key == "gender_table") config.gender_table = value;
                    else if (key == "country_table") config.country_table = value;
                    else if (key == "parallel") {
                        const long n = parse_integer(value, line_no);
                        if (n < 1 || n > 64) bad(line_no, "parallel must be in 1..64");
                        config.parallel = static_cast<int>(n);
                    } else bad(line_no, "unknown [core] key '" + key + "'");
                } else if (section == "thresholds") {
                    const long n = parse_integer(value, line_no);
                    if (n < 0) bad(line_no, "thresholds must be nonnegative");
                    if (key == "max_size_loc") config.thresholds.max_size_loc = n;
                    else if (key == "max_cyclomatic") config.thresholds.max_cyclomatic = n;
                    else if (key == "max_params") config.thresholds.max_params = n;
                    else bad(line_no, "unknown [thresholds] key '" + key + "'");
                } else if (section == "style") {
                    if (key == "font_family") config.style.font_family = value;
                    else if (key == "stroke_color") config.style.stroke_color = value;
                    else if (key == "absent_color") config.style.absent_color = value;
                    else if (key == "grid_color") config.style.grid_color = value;
                    else if (key == "background") config.style.background = value;
                    else {
                        const double v = parse_real(value, line_no);
                        if (v <= 0.0) bad(line_no, "style dimensions must be positive");
                        if (key == "lane_height") config.style.lane_height = v;
                        else if (key == "label_width") config.style.label_width = v;
                        else if (key == "decade_px") config.style.decade_px = v;
                        else if (key == "spike_base_px") config.style.spike_base_px = v;
                        else if (key == "period_px_per_decade") config.style.period_px_per_decade = v;
                        else if (key == "period_max_decades") config.style.period_max_decades = v;
                        else bad(line_no, "unknown [style] key '" + key + "'");
                    }
                } else if (section == "words") {
                    if (key == "alpha") {
                        const double v = parse_real(value, line_no);
                        if (v <= 0.0) bad(line_no, "alpha must be positive");
                        config.words.alpha = v;
                    } else if (key == "ngram_max") {
                        const long n = parse_integer(value, line_no);
                        if (n < 1 || n > 4) bad(line_no, "ngram_max must be in 1..4");
                        config.words.ngram_max = static_cast<int>(n);
                    } else if (key == "min_count") {
                        const long n = parse_integer(value, line_no);
                        if (n < 1) bad(line_no, "min_count must be at least 1");
                        config.words.min_count = n;
                    } else bad(line_no, "unknown [words] key '" + key + "'");
                }
            }
        }

        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return config;
}

Config load_config(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        fail(Errc::config, "config file not found: " + path.string());
    return parse_config_text(util::read_text_file(path));
}

} // namespace repoecg::cli
