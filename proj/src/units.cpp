// Changed-unit extraction from unified diffs: reconstructs the post-change
// file image, finds function-like units per language, and attributes churn.
#include "repoecg/gitmine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "repoecg/util.hpp"

namespace repoecg::gitmine {

namespace {

// ---------------------------------------------------------------------------
// diff → post-change image
// ---------------------------------------------------------------------------

// The post-change text of one file as reconstructed from its unified diff
// (context plus added lines), with per-line change flags and deleted lines
// attributed to the position where they used to sit.
struct PostImage {
    std::vector<std::string> lines;
    std::vector<bool> changed;             // true for '+' lines
    std::map<std::size_t, long> deletions; // post-position → deleted-line count
};

PostImage build_post_image(std::string_view diff_text) {
    PostImage img;
    bool in_hunk = false;
    std::size_t pos = 0;
    while (pos <= diff_text.size()) {
        std::size_t eol = diff_text.find('\n', pos);
        std::string_view line = diff_text.substr(
            pos, eol == std::string_view::npos ? diff_text.size() - pos : eol - pos);
        if (util::starts_with(line, "@@")) {
            in_hunk = true;
        } else if (in_hunk && !line.empty()) {
            char tag = line.front();
            std::string_view body = line.substr(1);
            if (tag == ' ') {
                img.lines.emplace_back(body);
                img.changed.push_back(false);
            } else if (tag == '+') {
                img.lines.emplace_back(body);
                img.changed.push_back(true);
            } else if (tag == '-') {
                img.deletions[img.lines.size()] += 1;
            } else if (tag == '\\') {
                // "\ No newline at end of file"
            } else {
                in_hunk = false; // next file header or commit text
            }
        } else if (in_hunk && line.empty()) {
            // Git always emits the leading space on blank context lines, so a
            // truly empty line ends the hunk.
            in_hunk = false;
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return img;
}

// ---------------------------------------------------------------------------
// language detection
// ---------------------------------------------------------------------------

enum class Lang { none, clike, python, fortran };

Lang lang_of(std::string_view file_path) {
    auto dot = file_path.find_last_of('.');
    if (dot == std::string_view::npos) return Lang::none;
    std::string ext = util::to_lower(file_path.substr(dot + 1));
    static const std::set<std::string> clike = {"c",  "h",  "cc", "cpp", "cxx", "hpp", "hh",
                                                "hxx", "ipp", "java", "js", "jsx", "ts", "tsx",
                                                "cs", "go", "rs", "kt", "scala", "m", "mm",
                                                "swift", "php"};
    static const std::set<std::string> fortran = {"f", "for", "ftn", "f77", "f90", "f95", "f03",
                                                  "f08"};
    if (clike.count(ext)) return Lang::clike;
    if (ext == "py") return Lang::python;
    if (fortran.count(ext)) return Lang::fortran;
    return Lang::none;
}

// ---------------------------------------------------------------------------
// unit extraction
// ---------------------------------------------------------------------------

struct UnitSpan {
    std::string name;
    std::size_t begin = 0; // line index, inclusive
    std::size_t end = 0;   // line index, exclusive
    long param_count = 0;
    long cyclomatic = 1;
};

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Counts whole-word occurrences of `word` in `text`.
long count_word(std::string_view text, std::string_view word) {
    long count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(word, pos)) != std::string_view::npos) {
        bool left_ok = pos == 0 || !is_ident_char(text[pos - 1]);
        std::size_t after = pos + word.size();
        bool right_ok = after >= text.size() || !is_ident_char(text[after]);
        if (left_ok && right_ok) ++count;
        pos = after;
    }
    return count;
}

long count_substr(std::string_view text, std::string_view needle) {
    long count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string_view::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// Strips //-comments, /* */-comments and blanks string/char literal contents
// so brace tracking and keyword counting never trip on them.
std::vector<std::string> strip_clike_noise(const std::vector<std::string>& lines) {
    std::vector<std::string> out;
    out.reserve(lines.size());
    bool in_block_comment = false;
    for (const auto& raw : lines) {
        std::string code;
        code.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (in_block_comment) {
                if (raw[i] == '*' && i + 1 < raw.size() && raw[i + 1] == '/') {
                    in_block_comment = false;
                    ++i;
                }
                continue;
            }
            char c = raw[i];
            if (c == '/' && i + 1 < raw.size() && raw[i + 1] == '/') break;
            if (c == '/' && i + 1 < raw.size() && raw[i + 1] == '*') {
                in_block_comment = true;
                ++i;
                continue;
            }
            if (c == '"' || c == '\'') {
                char quote = c;
                code += quote;
                ++i;
                while (i < raw.size()) {
                    if (raw[i] == '\\') {
                        i += 2;
                        continue;
                    }
                    if (raw[i] == quote) break;
                    ++i;
                }
                code += quote; // literal contents dropped
                continue;
            }
            code += c;
        }
        out.push_back(std::move(code));
    }
    return out;
}

long clike_cyclomatic(std::string_view code) {
    long n = 1;
    n += count_word(code, "if");
    n += count_word(code, "for");
    n += count_word(code, "while");
    n += count_word(code, "case");
    n += count_word(code, "catch");
    n += count_substr(code, "&&");
    n += count_substr(code, "||");
    return n;
}

long params_in_list(std::string_view list) {
    std::string trimmed = util::trim(list);
    if (trimmed.empty() || trimmed == "void") return 0;
    long depth = 0, count = 1;
    for (char c : trimmed) {
        if (c == '(' || c == '<' || c == '[') ++depth;
        else if (c == ')' || c == '>' || c == ']') --depth;
        else if (c == ',' && depth == 0) ++count;
    }
    return count;
}

const std::set<std::string>& clike_non_function_keywords() {
    static const std::set<std::string> kw = {"if", "for", "while", "switch", "catch", "return",
                                             "sizeof", "do", "else"};
    return kw;
}

bool header_is_container(std::string_view header) {
    return count_word(header, "namespace") || count_word(header, "class") ||
           count_word(header, "struct") || count_word(header, "union") ||
           count_word(header, "enum") || count_word(header, "extern");
}

// Extracts the identifier immediately before the parameter list.
std::string function_name_from_header(std::string_view header, std::size_t open_paren) {
    std::size_t end = open_paren;
    while (end > 0 && std::isspace(static_cast<unsigned char>(header[end - 1]))) --end;
    std::size_t begin = end;
    while (begin > 0 && (is_ident_char(header[begin - 1]) || header[begin - 1] == '~')) --begin;
    if (begin == end) return {};
    return std::string(header.substr(begin, end - begin));
}

void find_clike_units(const std::vector<std::string>& lines, std::vector<UnitSpan>& units) {
    std::vector<std::string> code = strip_clike_noise(lines);
    std::string header;
    std::size_t header_start = 0;
    bool header_active = false;

    std::size_t i = 0;
    const std::size_t n = code.size();

    // Consumes a brace-balanced block starting after the '{' at (line, col).
    auto skip_block = [&](std::size_t line, std::size_t col) -> std::size_t {
        long depth = 1;
        std::size_t l = line, c = col + 1;
        while (l < n) {
            const std::string& text = code[l];
            for (; c < text.size(); ++c) {
                if (text[c] == '{') ++depth;
                else if (text[c] == '}') {
                    if (--depth == 0) return l;
                }
            }
            ++l;
            c = 0;
        }
        return n - 1;
    };

    while (i < n) {
        const std::string& text = code[i];
        for (std::size_t c = 0; c < text.size(); ++c) {
            char ch = text[c];
            if (ch == ';' || ch == '}') {
                header.clear();
                header_active = false;
                continue;
            }
            if (ch != '{') {
                if (!header_active && !std::isspace(static_cast<unsigned char>(ch))) {
                    header_active = true;
                    header_start = i;
                }
                if (header_active) header += ch;
                continue;
            }
            // Block opener: decide what the header introduces.
            std::string h = util::trim(header);
            header.clear();
            header_active = false;
            if (header_is_container(h)) continue; // descend transparently
            auto open_paren = h.find('(');
            bool looks_like_function = false;
            std::string name;
            long params = 0;
            if (open_paren != std::string::npos) {
                name = function_name_from_header(h, open_paren);
                if (!name.empty() && !clike_non_function_keywords().count(name)) {
                    auto close_paren = h.rfind(')');
                    if (close_paren != std::string::npos && close_paren > open_paren) {
                        looks_like_function = true;
                        params = params_in_list(
                            std::string_view(h).substr(open_paren + 1, close_paren - open_paren - 1));
                    }
                }
            }
            std::size_t close_line = skip_block(i, c);
            if (looks_like_function) {
                UnitSpan u;
                u.name = name;
                u.begin = header_start;
                u.end = close_line + 1;
                u.param_count = params;
                std::string span_code;
                for (std::size_t l = u.begin; l < u.end && l < n; ++l) {
                    span_code += code[l];
                    span_code += '\n';
                }
                u.cyclomatic = clike_cyclomatic(span_code);
                units.push_back(std::move(u));
            }
            // Continue scanning after the block (its contents are either a
            // finished unit or an initializer we do not descend into).
            i = close_line;
            break;
        }
        ++i;
    }
}

std::size_t indent_of(const std::string& line) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

long python_cyclomatic(std::string_view code) {
    long n = 1;
    n += count_word(code, "if");
    n += count_word(code, "elif");
    n += count_word(code, "for");
    n += count_word(code, "while");
    n += count_word(code, "except");
    n += count_word(code, "and");
    n += count_word(code, "or");
    return n;
}

void find_python_units(const std::vector<std::string>& lines, std::vector<UnitSpan>& units) {
    const std::size_t n = lines.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& line = lines[i];
        std::size_t ind = indent_of(line);
        std::string_view rest = std::string_view(line).substr(ind);
        if (util::starts_with(rest, "async def ")) rest.remove_prefix(6);
        if (!util::starts_with(rest, "def ")) continue;

        // Join the signature until its parentheses balance.
        std::string signature(rest);
        std::size_t sig_end = i;
        long depth = 0;
        bool closed = false;
        for (std::size_t j = i; j < n && !closed; ++j) {
            const std::string& s = lines[j];
            for (char c : (j == i ? signature : s)) {
                if (c == '(') ++depth;
                else if (c == ')') {
                    if (--depth == 0) {
                        closed = true;
                        break;
                    }
                }
            }
            sig_end = j;
            if (!closed && j > i) signature += " " + util::trim(s);
        }

        UnitSpan u;
        auto open = signature.find('(');
        auto name_end = open == std::string::npos ? signature.size() : open;
        u.name = util::trim(signature.substr(4, name_end - 4));
        if (auto close = signature.rfind(')'); open != std::string::npos &&
                                               close != std::string::npos && close > open) {
            u.param_count = params_in_list(
                std::string_view(signature).substr(open + 1, close - open - 1));
        }

        // Body: every following line indented deeper than the def.
        std::size_t end = sig_end + 1;
        std::size_t last_content = sig_end;
        while (end < n) {
            if (is_blank(lines[end])) {
                ++end;
                continue;
            }
            if (indent_of(lines[end]) <= ind) break;
            last_content = end;
            ++end;
        }
        u.begin = i;
        u.end = last_content + 1;
        std::string span_code;
        for (std::size_t l = u.begin; l < u.end; ++l) {
            span_code += lines[l];
            span_code += '\n';
        }
        u.cyclomatic = python_cyclomatic(span_code);
        units.push_back(std::move(u));
    }
}

long fortran_cyclomatic(std::string_view lower_code) {
    long n = 1;
    // "end if"/"end do" re-match the branch keyword, so they are backed out;
    // "endif"/"enddo" never match the bare word in the first place.
    n += count_word(lower_code, "if") - count_substr(lower_code, "end if");
    n += count_word(lower_code, "do") - count_substr(lower_code, "end do");
    n += count_word(lower_code, "case") - count_substr(lower_code, "select case");
    n += count_substr(lower_code, ".and.");
    n += count_substr(lower_code, ".or.");
    return std::max(1L, n);
}

void find_fortran_units(const std::vector<std::string>& lines, std::vector<UnitSpan>& units) {
    const std::size_t n = lines.size();
    std::size_t i = 0;
    while (i < n) {
        std::string lower = util::to_lower(util::trim(lines[i]));
        std::size_t kw = std::string::npos;
        for (std::string_view k : {"subroutine ", "function "}) {
            auto pos = lower.find(k);
            if (pos != std::string::npos && (pos == 0 || !is_ident_char(lower[pos - 1])) &&
                !util::starts_with(lower, "end")) {
                kw = pos + k.size();
                break;
            }
        }
        if (kw == std::string::npos) {
            ++i;
            continue;
        }
        UnitSpan u;
        u.begin = i;
        std::string after = lower.substr(kw);
        auto open = after.find('(');
        u.name = util::trim(open == std::string::npos ? after : after.substr(0, open));
        if (open != std::string::npos) {
            auto close = after.rfind(')');
            if (close != std::string::npos && close > open)
                u.param_count = params_in_list(std::string_view(after).substr(open + 1, close - open - 1));
        }
        std::size_t j = i + 1;
        for (; j < n; ++j) {
            std::string l = util::to_lower(util::trim(lines[j]));
            if (util::starts_with(l, "end subroutine") || util::starts_with(l, "end function") ||
                l == "end") {
                break;
            }
        }
        u.end = std::min(j + 1, n);
        std::string span_code;
        for (std::size_t l = u.begin; l < u.end; ++l) {
            span_code += util::to_lower(lines[l]);
            span_code += '\n';
        }
        u.cyclomatic = fortran_cyclomatic(span_code);
        units.push_back(std::move(u));
        i = u.end;
    }
}

// Churn attribution: changed post-lines go to the innermost unit containing
// them; deletions go to the innermost unit whose interior spans the gap.
void attribute_churn(const PostImage& img, std::vector<UnitSpan>& spans,
                     std::vector<ChangedUnit>& out, std::string_view file_path) {
    // Innermost = smallest span containing the position.
    auto innermost_for_line = [&](std::size_t line) -> UnitSpan* {
        UnitSpan* best = nullptr;
        for (auto& s : spans) {
            if (line >= s.begin && line < s.end) {
                if (!best || (s.end - s.begin) < (best->end - best->begin)) best = &s;
            }
        }
        return best;
    };
    auto innermost_for_gap = [&](std::size_t pos) -> UnitSpan* {
        UnitSpan* best = nullptr;
        for (auto& s : spans) {
            if (pos > s.begin && pos < s.end) {
                if (!best || (s.end - s.begin) < (best->end - best->begin)) best = &s;
            }
        }
        return best;
    };

    std::map<const UnitSpan*, long> churn;
    for (std::size_t i = 0; i < img.lines.size(); ++i) {
        if (!img.changed[i]) continue;
        if (UnitSpan* u = innermost_for_line(i)) churn[u] += 1;
    }
    for (const auto& [pos, count] : img.deletions) {
        if (UnitSpan* u = innermost_for_gap(pos)) churn[u] += count;
    }

    for (const auto& s : spans) {
        auto it = churn.find(&s);
        if (it == churn.end() || it->second <= 0) continue; // untouched unit
        ChangedUnit unit;
        unit.file_path = std::string(file_path);
        unit.unit_name = s.name;
        unit.size_loc = static_cast<long>(s.end - s.begin);
        unit.cyclomatic = s.cyclomatic;
        unit.param_count = s.param_count;
        unit.churn = it->second;
        out.push_back(std::move(unit));
    }
}

} // namespace

std::vector<ChangedUnit> extract_units(std::string_view diff_text, std::string_view file_path) {
    Lang lang = lang_of(file_path);
    if (lang == Lang::none) return {};
    PostImage img = build_post_image(diff_text);
    if (img.lines.empty() && img.deletions.empty()) return {};

    std::vector<UnitSpan> spans;
    switch (lang) {
        case Lang::clike: find_clike_units(img.lines, spans); break;
        case Lang::python: find_python_units(img.lines, spans); break;
        case Lang::fortran: find_fortran_units(img.lines, spans); break;
        case Lang::none: return {};
    }

    std::vector<ChangedUnit> out;
    attribute_churn(img, spans, out, file_path);
    return out;
}

DmmScores dmm_scores(const std::vector<ChangedUnit>& units, const RiskThresholds& thresholds) {
    DmmScores scores;
    if (units.empty()) return scores;
    long total = 0;
    long low_size = 0, low_complexity = 0, low_interfacing = 0;
    for (const auto& u : units) {
        total += u.churn;
        if (u.size_loc <= thresholds.max_size_loc) low_size += u.churn;
        if (u.cyclomatic <= thresholds.max_cyclomatic) low_complexity += u.churn;
        if (u.param_count <= thresholds.max_params) low_interfacing += u.churn;
    }
    if (total <= 0) return scores;
    scores.unit_size = static_cast<double>(low_size) / static_cast<double>(total);
    scores.unit_complexity = static_cast<double>(low_complexity) / static_cast<double>(total);
    scores.unit_interfacing = static_cast<double>(low_interfacing) / static_cast<double>(total);
    return scores;
}

} // namespace repoecg::gitmine
