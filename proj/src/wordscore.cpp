#include "repoecg/wordscore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "repoecg/errors.hpp"
#include "repoecg/util.hpp"

namespace repoecg::words {

namespace {

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_mention_byte(unsigned char c) {
    return std::isalnum(c) != 0 || c == '-' || c == '_';
}

std::string drop_fenced_blocks(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_fence = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        std::size_t first = line.find_first_not_of(" \t");
        bool fence_line = first != std::string_view::npos &&
                          (line.substr(first).rfind("```", 0) == 0 ||
                           line.substr(first).rfind("~~~", 0) == 0);
        if (fence_line) {
            in_fence = !in_fence;
        } else if (!in_fence) {
            out.append(line);
            out += '\n';
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

std::string drop_inline_code(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == '`') {
            std::size_t close = text.find('`', pos + 1);
            if (close == std::string_view::npos) {
                out.append(text.substr(pos + 1)); // unmatched: keep the text
                break;
            }
            pos = close + 1;
            continue;
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
        if (text.substr(pos).rfind("http://", 0) == 0 ||
            text.substr(pos).rfind("https://", 0) == 0) {
            while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
            continue;
        }
        out += text[pos++];
    }
    return out;
}

std::string drop_mentions(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == '@' && pos + 1 < text.size() &&
            is_mention_byte(static_cast<unsigned char>(text[pos + 1]))) {
            ++pos;
            while (pos < text.size() && is_mention_byte(static_cast<unsigned char>(text[pos])))
                ++pos;
            continue;
        }
        out += text[pos++];
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (c == ' ') {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

} // namespace

std::string clean_text(std::string_view raw) {
    std::string text = drop_mentions(drop_urls(drop_inline_code(drop_fenced_blocks(raw))));
    text = util::to_lower(text);

    std::string flat;
    flat.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '\'') continue; // contractions join: don't -> dont
        if (c == 0xE2 && i + 2 < text.size() &&
            static_cast<unsigned char>(text[i + 1]) == 0x80 &&
            static_cast<unsigned char>(text[i + 2]) == 0x99) {
            i += 2; // typographic apostrophe
            continue;
        }
        flat += is_word_byte(c) ? text[i] : ' ';
    }

    std::string out;
    out.reserve(flat.size());
    bool pending_space = false;
    for (char c : flat) {
        if (c == ' ') {
            pending_space = !out.empty();
        } else {
            if (pending_space) out += ' ';
            pending_space = false;
            out += c;
        }
    }
    return out;
}

std::vector<TokenZScore> fighting_words(const std::vector<std::string>& useful_texts,
                                        const std::vector<std::string>& not_useful_texts,
                                        const FightingWordsOptions& options) {
    if (!(options.alpha > 0.0)) fail(Errc::runtime, "prior alpha must be positive");
    if (options.ngram_max < 1) fail(Errc::runtime, "ngram_max must be at least 1");
    if (options.min_count < 1) fail(Errc::runtime, "min_count must be at least 1");

    std::map<std::string, std::pair<long, long>> counts; // token -> (useful, not useful)
    long raw_tokens_useful = 0;
    long raw_tokens_not = 0;

    auto accumulate = [&](const std::vector<std::string>& texts, bool useful, long& raw_total) {
        for (const auto& text : texts) {
            const std::vector<std::string> words = tokenize(text);
            for (std::size_t i = 0; i < words.size(); ++i) {
                std::string gram = words[i];
                for (int n = 1; n <= options.ngram_max; ++n) {
                    if (n > 1) {
                        if (i + static_cast<std::size_t>(n) > words.size()) break;
                        gram += ' ';
                        gram += words[i + static_cast<std::size_t>(n) - 1];
                    }
                    auto& entry = counts[gram];
                    (useful ? entry.first : entry.second) += 1;
                    ++raw_total;
                }
            }
        }
    };
    accumulate(useful_texts, true, raw_tokens_useful);
    accumulate(not_useful_texts, false, raw_tokens_not);

    if (raw_tokens_useful == 0 || raw_tokens_not == 0)
        fail(Errc::single_class_corpus,
             "fighting-words needs utterances from both classes; one corpus is empty");

    // Vocabulary floor, then class totals over the surviving vocabulary.
    std::vector<std::pair<std::string, std::pair<long, long>>> vocab;
    long n_useful = 0;
    long n_not = 0;
    for (const auto& [token, entry] : counts) {
        if (entry.first + entry.second < options.min_count) continue;
        vocab.emplace_back(token, entry);
        n_useful += entry.first;
        n_not += entry.second;
    }

    const double alpha = options.alpha;
    const double alpha0 = alpha * static_cast<double>(vocab.size());

    std::vector<TokenZScore> scores;
    scores.reserve(vocab.size());
    for (const auto& [token, entry] : vocab) {
        const double y1 = static_cast<double>(entry.first);
        const double y2 = static_cast<double>(entry.second);
        const double denom1 = std::max(static_cast<double>(n_useful) + alpha0 - y1 - alpha, 1e-12);
        const double denom2 = std::max(static_cast<double>(n_not) + alpha0 - y2 - alpha, 1e-12);
        const double delta = std::log((y1 + alpha) / denom1) - std::log((y2 + alpha) / denom2);
        const double variance = 1.0 / (y1 + alpha) + 1.0 / (y2 + alpha);
        TokenZScore score;
        score.token = token;
        score.count_useful = entry.first;
        score.count_not_useful = entry.second;
        score.log_odds = delta;
        score.z = delta / std::sqrt(variance);
        scores.push_back(std::move(score));
    }

    // Top-10 flags per class before the final ordering; both classes use the
    // same lexicographic tiebreak so swapping the corpora mirrors the flags.
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    auto by_z_desc = [&](std::size_t a, std::size_t b) {
        if (scores[a].z != scores[b].z) return scores[a].z > scores[b].z;
        return scores[a].token < scores[b].token;
    };
    auto by_z_asc = [&](std::size_t a, std::size_t b) {
        if (scores[a].z != scores[b].z) return scores[a].z < scores[b].z;
        return scores[a].token < scores[b].token;
    };
    std::sort(order.begin(), order.end(), by_z_desc);
    long flagged = 0;
    for (std::size_t idx : order) {
        if (flagged >= 10 || !(scores[idx].z > 0.0)) break;
        scores[idx].top10_class = 1;
        ++flagged;
    }
    std::sort(order.begin(), order.end(), by_z_asc);
    flagged = 0;
    for (std::size_t idx : order) {
        if (flagged >= 10 || !(scores[idx].z < 0.0)) break;
        scores[idx].top10_class = -1;
        ++flagged;
    }

    std::sort(scores.begin(), scores.end(), [](const TokenZScore& a, const TokenZScore& b) {
        if (a.z != b.z) return a.z > b.z;
        return a.token < b.token;
    });
    return scores;
}

std::string fighting_words_csv(const std::vector<TokenZScore>& scores) {
    std::string out = "token,count_useful,count_not_useful,log_odds,z,top10_class\n";
    for (const auto& s : scores) {
        out += s.token + ',' + std::to_string(s.count_useful) + ',' +
               std::to_string(s.count_not_useful) + ',' + util::format_number(s.log_odds) + ',' +
               util::format_number(s.z) + ',' + std::to_string(s.top10_class) + '\n';
    }
    return out;
}

namespace {

std::string svg_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string px(double v) { return util::format_fixed(v, 2); }

} // namespace

std::string scatter_svg(const std::vector<TokenZScore>& scores, std::string_view title) {
    const double width = 640.0;
    const double height = 480.0;
    const double left = 58.0;
    const double right = 16.0;
    const double top = 34.0;
    const double bottom = 44.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double max_x = 1.0;
    double max_abs_z = 1.0;
    for (const auto& s : scores) {
        max_x = std::max(max_x,
                         std::log10(1.0 + static_cast<double>(s.count_useful + s.count_not_useful)));
        max_abs_z = std::max(max_abs_z, std::abs(s.z));
    }
    max_x *= 1.05;
    max_abs_z *= 1.1;

    auto sx = [&](double x) { return left + x / max_x * plot_w; };
    auto sy = [&](double z) { return top + (max_abs_z - z) / (2.0 * max_abs_z) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" +
           px(height) + "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\">\n";
    svg += "<style>\n";
    svg += ".bg{fill:#ffffff;}\n";
    svg += ".axis{stroke:#374151;stroke-width:1;fill:none;}\n";
    svg += ".zero{stroke:#d4d4d8;stroke-width:0.8;stroke-dasharray:3,3;fill:none;}\n";
    svg += ".pt{fill:#9ca3af;}\n";
    svg += ".pt.useful{fill:#14523d;}\n";
    svg += ".pt.notuseful{fill:#b91c1c;}\n";
    svg += "text{font-family:Helvetica, Arial, sans-serif;font-size:10px;fill:#1f2937;}\n";
    svg += ".ttl{font-size:13px;font-weight:bold;}\n";
    svg += ".lbl{font-size:9px;}\n";
    svg += "</style>\n";
    svg += "<rect class=\"bg\" x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(height) +
           "\"/>\n";
    svg += "<text class=\"ttl\" x=\"" + px(left) + "\" y=\"" + px(20.0) + "\">" +
           svg_escape(title) + "</text>\n";

    // Axes, zero line, and tick labels.
    svg += "<line class=\"axis\" x1=\"" + px(left) + "\" y1=\"" + px(top) + "\" x2=\"" + px(left) +
           "\" y2=\"" + px(top + plot_h) + "\"/>\n";
    svg += "<line class=\"axis\" x1=\"" + px(left) + "\" y1=\"" + px(top + plot_h) + "\" x2=\"" +
           px(left + plot_w) + "\" y2=\"" + px(top + plot_h) + "\"/>\n";
    svg += "<line class=\"zero\" x1=\"" + px(left) + "\" y1=\"" + px(sy(0.0)) + "\" x2=\"" +
           px(left + plot_w) + "\" y2=\"" + px(sy(0.0)) + "\"/>\n";
    for (int decade = 0; decade <= static_cast<int>(max_x); ++decade) {
        const double x = sx(static_cast<double>(decade));
        svg += "<line class=\"axis\" x1=\"" + px(x) + "\" y1=\"" + px(top + plot_h) + "\" x2=\"" +
               px(x) + "\" y2=\"" + px(top + plot_h + 4.0) + "\"/>\n";
        svg += "<text class=\"lbl\" x=\"" + px(x - 3.0) + "\" y=\"" + px(top + plot_h + 15.0) +
               "\">" + std::to_string(decade) + "</text>\n";
    }
    for (double z : {-max_abs_z, 0.0, max_abs_z}) {
        svg += "<text class=\"lbl\" x=\"" + px(left - 34.0) + "\" y=\"" + px(sy(z) + 3.0) + "\">" +
               util::format_fixed(z, 1) + "</text>\n";
    }
    svg += "<text class=\"lbl\" x=\"" + px(left + plot_w / 2.0 - 60.0) + "\" y=\"" +
           px(height - 8.0) + "\">combined count, log10(1+n)</text>\n";
    svg += "<text class=\"lbl\" x=\"" + px(10.0) + "\" y=\"" + px(top - 8.0) + "\">z</text>\n";

    for (const auto& s : scores) {
        const double x = sx(std::log10(1.0 + static_cast<double>(s.count_useful +
                                                                 s.count_not_useful)));
        const double y = sy(std::max(-max_abs_z, std::min(max_abs_z, s.z)));
        std::string cls = "pt";
        if (s.top10_class > 0) cls += " useful";
        if (s.top10_class < 0) cls += " notuseful";
        svg += "<circle class=\"" + cls + "\" cx=\"" + px(x) + "\" cy=\"" + px(y) +
               "\" r=\"2.2\"/>\n";
        if (s.top10_class != 0) {
            svg += "<text class=\"lbl\" x=\"" + px(x + 4.0) + "\" y=\"" + px(y + 3.0) + "\">" +
                   svg_escape(s.token) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace repoecg::words
