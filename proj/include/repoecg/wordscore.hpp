#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace repoecg::words {

// Lowercases; removes fenced code blocks, inline code spans, URLs, and
// @-mentions; strips punctuation down to word tokens; collapses whitespace.
std::string clean_text(std::string_view raw);

struct FightingWordsOptions {
    double alpha = 0.1; // symmetric Dirichlet prior per token
    int ngram_max = 2;  // unigrams + bigrams
    long min_count = 5; // combined-count vocabulary floor
};

struct TokenZScore {
    std::string token;
    long count_useful = 0;
    long count_not_useful = 0;
    double log_odds = 0.0; // positive → associated with the useful class
    double z = 0.0;
    int top10_class = 0;   // +1 top-10 useful, -1 top-10 not-useful, 0 neither
};

// Log-odds with informative Dirichlet prior over the two corpora (inputs are
// cleaned texts; tokens are whitespace-split words and joined bigrams).
// Result sorted by z descending, ties broken lexicographically by token.
// Throws Error(single_class_corpus) when either corpus is empty.
std::vector<TokenZScore> fighting_words(const std::vector<std::string>& useful_texts,
                                        const std::vector<std::string>& not_useful_texts,
                                        const FightingWordsOptions& options = {});

// fighting_words.csv: token,count_useful,count_not_useful,log_odds,z,top10_class
std::string fighting_words_csv(const std::vector<TokenZScore>& scores);

// Scatter plot (x = log-scaled combined count, y = z) with the top-10 tokens
// of each class annotated. Deterministic bytes.
std::string scatter_svg(const std::vector<TokenZScore>& scores, std::string_view title);

} // namespace repoecg::words
