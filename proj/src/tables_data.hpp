#pragma once

// Embedded default lexicons and lookup tables. They use the same TSV grammar
// as the on-disk override files so either source goes through one parser.

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace repoecg::enrich::tables {

std::string_view gender_tsv();
std::string_view country_tsv();

const std::vector<std::pair<std::string, double>>& sentiment_words();
const std::set<std::string>& imperative_verbs();
const std::set<std::string>& profanity();
const std::set<std::string>& generic_email_providers();

} // namespace repoecg::enrich::tables
