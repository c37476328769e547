#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "repoecg/gitmine.hpp"
#include "repoecg/stg.hpp"
#include "repoecg/wordscore.hpp"

namespace repoecg::cli {

struct ProjectEntry {
    std::string slug;                       // owner/name
    std::optional<std::string> clone_path;  // local git clone for commit mining
};

struct Config {
    std::filesystem::path data_dir = "data";
    std::filesystem::path out_dir = "out";
    std::string api_base_url = "https://api.github.com";
    std::vector<ProjectEntry> projects;
    std::string scorer = "bundled"; // or "external:<command>"
    std::string gender_ratio = "female"; // numerator side: female | male
    std::optional<std::filesystem::path> gender_table;
    std::optional<std::filesystem::path> country_table;
    gitmine::RiskThresholds thresholds;
    stg::StyleConfig style;
    words::FightingWordsOptions words;
    int parallel = 4;
};

// Plain-text key = value sections:
//
//   [core]
//   data_dir = data
//   out_dir = out
//   api_base_url = https://api.github.com
//
//   [projects]
//   openmc-dev/openmc = /clones/openmc
//   mdanalysis/mdanalysis
//
// Unknown keys → Error(config). See README for the full key list.
Config parse_config_text(std::string_view text);
Config load_config(const std::filesystem::path& path);

inline constexpr const char* kDefaultConfigPath = "repoecg.toml";
inline constexpr const char* kTokenEnvVar = "REPOECG_TOKEN";

} // namespace repoecg::cli
