#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cfgen/lexicon.hpp"
#include "cfgen/reinflect.hpp"

namespace cfgen::test {

inline std::filesystem::path data_dir() { return CFGEN_DATA_DIR; }
inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(CFGEN_FIXTURE_DIR) / rel;
}

struct Resources {
  AnimacyLexicon animacy;
  InflectionLexicon inflections;
  std::vector<SuffixRule> rules;
};

inline const Resources& resources() {
  static const Resources r = [] {
    Resources out;
    out.animacy = load_animacy_lexicon(data_dir() / "animacy.tsv");
    load_inflections(data_dir() / "inflections.tsv", out.inflections);
    load_contractions(data_dir() / "contractions.tsv", out.inflections);
    out.rules = load_suffix_rules(data_dir() / "suffix_rules.tsv");
    return out;
  }();
  return r;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("cfgen_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace cfgen::test
