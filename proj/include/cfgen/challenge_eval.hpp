#pragma once

// WinoMT-style gender accuracy: find the gender of the primary entity in a
// translation, then aggregate accuracy, stereotype gap and F1 gap.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfgen/lexicon.hpp"
#include "json.hpp"

namespace cfgen {

enum class EntityGender { Male, Female, Unknown };
enum class Stereotype { Pro, Anti, Neither };

std::string_view to_string(EntityGender g);
std::string_view to_string(Stereotype s);
EntityGender parse_entity_gender(std::string_view s);  // male/female, any case
Stereotype parse_stereotype(std::string_view s);       // pro/anti/neither, any case

struct ChallengeItem {
  EntityGender gold = EntityGender::Male;
  int entity_index = 0;
  std::string source;
  std::string entity_word;
  Stereotype stereotype = Stereotype::Neither;
};

// Rows: gold, entity_index, source, entity_word[, stereotype]. Without a
// fifth column the stereotype comes from `sidecar` (one label per line);
// with neither every item is Neither. Throws FormatError / LoadError.
std::vector<ChallengeItem> parse_challenge_set(std::string_view tsv,
                                               const std::vector<std::string>* sidecar = nullptr);
std::vector<ChallengeItem> load_challenge_set(const std::filesystem::path& path,
                                              const std::optional<std::filesystem::path>& sidecar = {});

struct GenderPrediction {
  EntityGender predicted = EntityGender::Unknown;
  std::optional<std::string> matched_form;
};

// Leftmost, then longest, word-bounded case-insensitive match of the
// entity's target forms. Epicene forms are resolved by the article right
// before them. Throws ConfigError when the lexicon lacks the entity word.
GenderPrediction extract_predicted_gender(const ChallengeItem& item, std::string_view translation,
                                          const AnimacyLexicon& lex, std::string_view lang);

// Article gender for epicene resolution; Unknown when the article says
// nothing (fr l', plural les, ...). `article` may end in an apostrophe.
EntityGender article_gender(std::string_view article, std::string_view lang);

struct MetricsReport {
  double acc = 0;
  double pro = 0;
  double anti = 0;
  double delta_s = 0;
  double f1_male = 0;
  double f1_female = 0;
  double delta_g = 0;
  std::size_t total = 0;
  std::size_t pro_count = 0;
  std::size_t anti_count = 0;
  std::size_t neither_count = 0;
  // [gold Male/Female][predicted Male/Female/Unknown]
  std::array<std::array<std::size_t, 3>, 2> confusion{};
};

// Throws ContractError when the sizes differ.
MetricsReport compute_metrics(const std::vector<ChallengeItem>& items,
                              const std::vector<GenderPrediction>& predictions);

// Display values rounded to one decimal plus a full-precision "raw" block.
nlohmann::ordered_json metrics_to_json(const MetricsReport& m);

// Header plus one row per item: line, gold, stereotype, entity, predicted,
// matched form ("_" when none), correct.
std::string audit_tsv(const std::vector<ChallengeItem>& items,
                      const std::vector<GenderPrediction>& predictions);

}  // namespace cfgen
