#pragma once

// Fine-tuning corpus assembly: balanced original/counterfactual pairs, the
// handcrafted set, the neutral random mix, and the pronoun hazard lint.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cfgen/corpus_model.hpp"
#include "cfgen/selection.hpp"

namespace cfgen {

enum class LintKind { PronounMappingHazard, IdenticalCounterfactual };
std::string_view to_string(LintKind k);

struct LintFlag {
  std::string pair_id;
  LintKind kind = LintKind::PronounMappingHazard;
  std::string detail;
};

struct BalancedDataset {
  std::vector<ParallelPair> pairs;
  std::vector<LintFlag> flags;  // IdenticalCounterfactual, both members dropped
};

// Pairs each original with its counterfactual (matched by id), original
// first. Originals whose counterfactual target equals the original target
// after NFC normalization are dropped together with it; originals with no
// counterfactual are dropped as well. A counterfactual without an original
// throws ContractError.
BalancedDataset build_balanced_dataset(const std::vector<GenderedSelection>& originals,
                                       const std::vector<ParallelPair>& counterfactuals);

// Two-column TSV (en, tgt), loaded verbatim. Throws LoadError when empty.
std::vector<ParallelPair> parse_handcrafted(std::string_view tsv, const std::string& lang,
                                            std::string_view origin = "<memory>");
std::vector<ParallelPair> load_handcrafted(const std::filesystem::path& path,
                                           const std::string& lang);

struct SubjectPronouns {
  std::vector<std::string> masc;
  std::vector<std::string> fem;
};
// fr il/elle, es él/ella, it lui,egli/lei,ella. Empty for other languages.
const SubjectPronouns& subject_pronouns(std::string_view lang);

// Flags a pair whose English side has only feminine (masculine) subject
// pronouns while the target has only masculine (feminine) ones.
std::vector<LintFlag> lint_counterfactual_pair(const ParallelPair& pair);

struct DatasetRecipe {
  struct Component {
    std::string name;  // GB, Random or SB
    std::filesystem::path path;
  };
  std::vector<Component> components;
  std::uint64_t shuffle_seed = 0;
  std::string lang;
  bool strict_lint = false;
};

// "key = value" lines, '#' comments. Keys: lang, seed, strict_lint, and one
// line per component (GB, Random, SB) in mixing order. Relative paths are
// resolved against `base_dir`. Throws ConfigError.
DatasetRecipe parse_recipe(std::string_view text, const std::filesystem::path& base_dir);
DatasetRecipe load_recipe(const std::filesystem::path& path);

struct MixSummary {
  std::vector<std::pair<std::string, std::size_t>> component_counts;
  std::size_t total = 0;
  std::size_t hazard_flags = 0;
  std::size_t excluded = 0;
};

// Concatenates the components, lints them, optionally drops flagged pairs
// (strict_lint), applies a seeded shuffle and returns the mixed pairs.
std::vector<ParallelPair> mix_pairs(const DatasetRecipe& recipe, MixSummary& summary,
                                    std::vector<LintFlag>* flags = nullptr);

// mix_pairs plus output files in `out_dir`: train.src, train.tgt, train.tsv
// and manifest.json. Throws LoadError for a missing component file.
MixSummary mix_corpora(const DatasetRecipe& recipe, const std::filesystem::path& out_dir);

// Seeded Fisher-Yates shuffle, identical on every platform.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed);

}  // namespace cfgen

#include "cfgen/random.hpp"

template <typename T>
void cfgen::seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}
