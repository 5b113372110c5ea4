#pragma once

// Target-side realization: turn the tags chosen by the agreement MRF into
// surface forms and a detokenized counterfactual sentence.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cfgen/corpus_model.hpp"
#include "cfgen/lexicon.hpp"
#include "cfgen/mrf/agreement_model.hpp"
#include "cfgen/mrf/inference.hpp"
#include "cfgen/selection.hpp"

namespace cfgen {

enum class Direction { MascToFem, FemToMasc };

// Rewrites a word ending: surface ending in `match_suffix` gets it replaced by
// `replace_suffix`. Longer matches win; among equal lengths the lower
// priority number wins.
struct SuffixRule {
  std::string lang;
  std::set<std::string> pos_scope;  // empty = any upos
  std::string match_suffix;
  std::string replace_suffix;
  Direction direction = Direction::MascToFem;
  int priority = 0;
};

// TSV: lang, pos_scope ("*" or "ADJ,NOUN"), match, replace, direction
// ("M>F" / "F>M"), priority. "_" stands for an empty suffix. Priorities must
// be unique within (lang, direction); violations throw LoadError.
std::vector<SuffixRule> parse_suffix_rules(std::string_view tsv,
                                           std::string_view origin = "<memory>");
std::vector<SuffixRule> load_suffix_rules(const std::filesystem::path& path);

enum class FormSource { Lexicon, SuffixRule, Unchanged };
std::string_view to_string(FormSource s);

struct ReinflectedForm {
  std::string surface;
  FormSource source = FormSource::Unchanged;
  std::optional<std::string> warning;
};

// Dictionary lookup on (lemma, target), then the best suffix rule on the
// surface, then Unchanged with a warning. Capitalization of the input surface
// is carried over. A token that already has the target gender is returned
// as is.
ReinflectedForm reinflect_token(const Token& token, const mrf::AgreementTag& target,
                                std::string_view lang, const InflectionLexicon& lex,
                                const std::vector<SuffixRule>& rules);

// Merges adjacent tokens listed in the contraction table, left to right,
// until nothing changes. The merged token keeps the first token's index and
// the second token's SpaceAfter.
std::vector<Token> apply_contractions(std::vector<Token> tokens, const InflectionLexicon& lex,
                                      std::string_view lang);

// Joins surfaces honoring SpaceAfter=No; in fr/it a token ending in an
// apostrophe never takes a following space.
std::string detokenize(const std::vector<Token>& tokens, std::string_view lang);

// fr/it article elision around position `i` (a DET): le/la -> l' before a
// vowel, l' -> le/la before a consonant, it una <-> un'.
void repair_elision(std::vector<Token>& tokens, std::size_t i, std::string_view lang);

struct TokenReport {
  int index = 0;
  std::string before;
  std::string after;
  FormSource source = FormSource::Unchanged;
};

struct ReinflectionReport {
  std::vector<TokenReport> tokens;  // one per marked token
  std::vector<std::string> warnings;
};

struct CounterfactualConfig {
  const mrf::AgreementModel* model = nullptr;
  const AnimacyLexicon* animacy = nullptr;
  const InflectionLexicon* inflections = nullptr;
  const std::vector<SuffixRule>* rules = nullptr;
  std::string lang;
  mrf::InferenceOptions inference;
};

struct CounterfactualResult {
  std::optional<ParallelPair> pair;  // empty when skipped
  std::string skip_reason;
  ReinflectionReport report;
};

// Target-side intervention site: the unique token whose lemma or surface is
// one of the profession's target forms.
std::optional<int> locate_animate_noun(const AnnotatedSentence& tgt, const GenderedForms& forms,
                                       std::string* why = nullptr);

// Swaps the English pronoun and regenerates the target side with the animate
// noun's gender flipped. Skips (with a reason) when the target noun cannot be
// located unambiguously. A pronoun_index of 0 leaves the source unchanged.
CounterfactualResult generate_counterfactual(const GenderedSelection& sel,
                                             const CounterfactualConfig& cfg);

// Target side only: flips the gender of `site` and everything the MRF ties to
// it. The site takes its form from `site_forms` when given. Used by
// generate_counterfactual and for re-running on its own output.
AnnotatedSentence regenerate_target(const AnnotatedSentence& tgt, int site,
                                    const GenderedForms* site_forms,
                                    const CounterfactualConfig& cfg, ReinflectionReport& report);

}  // namespace cfgen
