#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cfgen/corpus_model.hpp"

namespace cfgen {

struct GenderedForms {
  std::string masc;
  std::string fem;

  const std::string& form(Gender g) const { return g == Gender::Fem ? fem : masc; }
  bool epicene() const { return masc == fem; }
};

// Profession nouns: English lemma -> gendered target forms, per language.
class AnimacyLexicon {
 public:
  // Adds one entry. Throws LoadError for empty forms or a duplicate
  // (lemma, lang); the lemma is stored lower-cased.
  void add(std::string_view en_lemma, std::string_view lang, std::string masc, std::string fem);

  const GenderedForms* find(std::string_view en_lemma, std::string_view lang) const;
  bool has_lemma(std::string_view en_lemma, std::string_view lang) const;
  std::vector<std::string> lemmas(std::string_view lang) const;
  std::size_t size() const;

  static bool is_gendered_pronoun(std::string_view word);
  // Masc for he/him/his, Fem for she/her, None otherwise (case-insensitive).
  static Gender pronoun_gender(std::string_view word);

 private:
  std::map<std::string, std::map<std::string, GenderedForms>, std::less<>> by_lang_;
};

// TSV: en_lemma, lang, masc_form, fem_form. '#' starts a comment line.
AnimacyLexicon load_animacy_lexicon(const std::filesystem::path& path);
AnimacyLexicon parse_animacy_lexicon(std::string_view tsv, std::string_view origin = "<memory>");

// Dictionary forms and preposition+article contractions.
class InflectionLexicon {
 public:
  // Throws LoadError on a duplicate (lang, lemma, gender, number) key.
  void add_form(std::string_view lang, std::string_view lemma, Gender g, Number n,
                std::string form);
  void add_contraction(std::string_view lang, std::string_view first, std::string_view second,
                       std::string contracted);

  std::optional<std::string> lookup(std::string_view lang, std::string_view lemma, Gender g,
                                    Number n) const;
  std::optional<std::string> contraction(std::string_view lang, std::string_view first,
                                         std::string_view second) const;

  std::size_t form_count() const { return forms_.size(); }
  std::size_t contraction_count() const { return contractions_.size(); }

 private:
  using FormKey = std::tuple<std::string, std::string, Gender, Number>;
  using PairKey = std::tuple<std::string, std::string, std::string>;
  std::map<FormKey, std::string> forms_;
  std::map<PairKey, std::string> contractions_;
};

// TSV: lang, lemma, feats (e.g. Gender=Fem|Number=Sing), form.
void load_inflections(const std::filesystem::path& path, InflectionLexicon& lex);
void parse_inflections(std::string_view tsv, InflectionLexicon& lex,
                       std::string_view origin = "<memory>");
// TSV: lang, first, second, contracted.
void load_contractions(const std::filesystem::path& path, InflectionLexicon& lex);
void parse_contractions(std::string_view tsv, InflectionLexicon& lex,
                        std::string_view origin = "<memory>");

// Non-comment, non-blank TSV rows with their 1-based line numbers.
struct TsvRow {
  std::size_t line;
  std::vector<std::string_view> cols;
};
std::vector<TsvRow> tsv_rows(std::string_view tsv);

}  // namespace cfgen
