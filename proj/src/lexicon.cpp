#include "cfgen/lexicon.hpp"

#include <stdexcept>

#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/text.hpp"

namespace cfgen {
namespace {

bool missing(std::string_view field) { return field.empty() || field == "_"; }

std::string where(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line);
}

}  // namespace

std::vector<TsvRow> tsv_rows(std::string_view tsv) {
  std::vector<TsvRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < tsv.size()) {
    auto nl = tsv.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;
    rows.push_back({line_no, text::split(line, '\t')});
  }
  return rows;
}

void AnimacyLexicon::add(std::string_view en_lemma, std::string_view lang, std::string masc,
                         std::string fem) {
  const std::string lemma = text::to_lower(text::trim(en_lemma));
  if (lemma.empty()) throw LoadError("animacy entry with empty lemma");
  if (missing(masc)) throw LoadError("animacy entry '" + lemma + "' lacks a masculine form");
  if (missing(fem)) throw LoadError("animacy entry '" + lemma + "' lacks a feminine form");
  auto& entries = by_lang_[std::string(lang)];
  if (!entries.emplace(lemma, GenderedForms{std::move(masc), std::move(fem)}).second) {
    throw LoadError("duplicate animacy entry '" + lemma + "' for language " + std::string(lang));
  }
}

const GenderedForms* AnimacyLexicon::find(std::string_view en_lemma, std::string_view lang) const {
  auto lit = by_lang_.find(lang);
  if (lit == by_lang_.end()) return nullptr;
  auto it = lit->second.find(text::to_lower(en_lemma));
  return it == lit->second.end() ? nullptr : &it->second;
}

bool AnimacyLexicon::has_lemma(std::string_view en_lemma, std::string_view lang) const {
  return find(en_lemma, lang) != nullptr;
}

std::vector<std::string> AnimacyLexicon::lemmas(std::string_view lang) const {
  std::vector<std::string> out;
  auto lit = by_lang_.find(lang);
  if (lit == by_lang_.end()) return out;
  for (const auto& [lemma, forms] : lit->second) out.push_back(lemma);
  return out;
}

std::size_t AnimacyLexicon::size() const {
  std::size_t n = 0;
  for (const auto& [lang, entries] : by_lang_) n += entries.size();
  return n;
}

Gender AnimacyLexicon::pronoun_gender(std::string_view word) {
  const std::string w = text::to_lower(word);
  if (w == "he" || w == "him" || w == "his") return Gender::Masc;
  if (w == "she" || w == "her") return Gender::Fem;
  return Gender::None;
}

bool AnimacyLexicon::is_gendered_pronoun(std::string_view word) {
  return pronoun_gender(word) != Gender::None;
}

AnimacyLexicon parse_animacy_lexicon(std::string_view tsv, std::string_view origin) {
  AnimacyLexicon lex;
  for (const auto& row : tsv_rows(tsv)) {
    if (row.cols.size() < 2) {
      throw LoadError(where(origin, row.line) + ": expected en_lemma, lang, masc_form, fem_form");
    }
    const std::string lemma(row.cols[0]);
    std::string masc = row.cols.size() > 2 ? std::string(row.cols[2]) : std::string();
    std::string fem = row.cols.size() > 3 ? std::string(row.cols[3]) : std::string();
    try {
      lex.add(lemma, row.cols[1], std::move(masc), std::move(fem));
    } catch (const LoadError& e) {
      throw LoadError(where(origin, row.line) + ": " + e.what());
    }
  }
  return lex;
}

AnimacyLexicon load_animacy_lexicon(const std::filesystem::path& path) {
  return parse_animacy_lexicon(io::read_file(path), path.string());
}

void InflectionLexicon::add_form(std::string_view lang, std::string_view lemma, Gender g,
                                 Number n, std::string form) {
  FormKey key{std::string(lang), text::to_lower(lemma), g, n};
  if (!forms_.emplace(key, std::move(form)).second) {
    throw LoadError("duplicate inflection row for lemma '" + std::string(lemma) + "' (" +
                    std::string(lang) + ", " + std::string(to_string(g)) + ", " +
                    std::string(to_string(n)) + ")");
  }
}

void InflectionLexicon::add_contraction(std::string_view lang, std::string_view first,
                                        std::string_view second, std::string contracted) {
  PairKey key{std::string(lang), text::to_lower(first), text::to_lower(second)};
  if (!contractions_.emplace(key, std::move(contracted)).second) {
    throw LoadError("duplicate contraction '" + std::string(first) + " " + std::string(second) +
                    "' for " + std::string(lang));
  }
}

std::optional<std::string> InflectionLexicon::lookup(std::string_view lang,
                                                     std::string_view lemma, Gender g,
                                                     Number n) const {
  auto it = forms_.find(FormKey{std::string(lang), text::to_lower(lemma), g, n});
  if (it == forms_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> InflectionLexicon::contraction(std::string_view lang,
                                                          std::string_view first,
                                                          std::string_view second) const {
  auto it = contractions_.find(PairKey{std::string(lang), text::to_lower(first),
                                       text::to_lower(second)});
  if (it == contractions_.end()) return std::nullopt;
  return it->second;
}

void parse_inflections(std::string_view tsv, InflectionLexicon& lex, std::string_view origin) {
  for (const auto& row : tsv_rows(tsv)) {
    if (row.cols.size() != 4) {
      throw LoadError(where(origin, row.line) + ": expected lang, lemma, feats, form");
    }
    MorphFeatures feats;
    try {
      feats = MorphFeatures::parse(row.cols[2]);
    } catch (const std::invalid_argument& e) {
      throw LoadError(where(origin, row.line) + ": " + e.what());
    }
    try {
      lex.add_form(row.cols[0], row.cols[1], feats.gender(), feats.number(),
                   std::string(row.cols[3]));
    } catch (const LoadError& e) {
      throw LoadError(where(origin, row.line) + ": " + e.what());
    }
  }
}

void load_inflections(const std::filesystem::path& path, InflectionLexicon& lex) {
  parse_inflections(io::read_file(path), lex, path.string());
}

void parse_contractions(std::string_view tsv, InflectionLexicon& lex, std::string_view origin) {
  for (const auto& row : tsv_rows(tsv)) {
    if (row.cols.size() != 4) {
      throw LoadError(where(origin, row.line) + ": expected lang, first, second, contracted");
    }
    try {
      lex.add_contraction(row.cols[0], row.cols[1], row.cols[2], std::string(row.cols[3]));
    } catch (const LoadError& e) {
      throw LoadError(where(origin, row.line) + ": " + e.what());
    }
  }
}

void load_contractions(const std::filesystem::path& path, InflectionLexicon& lex) {
  parse_contractions(io::read_file(path), lex, path.string());
}

}  // namespace cfgen
