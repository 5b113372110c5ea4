#include "cfgen/source_swap.hpp"

#include <algorithm>

#include "cfgen/error.hpp"
#include "cfgen/lexicon.hpp"
#include "cfgen/text.hpp"

namespace cfgen {

const std::vector<SwapRule>& english_swap_rules() {
  static const std::vector<SwapRule> rules = {
      {"he", std::nullopt, "she"},
      {"she", std::nullopt, "he"},
      {"him", std::nullopt, "her"},
      {"his", "her", "her"},
      {"her", "his", "him"},
  };
  return rules;
}

bool is_possessive(const Token& t) {
  return t.upos == "DET" || t.feats.get("Poss") == std::optional<std::string_view>("Yes");
}

std::optional<std::vector<std::size_t>> align_tokens(const AnnotatedSentence& sent) {
  std::vector<std::size_t> offsets(sent.tokens.size(), 0);
  std::size_t cursor = 0;
  const std::string& raw = sent.raw;
  auto skip_space = [&] {
    while (cursor < raw.size() && (raw[cursor] == ' ' || raw[cursor] == '\t')) ++cursor;
  };
  for (std::size_t i = 0; i < sent.tokens.size();) {
    const int idx = static_cast<int>(i) + 1;
    skip_space();
    auto range = std::find_if(sent.multiword.begin(), sent.multiword.end(),
                              [idx](const MultiwordToken& m) { return m.first == idx; });
    if (range != sent.multiword.end()) {
      if (raw.compare(cursor, range->surface.size(), range->surface) != 0) return std::nullopt;
      // Parts of a range share the range's offset; they cannot be edited alone.
      for (int k = range->first; k <= range->last; ++k) {
        offsets[static_cast<std::size_t>(k - 1)] = cursor;
      }
      cursor += range->surface.size();
      i = static_cast<std::size_t>(range->last);
      continue;
    }
    const std::string& surface = sent.tokens[i].surface;
    if (raw.compare(cursor, surface.size(), surface) != 0) return std::nullopt;
    offsets[i] = cursor;
    cursor += surface.size();
    ++i;
  }
  return offsets;
}

AnnotatedSentence swap_english_gender(const AnnotatedSentence& sent, int pronoun_index) {
  if (pronoun_index < 1 || static_cast<std::size_t>(pronoun_index) > sent.size()) {
    throw ContractError("pronoun index " + std::to_string(pronoun_index) + " out of range");
  }
  const Token& original = sent.at(pronoun_index);
  const std::string lower = text::to_lower(original.surface);
  const auto& rules = english_swap_rules();
  auto rule = std::find_if(rules.begin(), rules.end(),
                           [&](const SwapRule& r) { return r.from == lower; });
  if (rule == rules.end()) {
    throw ContractError("token '" + original.surface + "' is not a swappable pronoun");
  }
  const auto& target = is_possessive(original)
                           ? (rule->to_possessive ? rule->to_possessive : rule->to_nonpossessive)
                           : (rule->to_nonpossessive ? rule->to_nonpossessive : rule->to_possessive);

  AnnotatedSentence out = sent;
  Token& tok = out.at(pronoun_index);
  tok.surface = text::match_case(original.surface, *target);
  const Gender new_gender = opposite(AnimacyLexicon::pronoun_gender(original.surface));
  const std::string lemma = text::to_lower(tok.lemma);
  if (lemma == "he" || lemma == "she") tok.lemma = new_gender == Gender::Fem ? "she" : "he";
  if (tok.feats.gender() != Gender::None) tok.feats.set_gender(new_gender);

  const bool in_range = std::any_of(sent.multiword.begin(), sent.multiword.end(), [&](const auto& m) {
    return m.first <= pronoun_index && pronoun_index <= m.last;
  });
  auto offsets = in_range ? std::nullopt : align_tokens(sent);
  if (offsets) {
    const std::size_t at = (*offsets)[static_cast<std::size_t>(pronoun_index - 1)];
    out.raw = sent.raw.substr(0, at) + tok.surface + sent.raw.substr(at + original.surface.size());
  } else {
    out.raw = surface_from_tokens(out);
  }
  return out;
}

}  // namespace cfgen
