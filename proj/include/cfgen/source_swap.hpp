#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfgen/corpus_model.hpp"

namespace cfgen {

struct SwapRule {
  std::string from;
  std::optional<std::string> to_possessive;
  std::optional<std::string> to_nonpossessive;
};

// Rules for exactly {he, she, him, his, her}. "hers" is never produced.
const std::vector<SwapRule>& english_swap_rules();

// Possessive reading from the UD annotation: upos DET or Poss=Yes.
bool is_possessive(const Token& t);

// Replaces the pronoun at `pronoun_index` with its opposite-gender
// counterpart. Lemma and Gender feature follow the new form; every other token
// is untouched and `raw` is rewritten in place. Throws ContractError when the
// token is not a swappable pronoun.
AnnotatedSentence swap_english_gender(const AnnotatedSentence& sent, int pronoun_index);

// Character offset of each token's surface in `raw`, or nullopt when the
// tokens cannot be aligned to the string.
std::optional<std::vector<std::size_t>> align_tokens(const AnnotatedSentence& sent);

}  // namespace cfgen
