#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cfgen/corpus_model.hpp"

namespace cfgen {

struct ConlluOptions {
  // Attach every extra root to the first root with deprel "parataxis".
  bool repair_multiroot = true;
  std::string lang;
};

// Throws FormatError (with line number) for malformed lines and
// StructureError for trees that cannot be repaired.
std::vector<AnnotatedSentence> parse_conllu(std::string_view text, const ConlluOptions& opts = {});
std::string serialize_conllu(const std::vector<AnnotatedSentence>& sents);
std::string serialize_sentence(const AnnotatedSentence& sent);

// Checks the single-rooted tree invariant; repairs extra roots when asked.
void validate_tree(AnnotatedSentence& sent, bool repair_multiroot);
bool is_valid_tree(const AnnotatedSentence& sent);

// The annotation bridge keeps line alignment by writing, for an empty or
// unparseable input line, a block with an empty "# text =", a
// "# cfgen_placeholder = <reason>" comment and one token
// "1 _ _ X _ _ 0 root _ _".
bool is_placeholder(const AnnotatedSentence& sent);

}  // namespace cfgen
