#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfgen/corpus_model.hpp"
#include "cfgen/mrf/tag_space.hpp"

namespace cfgen::mrf {

// Log-potentials of the dependency-tree MRF.
//
//   unary[upos][t]              log P(tag = t | upos)
//   pairwise[deprel][h * T + c] log P(head tag = h, child tag = c | deprel)
//
// Both are add-k smoothed relative frequencies over the tag space. Keys never
// seen in training score 0 for every tag, which leaves the argmax to the other
// factors.
struct AgreementModel {
  std::string lang;
  double smoothing = 0.1;
  TagSpace tags;
  std::map<std::string, std::vector<double>, std::less<>> unary;
  std::map<std::string, std::vector<double>, std::less<>> pairwise;

  // Potentials for one token / one edge, or nullptr when unseen. A deprel
  // subtype ("nsubj:pass") falls back to its base relation.
  const std::vector<double>* find_unary(std::string_view upos) const;
  const std::vector<double>* find_pairwise(std::string_view deprel) const;

  bool operator==(const AgreementModel&) const = default;
};

// Throws InputError on an empty treebank or a negative smoothing constant.
AgreementModel train_agreement_model(const std::vector<AnnotatedSentence>& treebank,
                                     double smoothing, std::string lang);

// Line format, keys sorted, byte-stable for identical input:
//   CFGEN-MRF 1
//   LANG <lang>
//   SMOOTHING <k>
//   TAG <ordinal> <tag>
//   UNARY <upos> <tag> <logp>
//   PAIR <deprel> <headtag> <childtag> <logp>
std::string serialize_model(const AgreementModel& model);
// Throws FormatError with the offending line.
AgreementModel parse_model(std::string_view text);

}  // namespace cfgen::mrf
