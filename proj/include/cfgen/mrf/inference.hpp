#pragma once

#include <set>
#include <string_view>
#include <vector>

#include "cfgen/corpus_model.hpp"
#include "cfgen/mrf/agreement_model.hpp"
#include "cfgen/mrf/maxplus.hpp"
#include "cfgen/mrf/tag_space.hpp"

namespace cfgen::mrf {

struct Intervention {
  int token_index = 0;
  AgreementTag forced_tag;
};

// Builds the gender-swap intervention for `token_index`: opposite gender,
// original number. Throws ContractError when the token has no gender.
Intervention gender_swap_intervention(const AnnotatedSentence& sent, int token_index);

struct InferenceOptions {
  // Log-bonus on every non-clamped token's original tag.
  double original_tag_bonus = 2.0;
  KernelIsa isa = active_isa();
};

// A tree-shaped pairwise MRF in log space.
//   parent[i]   parent node of i, or -1 for the root
//   unary[i]    size T
//   pairwise[i] T x T row-major (parent tag, node tag); empty for the root
//   preferred[i] tag favoured on ties (the token's original tag), or -1
struct TreeMrf {
  std::size_t num_tags = 0;
  std::vector<int> parent;
  std::vector<std::vector<double>> unary;
  std::vector<std::vector<double>> pairwise;
  std::vector<int> preferred;
};

// Exact MAP assignment by max-product message passing (leaves to root, then
// back-tracking). Ties prefer `preferred[i]`, then the lower tag ordinal.
std::vector<std::size_t> max_product_map(const TreeMrf& mrf, KernelIsa isa = active_isa());

// Sum of unary and pairwise log-potentials of an assignment.
double assignment_score(const TreeMrf& mrf, const std::vector<std::size_t>& assignment);

// The MRF for one sentence: unary from upos, pairwise from deprel, the
// original-tag bonus, and the clamp at the intervention site.
TreeMrf build_sentence_mrf(const AnnotatedSentence& sent, const AgreementModel& model,
                           const Intervention& iv, double original_tag_bonus);

// MAP tags per token (index 0 = token 1). Tokens whose original tag is outside
// the model's tag space keep that tag unless inference moves them elsewhere.
std::vector<AgreementTag> infer_tags(const AnnotatedSentence& sent, const AgreementModel& model,
                                     const Intervention& iv, const InferenceOptions& opts = {});

// Tokens to reinflect: tag changes, the intervention site, and for fr/it
// every DET whose head is the intervention site.
std::set<int> mark_reinflection_targets(const AnnotatedSentence& sent,
                                        const std::vector<AgreementTag>& new_tags,
                                        const Intervention& iv, std::string_view lang);

}  // namespace cfgen::mrf
