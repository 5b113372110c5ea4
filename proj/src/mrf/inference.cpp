#include "cfgen/mrf/inference.hpp"

#include <limits>

#include "cfgen/error.hpp"

namespace cfgen::mrf {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Index of the maximum; `preferred` wins ties, then the lowest index.
std::size_t argmax_preferring(const std::vector<double>& values, double best, int preferred) {
  if (preferred >= 0 && values[static_cast<std::size_t>(preferred)] == best) {
    return static_cast<std::size_t>(preferred);
  }
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (values[t] == best) return t;
  }
  return 0;
}

std::vector<int> post_order(const std::vector<int>& parent) {
  const std::size_t n = parent.size();
  std::vector<std::vector<int>> children(n);
  std::vector<int> roots;
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] < 0) {
      roots.push_back(static_cast<int>(i));
    } else {
      children[static_cast<std::size_t>(parent[i])].push_back(static_cast<int>(i));
    }
  }
  std::vector<int> order;
  order.reserve(n);
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root : roots) {
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& kids = children[static_cast<std::size_t>(node)];
      if (next < kids.size()) {
        const int child = kids[next++];
        stack.emplace_back(child, 0);
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
  }
  if (order.size() != n) throw ContractError("MRF graph is not a forest");
  return order;
}

}  // namespace

Intervention gender_swap_intervention(const AnnotatedSentence& sent, int token_index) {
  const Token& tok = sent.at(token_index);
  const AgreementTag original = tag_of(tok);
  if (original.no_agr) {
    throw ContractError("token '" + tok.surface + "' has no gender to swap");
  }
  return Intervention{token_index, AgreementTag::of(opposite(original.gender), original.number)};
}

std::vector<std::size_t> max_product_map(const TreeMrf& mrf, KernelIsa isa) {
  const std::size_t n = mrf.parent.size();
  const std::size_t T = mrf.num_tags;
  if (n == 0) return {};
  const std::vector<int> order = post_order(mrf.parent);

  std::vector<std::vector<double>> belief(n);
  for (std::size_t i = 0; i < n; ++i) belief[i] = mrf.unary[i];
  // best_child_tag[i][h]: tag of i maximizing the subtree score given parent tag h.
  std::vector<std::vector<std::size_t>> best_child_tag(n);
  std::vector<double> message(T);
  std::vector<double> candidates(T);

  for (int node_i : order) {
    const auto node = static_cast<std::size_t>(node_i);
    const int p = mrf.parent[node];
    if (p < 0) continue;
    const auto& pair = mrf.pairwise[node];
    max_plus(isa, pair, belief[node], message);
    auto& back = best_child_tag[node];
    back.resize(T);
    for (std::size_t h = 0; h < T; ++h) {
      for (std::size_t t = 0; t < T; ++t) candidates[t] = pair[h * T + t] + belief[node][t];
      back[h] = argmax_preferring(candidates, message[h], mrf.preferred[node]);
    }
    auto& parent_belief = belief[static_cast<std::size_t>(p)];
    for (std::size_t h = 0; h < T; ++h) parent_belief[h] += message[h];
  }

  std::vector<std::size_t> assignment(n, 0);
  // Reverse post-order visits parents before children.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto node = static_cast<std::size_t>(*it);
    const int p = mrf.parent[node];
    if (p < 0) {
      double best = kNegInf;
      for (double v : belief[node]) best = std::max(best, v);
      assignment[node] = argmax_preferring(belief[node], best, mrf.preferred[node]);
    } else {
      assignment[node] = best_child_tag[node][assignment[static_cast<std::size_t>(p)]];
    }
  }
  return assignment;
}

double assignment_score(const TreeMrf& mrf, const std::vector<std::size_t>& assignment) {
  const std::size_t T = mrf.num_tags;
  double score = 0;
  for (std::size_t i = 0; i < mrf.parent.size(); ++i) {
    score += mrf.unary[i][assignment[i]];
    if (mrf.parent[i] >= 0) {
      score += mrf.pairwise[i][assignment[static_cast<std::size_t>(mrf.parent[i])] * T +
                               assignment[i]];
    }
  }
  return score;
}

TreeMrf build_sentence_mrf(const AnnotatedSentence& sent, const AgreementModel& model,
                           const Intervention& iv, double original_tag_bonus) {
  const std::size_t n = sent.size();
  const std::size_t T = model.tags.size();
  if (iv.token_index < 1 || static_cast<std::size_t>(iv.token_index) > n) {
    throw ContractError("intervention index " + std::to_string(iv.token_index) + " out of range");
  }
  if (iv.forced_tag.no_agr || iv.forced_tag.gender == Gender::None) {
    throw ContractError("forced tag must be Masc or Fem");
  }
  if (iv.forced_tag.number != sent.at(iv.token_index).feats.number()) {
    throw ContractError("forced tag must keep the token's number");
  }
  const auto forced = model.tags.index_of(iv.forced_tag);
  if (!forced) {
    throw ContractError("forced tag " + iv.forced_tag.to_string() + " is not in the tag space");
  }

  TreeMrf mrf;
  mrf.num_tags = T;
  mrf.parent.resize(n);
  mrf.unary.resize(n);
  mrf.pairwise.resize(n);
  mrf.preferred.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Token& tok = sent.tokens[i];
    mrf.parent[i] = tok.head - 1;
    const auto* u = model.find_unary(tok.upos);
    mrf.unary[i] = u ? *u : std::vector<double>(T, 0.0);
    const auto original = model.tags.index_of(tag_of(tok)).value_or(0);
    if (tok.index == iv.token_index) {
      for (std::size_t t = 0; t < T; ++t) {
        if (t != *forced) mrf.unary[i][t] = kNegInf;
      }
      mrf.preferred[i] = static_cast<int>(*forced);
    } else {
      mrf.unary[i][original] += original_tag_bonus;
      mrf.preferred[i] = static_cast<int>(original);
    }
    if (tok.head != 0) {
      const auto* p = model.find_pairwise(tok.deprel);
      mrf.pairwise[i] = p ? *p : std::vector<double>(T * T, 0.0);
    }
  }
  return mrf;
}

std::vector<AgreementTag> infer_tags(const AnnotatedSentence& sent, const AgreementModel& model,
                                     const Intervention& iv, const InferenceOptions& opts) {
  const TreeMrf mrf = build_sentence_mrf(sent, model, iv, opts.original_tag_bonus);
  const auto assignment = max_product_map(mrf, opts.isa);
  std::vector<AgreementTag> out(sent.size());
  for (std::size_t i = 0; i < sent.size(); ++i) {
    const AgreementTag original = tag_of(sent.tokens[i]);
    const bool in_space = model.tags.index_of(original).has_value();
    out[i] = model.tags[assignment[i]];
    // Out-of-space tags were modelled as NoAgr; staying there means unchanged.
    if (!in_space && out[i].no_agr) out[i] = original;
  }
  return out;
}

std::set<int> mark_reinflection_targets(const AnnotatedSentence& sent,
                                        const std::vector<AgreementTag>& new_tags,
                                        const Intervention& iv, std::string_view lang) {
  std::set<int> marks{iv.token_index};
  // Only tokens that already carry Gender and keep one are rewritten; an
  // ungendered form (elided l', epicene clitics) has nothing to switch to.
  for (const Token& tok : sent.tokens) {
    const AgreementTag& now = new_tags[static_cast<std::size_t>(tok.index - 1)];
    const AgreementTag was = tag_of(tok);
    if (now != was && !now.no_agr && !was.no_agr) marks.insert(tok.index);
  }
  if (lang == "fr" || lang == "it") {
    for (const Token& tok : sent.tokens) {
      if (tok.upos == "DET" && tok.head == iv.token_index) marks.insert(tok.index);
    }
  }
  return marks;
}

}  // namespace cfgen::mrf
