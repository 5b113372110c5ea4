#pragma once

// Brute-force MAP oracle for the agreement MRF. Scores come straight from the
// sentence and model, without going through build_sentence_mrf.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cfgen/corpus_model.hpp"
#include "cfgen/mrf/agreement_model.hpp"
#include "cfgen/mrf/inference.hpp"
#include "cfgen/random.hpp"

namespace cfgen::oracle {

using namespace cfgen::mrf;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline const std::vector<std::string> kUpos{"DET", "NOUN", "ADJ", "VERB", "PRON"};
inline const std::vector<std::string> kRels{"det", "amod", "nsubj", "obj", "nsubj:pass"};

// Random model over NoAgr + {Masc,Fem} x {Sing,Plur}; some keys left unseen.
inline AgreementModel random_model(Rng& rng) {
  AgreementModel m;
  m.lang = "xx";
  m.tags = TagSpace({AgreementTag::of(Gender::Masc, Number::Sing),
                     AgreementTag::of(Gender::Fem, Number::Sing),
                     AgreementTag::of(Gender::Masc, Number::Plur),
                     AgreementTag::of(Gender::Fem, Number::Plur)});
  const std::size_t T = m.tags.size();
  for (const auto& u : kUpos) {
    if (uniform_below(rng, 5) == 0) continue;
    std::vector<double> v(T);
    for (auto& x : v) x = -6.0 * uniform01(rng);
    m.unary[u] = v;
  }
  for (const auto& r : {"det", "amod", "nsubj", "obj"}) {
    if (uniform_below(rng, 5) == 0) continue;
    std::vector<double> v(T * T);
    for (auto& x : v) x = -6.0 * uniform01(rng);
    m.pairwise[r] = v;
  }
  return m;
}

inline AnnotatedSentence random_sentence(Rng& rng, const AgreementModel& m, int n) {
  AnnotatedSentence s;
  const int root = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  std::vector<int> placed{root};
  std::vector<int> order;
  for (int i = 1; i <= n; ++i) {
    if (i != root) order.push_back(i);
  }
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  std::vector<int> head(static_cast<std::size_t>(n) + 1, 0);
  for (int i : order) {
    head[static_cast<std::size_t>(i)] = placed[uniform_below(rng, placed.size())];
    placed.push_back(i);
  }
  for (int i = 1; i <= n; ++i) {
    Token t;
    t.index = i;
    t.surface = "w" + std::to_string(i);
    t.lemma = t.surface;
    t.upos = kUpos[uniform_below(rng, kUpos.size())];
    const auto& tag = m.tags[uniform_below(rng, m.tags.size())];
    if (!tag.no_agr) {
      t.feats.set_gender(tag.gender);
      t.feats.set_number(tag.number);
    }
    t.head = head[static_cast<std::size_t>(i)];
    t.deprel = t.head == 0 ? "root" : kRels[uniform_below(rng, kRels.size())];
    s.tokens.push_back(t);
  }
  return s;
}

// Independent scoring straight from the sentence and model.
inline double brute_score(const AnnotatedSentence& s, const AgreementModel& m, const Intervention& iv,
                   double bonus, const std::vector<std::size_t>& a) {
  const std::size_t T = m.tags.size();
  double score = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Token& t = s.tokens[i];
    if (t.index == iv.token_index) {
      if (m.tags[a[i]] != iv.forced_tag) return -std::numeric_limits<double>::infinity();
    } else if (m.tags[a[i]] == tag_of(t)) {
      score += bonus;
    }
    if (auto it = m.unary.find(t.upos); it != m.unary.end()) score += it->second[a[i]];
    if (t.head == 0) continue;
    std::string rel = t.deprel;
    auto it = m.pairwise.find(rel);
    if (it == m.pairwise.end()) it = m.pairwise.find(rel.substr(0, rel.find(':')));
    if (it != m.pairwise.end()) {
      score += it->second[a[static_cast<std::size_t>(t.head - 1)] * T + a[i]];
    }
  }
  return score;
}

struct BruteResult {
  double best;
  std::vector<std::vector<std::size_t>> argmax;
};

inline BruteResult brute_force(const AnnotatedSentence& s, const AgreementModel& m, const Intervention& iv,
                        double bonus) {
  const std::size_t T = m.tags.size();
  const std::size_t n = s.size();
  std::vector<std::size_t> a(n, 0);
  BruteResult r{-std::numeric_limits<double>::infinity(), {}};
  while (true) {
    const double sc = brute_score(s, m, iv, bonus, a);
    if (sc > r.best + 1e-12) {
      r.best = sc;
      r.argmax = {a};
    } else if (std::abs(sc - r.best) <= 1e-12) {
      r.argmax.push_back(a);
    }
    std::size_t k = 0;
    while (k < n && ++a[k] == T) a[k++] = 0;
    if (k == n) break;
  }
  return r;
}


}  // namespace cfgen::oracle
