#include "cfgen/selection.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "cfgen/error.hpp"
#include "cfgen/random.hpp"
#include "cfgen/text.hpp"

namespace cfgen {

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::Length: return "Length";
    case RejectReason::LengthRatio: return "LengthRatio";
    case RejectReason::Animacy: return "Animacy";
    case RejectReason::Wellformedness: return "Wellformedness";
    case RejectReason::ProperNoun: return "ProperNoun";
  }
  return "?";
}

void FilterVerdict::reject(RejectReason r) {
  accepted = false;
  auto pos = std::lower_bound(reasons.begin(), reasons.end(), r);
  if (pos == reasons.end() || *pos != r) reasons.insert(pos, r);
}

std::string FilterVerdict::reasons_string() const {
  std::string out;
  for (auto r : reasons) {
    if (!out.empty()) out.push_back(',');
    out.append(to_string(r));
  }
  return out;
}

std::size_t whitespace_token_count(std::string_view raw) {
  return text::split_whitespace(raw).size();
}

bool length_ratio_ok(std::string_view src_raw, std::string_view tgt_raw, double max_ratio) {
  const auto a = static_cast<double>(whitespace_token_count(src_raw));
  const auto b = static_cast<double>(whitespace_token_count(tgt_raw));
  if (a == 0 || b == 0) return false;
  return std::max(a, b) / std::min(a, b) <= max_ratio;
}

bool wellformed(std::string_view src_raw) {
  auto s = text::trim(src_raw);
  if (s.empty() || !text::starts_upper(s)) return false;
  const char last = s.back();
  return last == '.' || last == '!' || last == '?';
}

namespace {

void check_shared(const ParallelPair& pair, std::size_t max_tokens, double max_ratio,
                  FilterVerdict& v) {
  if (whitespace_token_count(pair.src_raw()) > max_tokens) v.reject(RejectReason::Length);
  if (!length_ratio_ok(pair.src_raw(), pair.tgt_raw(), max_ratio)) {
    v.reject(RejectReason::LengthRatio);
  }
  if (!wellformed(pair.src_raw())) v.reject(RejectReason::Wellformedness);
}

}  // namespace

GenderedVerdict filter_gendered(const ParallelPair& pair, const AnimacyLexicon& lex,
                                const FilterLimits& limits) {
  GenderedVerdict out;
  FilterVerdict& v = out.verdict;
  check_shared(pair, limits.gendered_max_tokens, limits.max_length_ratio, v);

  std::vector<int> pronouns;
  std::vector<int> professions;
  bool proper_noun = false;
  for (const Token& t : pair.src.tokens) {
    if (AnimacyLexicon::is_gendered_pronoun(t.surface)) pronouns.push_back(t.index);
    if (lex.has_lemma(t.lemma, pair.tgt.lang)) professions.push_back(t.index);
    if (t.upos == "PROPN") proper_noun = true;
  }
  bool animate = pronouns.size() == 1 && professions.size() == 1;
  if (animate) {
    const Token& prof = pair.src.at(professions.front());
    // Adjective senses and plurals are not swappable.
    animate = prof.upos == "NOUN" && prof.feats.number() == Number::Sing;
  }
  if (!animate) v.reject(RejectReason::Animacy);
  if (proper_noun) v.reject(RejectReason::ProperNoun);

  if (v.accepted) {
    GenderedSelection sel;
    sel.pair = pair;
    sel.pronoun_index = pronouns.front();
    sel.profession_index = professions.front();
    sel.profession_lemma = text::to_lower(pair.src.at(professions.front()).lemma);
    out.selection = std::move(sel);
  }
  return out;
}

FilterVerdict filter_neutral(const ParallelPair& pair, const FilterLimits& limits) {
  FilterVerdict v;
  check_shared(pair, limits.neutral_max_tokens, limits.max_length_ratio, v);
  return v;
}

std::vector<GenderedSelection> sample_per_profession(const std::vector<GenderedSelection>& selections,
                                                     std::size_t cap, std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < selections.size(); ++i) {
    groups[selections[i].profession_lemma].push_back(i);
  }
  std::vector<GenderedSelection> out;
  for (auto& [lemma, members] : groups) {
    if (members.size() > cap) {
      Rng rng = keyed_rng(seed, lemma);
      // Partial Fisher-Yates: the first `cap` slots become the sample.
      for (std::size_t i = 0; i < cap; ++i) {
        auto j = i + static_cast<std::size_t>(uniform_below(rng, members.size() - i));
        std::swap(members[i], members[j]);
      }
      members.resize(cap);
      std::sort(members.begin(), members.end());
    }
    for (auto idx : members) out.push_back(selections[idx]);
  }
  return out;
}

std::vector<ParallelPair> random_sample(const PairSource& source, std::size_t n,
                                        std::uint64_t seed, const FilterLimits& limits,
                                        const VerdictSink& on_verdict) {
  struct Slot {
    std::size_t position;
    ParallelPair pair;
  };
  std::vector<Slot> reservoir;
  reservoir.reserve(n);
  Rng rng(seed);
  std::size_t accepted = 0;
  std::size_t position = 0;
  while (auto pair = source()) {
    FilterVerdict v = filter_neutral(*pair, limits);
    if (on_verdict) on_verdict(*pair, v);
    const std::size_t pos = position++;
    if (!v.accepted || n == 0) continue;
    ++accepted;
    if (reservoir.size() < n) {
      reservoir.push_back({pos, std::move(*pair)});
    } else {
      auto j = static_cast<std::size_t>(uniform_below(rng, accepted));
      if (j < n) reservoir[j] = {pos, std::move(*pair)};
    }
  }
  std::sort(reservoir.begin(), reservoir.end(),
            [](const Slot& a, const Slot& b) { return a.position < b.position; });
  std::vector<ParallelPair> out;
  out.reserve(reservoir.size());
  for (auto& s : reservoir) {
    s.pair.origin = Origin::Random;
    out.push_back(std::move(s.pair));
  }
  return out;
}

void write_selection_comments(GenderedSelection& sel) {
  set_comment_value(sel.pair.src, "cfgen_id", sel.pair.id);
  set_comment_value(sel.pair.src, "cfgen_pronoun", std::to_string(sel.pronoun_index));
  set_comment_value(sel.pair.src, "cfgen_profession", std::to_string(sel.profession_index));
  set_comment_value(sel.pair.src, "cfgen_lemma", sel.profession_lemma);
  set_comment_value(sel.pair.tgt, "cfgen_id", sel.pair.id);
}

namespace {

int index_comment(const AnnotatedSentence& s, std::string_view key, const std::string& id,
                  int min) {
  auto v = comment_value(s, key);
  if (!v) throw InputError("pair " + id + ": missing '# " + std::string(key) + "' comment");
  int out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size() || out < min ||
      out > static_cast<int>(s.size())) {
    throw InputError("pair " + id + ": bad '" + std::string(key) + "' value '" + *v + "'");
  }
  return out;
}

}  // namespace

GenderedSelection selection_from_comments(ParallelPair pair) {
  GenderedSelection sel;
  sel.pronoun_index = index_comment(pair.src, "cfgen_pronoun", pair.id, 0);
  sel.profession_index = index_comment(pair.src, "cfgen_profession", pair.id, 1);
  auto lemma = comment_value(pair.src, "cfgen_lemma");
  if (!lemma) throw InputError("pair " + pair.id + ": missing '# cfgen_lemma' comment");
  sel.profession_lemma = *lemma;
  sel.pair = std::move(pair);
  return sel;
}

}  // namespace cfgen
