#pragma once

// Corpus selection: the gendered-sentence filters, the neutral filters used
// before random sampling, and the per-profession sampling cap.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfgen/corpus_model.hpp"
#include "cfgen/lexicon.hpp"
#include "cfgen/parallel_corpus.hpp"

namespace cfgen {

enum class RejectReason { Length, LengthRatio, Animacy, Wellformedness, ProperNoun };
std::string_view to_string(RejectReason r);

struct FilterVerdict {
  bool accepted = true;
  // Sorted by enum order, no duplicates.
  std::vector<RejectReason> reasons;

  void reject(RejectReason r);
  std::string reasons_string() const;  // comma-separated, "" when accepted
  bool operator==(const FilterVerdict&) const = default;
};

struct FilterLimits {
  std::size_t gendered_max_tokens = 20;
  std::size_t neutral_max_tokens = 100;
  double max_length_ratio = 3.0;
};

struct GenderedSelection {
  ParallelPair pair;
  int pronoun_index = 0;     // source token index of the gendered pronoun
  int profession_index = 0;  // source token index of the profession noun
  std::string profession_lemma;
};

struct GenderedVerdict {
  FilterVerdict verdict;
  std::optional<GenderedSelection> selection;
};

// Reports every failed criterion, not just the first.
GenderedVerdict filter_gendered(const ParallelPair& pair, const AnimacyLexicon& lex,
                                const FilterLimits& limits = {});
FilterVerdict filter_neutral(const ParallelPair& pair, const FilterLimits& limits = {});

// At most `cap` selections per profession lemma, drawn uniformly without
// replacement. Output is ordered by lemma, then by input order.
std::vector<GenderedSelection> sample_per_profession(const std::vector<GenderedSelection>& selections,
                                                     std::size_t cap, std::uint64_t seed);

using VerdictSink = std::function<void(const ParallelPair&, const FilterVerdict&)>;

// Reservoir sample (Algorithm R) of size min(n, accepted) over pairs that pass
// filter_neutral. Output keeps stream order.
std::vector<ParallelPair> random_sample(const PairSource& source, std::size_t n,
                                        std::uint64_t seed, const FilterLimits& limits = {},
                                        const VerdictSink& on_verdict = {});

// Selected pairs carry their selection in "# cfgen_*" comments so later
// stages can run on their own: cfgen_id and cfgen_pronoun, cfgen_profession,
// cfgen_lemma on the source side, cfgen_id on the target side.
void write_selection_comments(GenderedSelection& sel);
// Throws InputError when a comment is missing or an index is out of range.
// A pronoun index of 0 means the source has no pronoun to swap.
GenderedSelection selection_from_comments(ParallelPair pair);

// Shared criterion helpers, exposed for the CLI and tests.
std::size_t whitespace_token_count(std::string_view raw);
bool length_ratio_ok(std::string_view src_raw, std::string_view tgt_raw, double max_ratio);
bool wellformed(std::string_view src_raw);

}  // namespace cfgen
