#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfgen/conllu.hpp"
#include "cfgen/corpus_model.hpp"

namespace cfgen {

// Pulls pairs one at a time; returns nullopt at end of stream.
using PairSource = std::function<std::optional<ParallelPair>()>;

// Streams raw pairs from two line-aligned files or from one two-column TSV.
// Ids are 1-based line numbers.
class ParallelTextReader {
 public:
  ParallelTextReader(const std::filesystem::path& src, const std::filesystem::path& tgt,
                     std::string tgt_lang);
  ParallelTextReader(const std::filesystem::path& tsv, std::string tgt_lang);

  // Throws LoadError when one side ends before the other or a TSV row does
  // not have exactly two columns.
  std::optional<ParallelPair> next();
  PairSource source();

 private:
  std::ifstream src_;
  std::ifstream tgt_;
  bool tsv_ = false;
  std::string lang_;
  std::size_t line_ = 0;
};

std::vector<ParallelPair> read_parallel_text(const std::filesystem::path& src,
                                             const std::filesystem::path& tgt,
                                             const std::string& tgt_lang);
std::vector<ParallelPair> read_parallel_tsv(const std::filesystem::path& tsv,
                                            const std::string& tgt_lang);

// Sentence-aligned CoNLL-U files. The id comes from a "# cfgen_id" comment on
// the source side when present, otherwise the 1-based block number.
std::vector<ParallelPair> read_annotated_parallel(const std::filesystem::path& src_conllu,
                                                  const std::filesystem::path& tgt_conllu,
                                                  const std::string& tgt_lang,
                                                  bool repair_multiroot = true);
std::vector<ParallelPair> pair_annotated(std::vector<AnnotatedSentence> src,
                                         std::vector<AnnotatedSentence> tgt,
                                         const std::string& tgt_lang);

PairSource vector_source(const std::vector<ParallelPair>& pairs);

// "src\ttgt\n" per pair, tabs and newlines in the text replaced by spaces.
std::string format_pairs_tsv(const std::vector<ParallelPair>& pairs);

}  // namespace cfgen
