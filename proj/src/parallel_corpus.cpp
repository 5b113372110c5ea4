#include "cfgen/parallel_corpus.hpp"

#include <memory>

#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/text.hpp"

namespace cfgen {
namespace {

bool read_line(std::ifstream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::string flatten(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

ParallelTextReader::ParallelTextReader(const std::filesystem::path& src,
                                       const std::filesystem::path& tgt, std::string tgt_lang)
    : src_(src, std::ios::binary), tgt_(tgt, std::ios::binary), lang_(std::move(tgt_lang)) {
  if (!src_) throw LoadError("cannot read " + src.string());
  if (!tgt_) throw LoadError("cannot read " + tgt.string());
}

ParallelTextReader::ParallelTextReader(const std::filesystem::path& tsv, std::string tgt_lang)
    : src_(tsv, std::ios::binary), tsv_(true), lang_(std::move(tgt_lang)) {
  if (!src_) throw LoadError("cannot read " + tsv.string());
}

std::optional<ParallelPair> ParallelTextReader::next() {
  std::string src_line;
  const bool have_src = read_line(src_, src_line);
  if (tsv_) {
    if (!have_src) return std::nullopt;
    ++line_;
    auto cols = text::split(src_line, '\t');
    if (cols.size() != 2) {
      throw LoadError("line " + std::to_string(line_) + ": expected two tab-separated columns");
    }
    return make_raw_pair(std::to_string(line_), std::string(cols[0]), std::string(cols[1]),
                         lang_);
  }
  std::string tgt_line;
  const bool have_tgt = read_line(tgt_, tgt_line);
  if (!have_src && !have_tgt) return std::nullopt;
  ++line_;
  if (have_src != have_tgt) {
    throw LoadError("parallel files differ in length at line " + std::to_string(line_));
  }
  return make_raw_pair(std::to_string(line_), std::move(src_line), std::move(tgt_line), lang_);
}

PairSource ParallelTextReader::source() {
  return [this] { return next(); };
}

std::vector<ParallelPair> read_parallel_text(const std::filesystem::path& src,
                                             const std::filesystem::path& tgt,
                                             const std::string& tgt_lang) {
  ParallelTextReader reader(src, tgt, tgt_lang);
  std::vector<ParallelPair> out;
  while (auto p = reader.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<ParallelPair> read_parallel_tsv(const std::filesystem::path& tsv,
                                            const std::string& tgt_lang) {
  ParallelTextReader reader(tsv, tgt_lang);
  std::vector<ParallelPair> out;
  while (auto p = reader.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<ParallelPair> pair_annotated(std::vector<AnnotatedSentence> src,
                                         std::vector<AnnotatedSentence> tgt,
                                         const std::string& tgt_lang) {
  if (src.size() != tgt.size()) {
    throw LoadError("source has " + std::to_string(src.size()) + " sentences, target has " +
                    std::to_string(tgt.size()));
  }
  std::vector<ParallelPair> out;
  out.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    // Placeholders only hold a line slot; ids still count them.
    if (is_placeholder(src[i]) || is_placeholder(tgt[i])) continue;
    ParallelPair p;
    p.id = comment_value(src[i], "cfgen_id").value_or(std::to_string(i + 1));
    p.src = std::move(src[i]);
    p.src.lang = "en";
    p.tgt = std::move(tgt[i]);
    p.tgt.lang = tgt_lang;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ParallelPair> read_annotated_parallel(const std::filesystem::path& src_conllu,
                                                  const std::filesystem::path& tgt_conllu,
                                                  const std::string& tgt_lang,
                                                  bool repair_multiroot) {
  auto src = parse_conllu(io::read_file(src_conllu), {repair_multiroot, "en"});
  auto tgt = parse_conllu(io::read_file(tgt_conllu), {repair_multiroot, tgt_lang});
  return pair_annotated(std::move(src), std::move(tgt), tgt_lang);
}

PairSource vector_source(const std::vector<ParallelPair>& pairs) {
  auto pos = std::make_shared<std::size_t>(0);
  return [&pairs, pos]() -> std::optional<ParallelPair> {
    if (*pos >= pairs.size()) return std::nullopt;
    return pairs[(*pos)++];
  };
}

std::string format_pairs_tsv(const std::vector<ParallelPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out.append(flatten(p.src_raw())).push_back('\t');
    out.append(flatten(p.tgt_raw())).push_back('\n');
  }
  return out;
}

}  // namespace cfgen
