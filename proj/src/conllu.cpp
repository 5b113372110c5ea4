#include "cfgen/conllu.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "cfgen/error.hpp"
#include "cfgen/text.hpp"

namespace cfgen {
namespace {

constexpr std::string_view kSpaceAfterNo = "SpaceAfter=No";

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void parse_misc(std::string_view column, bool& space_after, std::vector<std::string>& misc) {
  space_after = true;
  misc.clear();
  if (column == "_") return;
  for (auto item : text::split(column, '|')) {
    if (item == kSpaceAfterNo) {
      space_after = false;
    } else if (!item.empty()) {
      misc.emplace_back(item);
    }
  }
}

std::string format_misc(bool space_after, const std::vector<std::string>& misc) {
  std::vector<std::string> items = misc;
  if (!space_after) {
    auto pos = std::find_if(items.begin(), items.end(), [](const std::string& s) {
      return CaseInsensitiveLess{}(kSpaceAfterNo, s);
    });
    items.insert(pos, std::string(kSpaceAfterNo));
  }
  if (items.empty()) return "_";
  return text::join(items, "|");
}

struct BlockParser {
  const ConlluOptions& opts;
  AnnotatedSentence sent;
  std::size_t first_line = 0;
  bool has_text = false;

  void add_comment(std::string_view line) {
    constexpr std::string_view kText = "# text =";
    if (text::starts_with(line, kText) && !has_text) {
      sent.raw = std::string(text::trim(line.substr(kText.size())));
      sent.text_comment_pos = sent.comments.size();
      has_text = true;
    } else {
      sent.comments.emplace_back(line);
    }
  }

  void add_line(std::string_view line, std::size_t line_no) {
    auto cols = text::split(line, '\t');
    if (cols.size() != 10) {
      throw FormatError("expected 10 tab-separated columns, found " +
                            std::to_string(cols.size()),
                        line_no);
    }
    std::string_view id = cols[0];
    if (auto dash = id.find('-'); dash != std::string_view::npos) {
      MultiwordToken mw;
      if (!parse_int(id.substr(0, dash), mw.first) || !parse_int(id.substr(dash + 1), mw.last) ||
          mw.first > mw.last) {
        throw FormatError("bad multiword range '" + std::string(id) + "'", line_no);
      }
      mw.surface = std::string(cols[1]);
      parse_misc(cols[9], mw.space_after, mw.misc);
      sent.multiword.push_back(std::move(mw));
      return;
    }
    if (auto dot = id.find('.'); dot != std::string_view::npos) {
      EmptyNode node;
      if (!parse_int(id.substr(0, dot), node.after)) {
        throw FormatError("bad empty node id '" + std::string(id) + "'", line_no);
      }
      node.line = std::string(line);
      sent.empty_nodes.push_back(std::move(node));
      return;
    }
    Token tok;
    if (!parse_int(id, tok.index) || tok.index < 1) {
      throw FormatError("bad token id '" + std::string(id) + "'", line_no);
    }
    if (tok.index != static_cast<int>(sent.tokens.size()) + 1) {
      throw FormatError("token ids must be contiguous from 1", line_no);
    }
    if (cols[1].empty()) throw FormatError("empty FORM", line_no);
    tok.surface = std::string(cols[1]);
    tok.lemma = std::string(cols[2]);
    tok.upos = std::string(cols[3]);
    tok.xpos = std::string(cols[4]);
    try {
      tok.feats = MorphFeatures::parse(cols[5]);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), line_no);
    }
    if (!parse_int(cols[6], tok.head) || tok.head < 0) {
      throw FormatError("bad HEAD '" + std::string(cols[6]) + "'", line_no);
    }
    tok.deprel = std::string(cols[7]);
    tok.deps = std::string(cols[8]);
    parse_misc(cols[9], tok.space_after, tok.misc);
    sent.tokens.push_back(std::move(tok));
  }

  AnnotatedSentence finish() {
    if (sent.tokens.empty()) {
      throw FormatError("sentence block without tokens", first_line);
    }
    try {
      validate_tree(sent, opts.repair_multiroot);
    } catch (const StructureError& e) {
      throw StructureError("sentence starting at line " + std::to_string(first_line) + ": " +
                           e.what());
    }
    if (!has_text) sent.raw = surface_from_tokens(sent);
    sent.lang = opts.lang;
    return std::move(sent);
  }
};

}  // namespace

void validate_tree(AnnotatedSentence& sent, bool repair_multiroot) {
  const int n = static_cast<int>(sent.tokens.size());
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    const Token& t = sent.tokens[static_cast<std::size_t>(i)];
    if (t.index != i + 1) throw StructureError("token indices are not contiguous");
    if (t.head < 0 || t.head > n) {
      throw StructureError("head " + std::to_string(t.head) + " of token " +
                           std::to_string(t.index) + " out of range");
    }
    if (t.head == t.index) {
      throw StructureError("token " + std::to_string(t.index) + " is its own head");
    }
    if (t.head == 0) roots.push_back(t.index);
  }
  if (roots.empty()) throw StructureError("no root token (cycle)");
  if (roots.size() > 1) {
    if (!repair_multiroot) {
      throw StructureError(std::to_string(roots.size()) + " root tokens");
    }
    for (std::size_t r = 1; r < roots.size(); ++r) {
      Token& extra = sent.at(roots[r]);
      extra.head = roots[0];
      extra.deprel = "parataxis";
    }
  }
  // Every token must reach the root within n steps.
  for (const Token& t : sent.tokens) {
    int cur = t.index;
    int steps = 0;
    while (cur != 0) {
      cur = sent.tokens[static_cast<std::size_t>(cur - 1)].head;
      if (++steps > n) {
        throw StructureError("cycle through token " + std::to_string(t.index));
      }
    }
  }
}

bool is_valid_tree(const AnnotatedSentence& sent) {
  AnnotatedSentence copy = sent;
  try {
    validate_tree(copy, false);
  } catch (const StructureError&) {
    return false;
  }
  return true;
}

bool is_placeholder(const AnnotatedSentence& sent) {
  return std::any_of(sent.comments.begin(), sent.comments.end(), [](const std::string& c) {
    return text::starts_with(c, "# cfgen_placeholder");
  });
}

std::vector<AnnotatedSentence> parse_conllu(std::string_view input, const ConlluOptions& opts) {
  std::vector<AnnotatedSentence> out;
  std::optional<BlockParser> block;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    auto nl = input.find('\n', pos);
    const bool last = nl == std::string_view::npos;
    std::string_view line = input.substr(pos, last ? std::string_view::npos : nl - pos);
    pos = last ? input.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (last && line.empty()) break;

    if (text::trim(line).empty()) {
      if (block) {
        out.push_back(block->finish());
        block.reset();
      }
      continue;
    }
    if (!block) {
      block.emplace(BlockParser{opts, {}, line_no});
    }
    if (line.front() == '#') {
      block->add_comment(line);
    } else {
      block->add_line(line, line_no);
    }
  }
  if (block) out.push_back(block->finish());
  return out;
}

std::string serialize_sentence(const AnnotatedSentence& sent) {
  std::string out;
  const std::string text_line = sent.raw.empty() ? "# text =" : "# text = " + sent.raw;
  const std::size_t text_pos = sent.text_comment_pos.value_or(sent.comments.size());
  for (std::size_t i = 0; i <= sent.comments.size(); ++i) {
    if (i == std::min(text_pos, sent.comments.size())) out.append(text_line).push_back('\n');
    if (i < sent.comments.size()) out.append(sent.comments[i]).push_back('\n');
  }
  auto emit_empty = [&](int after) {
    for (const auto& node : sent.empty_nodes) {
      if (node.after == after) out.append(node.line).push_back('\n');
    }
  };
  emit_empty(0);
  for (const Token& t : sent.tokens) {
    for (const auto& mw : sent.multiword) {
      if (mw.first == t.index) {
        out.append(std::to_string(mw.first)).append("-").append(std::to_string(mw.last));
        out.append("\t").append(mw.surface);
        out.append("\t_\t_\t_\t_\t_\t_\t_\t");
        out.append(format_misc(mw.space_after, mw.misc)).push_back('\n');
      }
    }
    out.append(std::to_string(t.index)).push_back('\t');
    out.append(t.surface).push_back('\t');
    out.append(t.lemma.empty() ? "_" : t.lemma).push_back('\t');
    out.append(t.upos.empty() ? "_" : t.upos).push_back('\t');
    out.append(t.xpos.empty() ? "_" : t.xpos).push_back('\t');
    out.append(t.feats.to_string()).push_back('\t');
    out.append(std::to_string(t.head)).push_back('\t');
    out.append(t.deprel.empty() ? "_" : t.deprel).push_back('\t');
    out.append(t.deps.empty() ? "_" : t.deps).push_back('\t');
    out.append(format_misc(t.space_after, t.misc)).push_back('\n');
    emit_empty(t.index);
  }
  out.push_back('\n');
  return out;
}

std::string serialize_conllu(const std::vector<AnnotatedSentence>& sents) {
  std::string out;
  for (const auto& s : sents) out.append(serialize_sentence(s));
  return out;
}

}  // namespace cfgen
