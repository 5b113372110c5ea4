#pragma once

// Core annotated-corpus types. Everything downstream operates on
// AnnotatedSentence and ParallelPair.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfgen {

enum class Gender { None, Masc, Fem };
enum class Number { None, Sing, Plur };

std::string_view to_string(Gender g);
std::string_view to_string(Number n);
Gender opposite(Gender g);

// UD orders FEATS keys alphabetically, ignoring case.
struct CaseInsensitiveLess {
  bool operator()(std::string_view a, std::string_view b) const;
  using is_transparent = void;
};

// FEATS column. Gender and number are read from the same key/value map that
// is serialized, so the two views cannot drift apart.
class MorphFeatures {
 public:
  using Map = std::map<std::string, std::string, CaseInsensitiveLess>;

  MorphFeatures() = default;

  // Parses "Key=Value|Key=Value" or "_". Throws std::invalid_argument on a
  // malformed item or a duplicated key.
  static MorphFeatures parse(std::string_view feats);
  std::string to_string() const;

  Gender gender() const;
  Number number() const;
  void set_gender(Gender g);
  void set_number(Number n);

  std::optional<std::string_view> get(std::string_view key) const;
  void set(const std::string& key, const std::string& value);
  void erase(std::string_view key);

  const Map& items() const { return items_; }
  bool empty() const { return items_.empty(); }

  bool operator==(const MorphFeatures&) const = default;

 private:
  Map items_;
};

struct Token {
  int index = 0;  // 1-based
  std::string surface;
  std::string lemma;
  std::string upos;
  std::string xpos = "_";
  MorphFeatures feats;
  int head = 0;  // 0 = root
  std::string deprel;
  std::string deps = "_";
  bool space_after = true;
  // MISC items other than SpaceAfter=No, in file order.
  std::vector<std::string> misc;

  bool operator==(const Token&) const = default;
};

// A range line such as "3-4  au". The parts stay in the tree; the range only
// drives surface reconstruction.
struct MultiwordToken {
  int first = 0;
  int last = 0;
  std::string surface;
  bool space_after = true;
  std::vector<std::string> misc;

  bool operator==(const MultiwordToken&) const = default;
};

// Empty nodes (IDs like "5.1") are kept verbatim; enhanced graphs are not
// interpreted.
struct EmptyNode {
  int after = 0;
  std::string line;

  bool operator==(const EmptyNode&) const = default;
};

struct AnnotatedSentence {
  std::vector<Token> tokens;
  std::vector<MultiwordToken> multiword;
  std::vector<EmptyNode> empty_nodes;
  // Comment lines without the leading "# text =" line, which is regenerated
  // from `raw` at `text_comment_pos`.
  std::vector<std::string> comments;
  std::optional<std::size_t> text_comment_pos;
  std::string raw;
  std::string lang;

  std::size_t size() const { return tokens.size(); }
  const Token& at(int index) const;  // 1-based
  Token& at(int index);
  std::vector<int> children(int index) const;
  int root() const;

  bool operator==(const AnnotatedSentence&) const = default;
};

// Surface string rebuilt from token / multiword surfaces and SpaceAfter flags.
std::string surface_from_tokens(const AnnotatedSentence& sent);

// Comment key value, e.g. comment_value(s, "sent_id").
std::optional<std::string> comment_value(const AnnotatedSentence& sent, std::string_view key);
void set_comment_value(AnnotatedSentence& sent, std::string_view key, std::string_view value);

enum class Origin { Original, Counterfactual, Random, Handcrafted };
std::string_view to_string(Origin o);

struct ParallelPair {
  std::string id;  // stable identifier, usually the 1-based corpus line
  AnnotatedSentence src;
  AnnotatedSentence tgt;
  Origin origin = Origin::Original;

  const std::string& src_raw() const { return src.raw; }
  const std::string& tgt_raw() const { return tgt.raw; }
};

ParallelPair make_raw_pair(std::string id, std::string src_raw, std::string tgt_raw,
                           std::string tgt_lang, Origin origin = Origin::Original);

}  // namespace cfgen
