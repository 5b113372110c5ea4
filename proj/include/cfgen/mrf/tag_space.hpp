#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfgen/corpus_model.hpp"

namespace cfgen::mrf {

// Agreement label of one token: a (gender, number) pair, or NoAgr for tokens
// that carry no gender.
struct AgreementTag {
  bool no_agr = true;
  Gender gender = Gender::None;
  Number number = Number::None;

  static AgreementTag none() { return {}; }
  static AgreementTag of(Gender g, Number n) { return {false, g, n}; }

  std::string to_string() const;  // "NoAgr", "Fem|Sing", "Masc|_"
  static std::optional<AgreementTag> parse(std::string_view s);

  auto operator<=>(const AgreementTag&) const = default;
};

// Projection used everywhere: no Gender feature means NoAgr.
AgreementTag tag_of(const Token& t);

// Ordered tag inventory. NoAgr is always ordinal 0; the remaining tags follow
// (gender, number) enum order.
class TagSpace {
 public:
  TagSpace();
  explicit TagSpace(std::vector<AgreementTag> gendered);

  std::size_t size() const { return tags_.size(); }
  const AgreementTag& operator[](std::size_t i) const { return tags_[i]; }
  std::optional<std::size_t> index_of(const AgreementTag& t) const;
  const std::vector<AgreementTag>& tags() const { return tags_; }

  bool operator==(const TagSpace&) const = default;

 private:
  std::vector<AgreementTag> tags_;
};

}  // namespace cfgen::mrf
