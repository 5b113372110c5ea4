#include "cfgen/mrf/tag_space.hpp"

#include <algorithm>

#include "cfgen/text.hpp"

namespace cfgen::mrf {

std::string AgreementTag::to_string() const {
  if (no_agr) return "NoAgr";
  return std::string(cfgen::to_string(gender)) + "|" + std::string(cfgen::to_string(number));
}

std::optional<AgreementTag> AgreementTag::parse(std::string_view s) {
  if (s == "NoAgr") return none();
  auto parts = text::split(s, '|');
  if (parts.size() != 2) return std::nullopt;
  Gender g;
  if (parts[0] == "Masc") {
    g = Gender::Masc;
  } else if (parts[0] == "Fem") {
    g = Gender::Fem;
  } else {
    return std::nullopt;
  }
  Number n;
  if (parts[1] == "Sing") {
    n = Number::Sing;
  } else if (parts[1] == "Plur") {
    n = Number::Plur;
  } else if (parts[1] == "_") {
    n = Number::None;
  } else {
    return std::nullopt;
  }
  return of(g, n);
}

AgreementTag tag_of(const Token& t) {
  const Gender g = t.feats.gender();
  if (g == Gender::None) return AgreementTag::none();
  return AgreementTag::of(g, t.feats.number());
}

TagSpace::TagSpace() : tags_{AgreementTag::none()} {}

TagSpace::TagSpace(std::vector<AgreementTag> gendered) : tags_{AgreementTag::none()} {
  std::erase_if(gendered, [](const AgreementTag& t) { return t.no_agr; });
  std::sort(gendered.begin(), gendered.end());
  gendered.erase(std::unique(gendered.begin(), gendered.end()), gendered.end());
  tags_.insert(tags_.end(), gendered.begin(), gendered.end());
}

std::optional<std::size_t> TagSpace::index_of(const AgreementTag& t) const {
  auto it = std::find(tags_.begin(), tags_.end(), t);
  if (it == tags_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tags_.begin());
}

}  // namespace cfgen::mrf
