#include "cfgen/corpus_model.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "cfgen/error.hpp"
#include "cfgen/text.hpp"

namespace cfgen {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::Masc: return "Masc";
    case Gender::Fem: return "Fem";
    case Gender::None: break;
  }
  return "_";
}

std::string_view to_string(Number n) {
  switch (n) {
    case Number::Sing: return "Sing";
    case Number::Plur: return "Plur";
    case Number::None: break;
  }
  return "_";
}

Gender opposite(Gender g) {
  switch (g) {
    case Gender::Masc: return Gender::Fem;
    case Gender::Fem: return Gender::Masc;
    case Gender::None: break;
  }
  return Gender::None;
}

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::Original: return "Original";
    case Origin::Counterfactual: return "Counterfactual";
    case Origin::Random: return "Random";
    case Origin::Handcrafted: return "Handcrafted";
  }
  return "Original";
}

bool CaseInsensitiveLess::operator()(std::string_view a, std::string_view b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto ca = std::tolower(static_cast<unsigned char>(a[i]));
    auto cb = std::tolower(static_cast<unsigned char>(b[i]));
    if (ca != cb) return ca < cb;
  }
  if (a.size() != b.size()) return a.size() < b.size();
  // Keys differing only in case still need a strict order.
  return a < b;
}

MorphFeatures MorphFeatures::parse(std::string_view feats) {
  MorphFeatures out;
  if (feats == "_" || feats.empty()) return out;
  for (auto item : text::split(feats, '|')) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw std::invalid_argument("malformed feature '" + std::string(item) + "'");
    }
    std::string key(item.substr(0, eq));
    if (!out.items_.emplace(key, std::string(item.substr(eq + 1))).second) {
      throw std::invalid_argument("duplicate feature '" + key + "'");
    }
  }
  return out;
}

std::string MorphFeatures::to_string() const {
  if (items_.empty()) return "_";
  std::string out;
  for (const auto& [key, value] : items_) {
    if (!out.empty()) out.push_back('|');
    out.append(key).append("=").append(value);
  }
  return out;
}

Gender MorphFeatures::gender() const {
  auto v = get("Gender");
  if (!v) return Gender::None;
  if (*v == "Masc") return Gender::Masc;
  if (*v == "Fem") return Gender::Fem;
  return Gender::None;
}

Number MorphFeatures::number() const {
  auto v = get("Number");
  if (!v) return Number::None;
  if (*v == "Sing") return Number::Sing;
  if (*v == "Plur") return Number::Plur;
  return Number::None;
}

void MorphFeatures::set_gender(Gender g) {
  if (g == Gender::None) {
    erase("Gender");
  } else {
    set("Gender", std::string(cfgen::to_string(g)));
  }
}

void MorphFeatures::set_number(Number n) {
  if (n == Number::None) {
    erase("Number");
  } else {
    set("Number", std::string(cfgen::to_string(n)));
  }
}

std::optional<std::string_view> MorphFeatures::get(std::string_view key) const {
  auto it = items_.find(key);
  if (it == items_.end()) return std::nullopt;
  return std::string_view(it->second);
}

void MorphFeatures::set(const std::string& key, const std::string& value) {
  items_[key] = value;
}

void MorphFeatures::erase(std::string_view key) {
  auto it = items_.find(key);
  if (it != items_.end()) items_.erase(it);
}

const Token& AnnotatedSentence::at(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > tokens.size()) {
    throw ContractError("token index " + std::to_string(index) + " out of range");
  }
  return tokens[static_cast<std::size_t>(index - 1)];
}

Token& AnnotatedSentence::at(int index) {
  return const_cast<Token&>(static_cast<const AnnotatedSentence&>(*this).at(index));
}

std::vector<int> AnnotatedSentence::children(int index) const {
  std::vector<int> out;
  for (const auto& t : tokens) {
    if (t.head == index) out.push_back(t.index);
  }
  return out;
}

int AnnotatedSentence::root() const {
  for (const auto& t : tokens) {
    if (t.head == 0) return t.index;
  }
  return 0;
}

std::string surface_from_tokens(const AnnotatedSentence& sent) {
  std::string out;
  std::size_t next_range = 0;
  std::vector<MultiwordToken> ranges = sent.multiword;
  std::sort(ranges.begin(), ranges.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool pending_space = false;
  for (std::size_t i = 0; i < sent.tokens.size();) {
    const int idx = static_cast<int>(i) + 1;
    while (next_range < ranges.size() && ranges[next_range].first < idx) ++next_range;
    if (pending_space) out.push_back(' ');
    if (next_range < ranges.size() && ranges[next_range].first == idx) {
      const auto& r = ranges[next_range];
      out.append(r.surface);
      pending_space = r.space_after;
      i = static_cast<std::size_t>(r.last);
      ++next_range;
    } else {
      out.append(sent.tokens[i].surface);
      pending_space = sent.tokens[i].space_after;
      ++i;
    }
  }
  return out;
}

std::optional<std::string> comment_value(const AnnotatedSentence& sent, std::string_view key) {
  const std::string prefix = "# " + std::string(key) + " =";
  for (const auto& c : sent.comments) {
    if (text::starts_with(c, prefix)) {
      return std::string(text::trim(std::string_view(c).substr(prefix.size())));
    }
  }
  return std::nullopt;
}

void set_comment_value(AnnotatedSentence& sent, std::string_view key, std::string_view value) {
  const std::string prefix = "# " + std::string(key) + " =";
  std::string line = prefix + " " + std::string(value);
  for (auto& c : sent.comments) {
    if (text::starts_with(c, prefix)) {
      c = std::move(line);
      return;
    }
  }
  sent.comments.push_back(std::move(line));
}

ParallelPair make_raw_pair(std::string id, std::string src_raw, std::string tgt_raw,
                           std::string tgt_lang, Origin origin) {
  ParallelPair p;
  p.id = std::move(id);
  p.src.lang = "en";
  p.src.raw = std::move(src_raw);
  p.tgt.lang = std::move(tgt_lang);
  p.tgt.raw = std::move(tgt_raw);
  p.origin = origin;
  return p;
}

}  // namespace cfgen
