#include "cfgen/challenge_eval.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/text.hpp"

namespace cfgen {
namespace {

struct Match {
  std::size_t pos = std::string::npos;
  std::size_t len = 0;
};

// Leftmost word-bounded occurrence of `needle` in `hay` (both lower-cased).
Match find_word(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return {};
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + 1)) {
    if (!text::letter_before(hay, pos) && !text::letter_at(hay, pos + needle.size())) {
      return {pos, needle.size()};
    }
  }
  return {};
}

// Text immediately before `pos`: the elided article ("l'", "un'") when the
// match is glued to an apostrophe, otherwise the previous word.
std::string preceding_article(std::string_view s, std::size_t pos) {
  auto before = s.substr(0, pos);
  const bool elided = text::ends_with(before, "'") || text::ends_with(before, "’");
  before = text::trim(before);
  if (elided) {
    const std::size_t cut = text::ends_with(before, "'") ? 1 : 3;
    auto words = text::word_tokens(before.substr(0, before.size() - cut));
    return words.empty() ? std::string() : words.back() + "'";
  }
  auto words = text::word_tokens(before);
  return words.empty() ? std::string() : words.back();
}

double percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double f1(std::size_t tp, std::size_t predicted, std::size_t gold) {
  const double p = predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
  const double r = gold == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(gold);
  return p + r == 0 ? 0.0 : 100.0 * 2 * p * r / (p + r);
}

double one_decimal(double x) { return std::round(x * 10.0) / 10.0; }

}  // namespace

std::string_view to_string(EntityGender g) {
  switch (g) {
    case EntityGender::Male: return "male";
    case EntityGender::Female: return "female";
    case EntityGender::Unknown: break;
  }
  return "unknown";
}

std::string_view to_string(Stereotype s) {
  switch (s) {
    case Stereotype::Pro: return "pro";
    case Stereotype::Anti: return "anti";
    case Stereotype::Neither: break;
  }
  return "neither";
}

EntityGender parse_entity_gender(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "male") return EntityGender::Male;
  if (v == "female") return EntityGender::Female;
  throw std::invalid_argument("gold gender must be male or female, got '" + std::string(s) + "'");
}

Stereotype parse_stereotype(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "pro") return Stereotype::Pro;
  if (v == "anti") return Stereotype::Anti;
  if (v == "neither" || v == "none" || v == "neutral") return Stereotype::Neither;
  throw std::invalid_argument("unknown stereotype label '" + std::string(s) + "'");
}

std::vector<ChallengeItem> parse_challenge_set(std::string_view tsv,
                                               const std::vector<std::string>* sidecar) {
  std::vector<ChallengeItem> items;
  for (const auto& row : tsv_rows(tsv)) {
    if (row.cols.size() != 4 && row.cols.size() != 5) {
      throw FormatError("challenge row needs 4 or 5 columns, got " + std::to_string(row.cols.size()),
                        row.line);
    }
    ChallengeItem item;
    try {
      item.gold = parse_entity_gender(row.cols[0]);
      if (row.cols.size() == 5) item.stereotype = parse_stereotype(row.cols[4]);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), row.line);
    }
    const auto idx = text::trim(row.cols[1]);
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), item.entity_index);
    if (ec != std::errc() || ptr != idx.data() + idx.size() || item.entity_index < 0) {
      throw FormatError("bad entity index '" + std::string(idx) + "'", row.line);
    }
    item.source = std::string(row.cols[2]);
    item.entity_word = std::string(text::trim(row.cols[3]));
    if (find_word(text::to_lower(item.source), text::to_lower(item.entity_word)).pos ==
        std::string::npos) {
      throw FormatError("entity '" + item.entity_word + "' does not occur in the source", row.line);
    }
    items.push_back(std::move(item));
  }
  if (sidecar) {
    std::vector<std::string_view> labels;
    for (const auto& l : *sidecar) {
      if (!text::trim(l).empty()) labels.push_back(l);
    }
    if (labels.size() != items.size()) {
      throw LoadError("stereotype file has " + std::to_string(labels.size()) + " labels for " +
                      std::to_string(items.size()) + " items");
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      try {
        items[i].stereotype = parse_stereotype(labels[i]);
      } catch (const std::invalid_argument& e) {
        throw LoadError(std::string("stereotype file: ") + e.what());
      }
    }
  }
  return items;
}

std::vector<ChallengeItem> load_challenge_set(const std::filesystem::path& path,
                                              const std::optional<std::filesystem::path>& sidecar) {
  if (!sidecar) return parse_challenge_set(io::read_file(path));
  const auto labels = io::read_lines(*sidecar);
  return parse_challenge_set(io::read_file(path), &labels);
}

EntityGender article_gender(std::string_view article, std::string_view lang) {
  using Table = std::map<std::string, EntityGender, std::less<>>;
  constexpr auto M = EntityGender::Male;
  constexpr auto F = EntityGender::Female;
  static const std::map<std::string, Table, std::less<>> tables = {
      {"fr",
       {{"le", M}, {"un", M}, {"ce", M}, {"cet", M}, {"du", M}, {"au", M}, {"mon", M},
        {"ton", M}, {"son", M},
        {"la", F}, {"une", F}, {"cette", F}, {"ma", F}, {"ta", F}, {"sa", F}}},
      {"es",
       {{"el", M}, {"un", M}, {"del", M}, {"al", M}, {"este", M}, {"ese", M}, {"aquel", M},
        {"la", F}, {"una", F}, {"esta", F}, {"esa", F}, {"aquella", F}}},
      {"it",
       {{"il", M}, {"lo", M}, {"un", M}, {"uno", M}, {"del", M}, {"dello", M}, {"al", M},
        {"allo", M}, {"nel", M}, {"dal", M}, {"sul", M}, {"questo", M}, {"quel", M},
        {"la", F}, {"una", F}, {"un'", F}, {"della", F}, {"alla", F}, {"nella", F},
        {"dalla", F}, {"sulla", F}, {"questa", F}, {"quella", F}}},
  };
  auto t = tables.find(lang);
  if (t == tables.end()) return EntityGender::Unknown;
  auto key = text::to_lower(article);
  if (text::ends_with(key, "’")) key = key.substr(0, key.size() - 3) + "'";
  auto it = t->second.find(key);
  return it == t->second.end() ? EntityGender::Unknown : it->second;
}

GenderPrediction extract_predicted_gender(const ChallengeItem& item, std::string_view translation,
                                          const AnimacyLexicon& lex, std::string_view lang) {
  const GenderedForms* forms = lex.find(item.entity_word, lang);
  if (!forms) {
    throw ConfigError("animacy lexicon has no " + std::string(lang) + " entry for '" +
                      item.entity_word + "'");
  }
  const auto hay = text::to_lower(translation);
  const auto masc = text::to_lower(forms->masc);
  const auto fem = text::to_lower(forms->fem);
  const Match m = find_word(hay, masc);
  const Match f = find_word(hay, fem);

  auto better = [](const Match& a, const Match& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.len > b.len;
  };
  GenderPrediction out;
  if (m.pos == std::string::npos && f.pos == std::string::npos) return out;
  const bool take_fem = m.pos == std::string::npos || (f.pos != std::string::npos && better(f, m));
  const Match& hit = take_fem ? f : m;
  out.matched_form = std::string(translation.substr(hit.pos, hit.len));
  if (forms->epicene()) {
    out.predicted = article_gender(preceding_article(translation, hit.pos), lang);
  } else {
    out.predicted = take_fem ? EntityGender::Female : EntityGender::Male;
  }
  return out;
}

MetricsReport compute_metrics(const std::vector<ChallengeItem>& items,
                              const std::vector<GenderPrediction>& predictions) {
  if (items.size() != predictions.size()) {
    throw ContractError("metrics need one prediction per item: " + std::to_string(items.size()) +
                        " items, " + std::to_string(predictions.size()) + " predictions");
  }
  MetricsReport r;
  r.total = items.size();
  std::size_t correct = 0;
  std::size_t pro_ok = 0;
  std::size_t anti_ok = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.gold == EntityGender::Unknown) throw ContractError("gold gender must be male or female");
    const bool ok = predictions[i].predicted == item.gold;
    correct += ok;
    switch (item.stereotype) {
      case Stereotype::Pro:
        ++r.pro_count;
        pro_ok += ok;
        break;
      case Stereotype::Anti:
        ++r.anti_count;
        anti_ok += ok;
        break;
      case Stereotype::Neither:
        ++r.neither_count;
        break;
    }
    ++r.confusion[item.gold == EntityGender::Male ? 0 : 1][static_cast<int>(predictions[i].predicted)];
  }
  r.acc = percent(correct, r.total);
  r.pro = percent(pro_ok, r.pro_count);
  r.anti = percent(anti_ok, r.anti_count);
  r.delta_s = r.pro - r.anti;

  const auto& c = r.confusion;
  r.f1_male = f1(c[0][0], c[0][0] + c[1][0], c[0][0] + c[0][1] + c[0][2]);
  r.f1_female = f1(c[1][1], c[0][1] + c[1][1], c[1][0] + c[1][1] + c[1][2]);
  r.delta_g = r.f1_male - r.f1_female;
  return r;
}

nlohmann::ordered_json metrics_to_json(const MetricsReport& m) {
  using json = nlohmann::ordered_json;
  json out;
  out["acc"] = one_decimal(m.acc);
  out["pro"] = one_decimal(m.pro);
  out["anti"] = one_decimal(m.anti);
  out["delta_s"] = one_decimal(m.delta_s);
  out["delta_g"] = one_decimal(m.delta_g);
  out["f1_male"] = one_decimal(m.f1_male);
  out["f1_female"] = one_decimal(m.f1_female);
  out["counts"] = {{"total", m.total},
                   {"pro", m.pro_count},
                   {"anti", m.anti_count},
                   {"neither", m.neither_count}};
  json confusion;
  for (int g = 0; g < 2; ++g) {
    confusion[g == 0 ? "male" : "female"] = {{"male", m.confusion[g][0]},
                                             {"female", m.confusion[g][1]},
                                             {"unknown", m.confusion[g][2]}};
  }
  out["confusion"] = confusion;
  out["raw"] = {{"acc", m.acc},         {"pro", m.pro},           {"anti", m.anti},
                {"delta_s", m.delta_s}, {"delta_g", m.delta_g},   {"f1_male", m.f1_male},
                {"f1_female", m.f1_female}};
  return out;
}

std::string audit_tsv(const std::vector<ChallengeItem>& items,
                      const std::vector<GenderPrediction>& predictions) {
  if (items.size() != predictions.size()) {
    throw ContractError("audit needs one prediction per item");
  }
  std::string out = "item\tgold\tstereotype\tentity\tpredicted\tmatched_form\tcorrect\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    const auto& p = predictions[i];
    out += std::to_string(i + 1) + '\t' + std::string(to_string(it.gold)) + '\t' +
           std::string(to_string(it.stereotype)) + '\t' + it.entity_word + '\t' +
           std::string(to_string(p.predicted)) + '\t' + p.matched_form.value_or("_") + '\t' +
           (p.predicted == it.gold ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace cfgen
