#include "cfgen/assembly.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/lexicon.hpp"
#include "cfgen/parallel_corpus.hpp"
#include "cfgen/text.hpp"
#include "json.hpp"

namespace cfgen {
namespace {

bool contains_any(const std::vector<std::string>& words, const std::vector<std::string>& set) {
  return std::any_of(words.begin(), words.end(), [&](const std::string& w) {
    return std::find(set.begin(), set.end(), w) != set.end();
  });
}

std::vector<std::string> lowered_words(std::string_view s) {
  auto words = text::word_tokens(s);
  for (auto& w : words) w = text::to_lower(w);
  return words;
}

Origin origin_for(std::string_view component) {
  if (component == "Random") return Origin::Random;
  if (component == "SB") return Origin::Handcrafted;
  return Origin::Original;
}

}  // namespace

std::string_view to_string(LintKind k) {
  return k == LintKind::PronounMappingHazard ? "PronounMappingHazard" : "IdenticalCounterfactual";
}

BalancedDataset build_balanced_dataset(const std::vector<GenderedSelection>& originals,
                                       const std::vector<ParallelPair>& counterfactuals) {
  std::set<std::string> original_ids;
  for (const auto& sel : originals) original_ids.insert(sel.pair.id);
  std::map<std::string, const ParallelPair*> by_id;
  for (const auto& cf : counterfactuals) {
    if (!original_ids.contains(cf.id)) {
      throw ContractError("counterfactual '" + cf.id + "' has no matching original");
    }
    if (!by_id.emplace(cf.id, &cf).second) {
      throw ContractError("duplicate counterfactual for '" + cf.id + "'");
    }
  }

  BalancedDataset out;
  for (const auto& sel : originals) {
    auto it = by_id.find(sel.pair.id);
    if (it == by_id.end()) continue;
    const ParallelPair& cf = *it->second;
    if (text::nfc(cf.tgt_raw()) == text::nfc(sel.pair.tgt_raw())) {
      out.flags.push_back({sel.pair.id, LintKind::IdenticalCounterfactual,
                           "counterfactual target equals original: " + cf.tgt_raw()});
      continue;
    }
    ParallelPair original = sel.pair;
    original.origin = Origin::Original;
    out.pairs.push_back(std::move(original));
    ParallelPair counter = cf;
    counter.origin = Origin::Counterfactual;
    out.pairs.push_back(std::move(counter));
  }
  return out;
}

std::vector<ParallelPair> parse_handcrafted(std::string_view tsv, const std::string& lang,
                                            std::string_view origin) {
  std::vector<ParallelPair> out;
  for (const auto& row : tsv_rows(tsv)) {
    if (row.cols.size() != 2) {
      throw LoadError(std::string(origin) + ":" + std::to_string(row.line) +
                      ": expected two tab-separated columns");
    }
    out.push_back(make_raw_pair(std::to_string(row.line), std::string(row.cols[0]),
                                std::string(row.cols[1]), lang, Origin::Handcrafted));
  }
  if (out.empty()) throw LoadError(std::string(origin) + ": handcrafted set is empty");
  return out;
}

std::vector<ParallelPair> load_handcrafted(const std::filesystem::path& path,
                                           const std::string& lang) {
  return parse_handcrafted(io::read_file(path), lang, path.string());
}

const SubjectPronouns& subject_pronouns(std::string_view lang) {
  static const std::map<std::string, SubjectPronouns, std::less<>> tables = {
      {"fr", {{"il"}, {"elle"}}},
      {"es", {{"él"}, {"ella"}}},
      {"it", {{"lui", "egli"}, {"lei", "ella"}}},
  };
  static const SubjectPronouns empty;
  auto it = tables.find(lang);
  return it == tables.end() ? empty : it->second;
}

std::vector<LintFlag> lint_counterfactual_pair(const ParallelPair& pair) {
  std::vector<LintFlag> flags;
  const auto& table = subject_pronouns(pair.tgt.lang);
  if (table.masc.empty()) return flags;
  const auto en = lowered_words(pair.src_raw());
  const auto tgt = lowered_words(pair.tgt_raw());
  const bool en_masc = std::find(en.begin(), en.end(), "he") != en.end();
  const bool en_fem = std::find(en.begin(), en.end(), "she") != en.end();
  const bool tgt_masc = contains_any(tgt, table.masc);
  const bool tgt_fem = contains_any(tgt, table.fem);
  if (en_fem && !en_masc && tgt_masc && !tgt_fem) {
    flags.push_back({pair.id, LintKind::PronounMappingHazard,
                     "English 'she' aligned with a masculine-only target subject pronoun"});
  } else if (en_masc && !en_fem && tgt_fem && !tgt_masc) {
    flags.push_back({pair.id, LintKind::PronounMappingHazard,
                     "English 'he' aligned with a feminine-only target subject pronoun"});
  }
  return flags;
}

DatasetRecipe parse_recipe(std::string_view input, const std::filesystem::path& base_dir) {
  DatasetRecipe recipe;
  std::set<std::string> names;
  std::size_t line_no = 0;
  for (auto raw_line : text::split(input, '\n')) {
    ++line_no;
    auto line = text::trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("recipe line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(text::trim(line.substr(0, eq)));
    std::string value(text::trim(line.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "lang") {
      recipe.lang = value;
    } else if (key == "seed") {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), recipe.shuffle_seed);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("recipe line " + std::to_string(line_no) + ": bad seed '" + value + "'");
      }
    } else if (key == "strict_lint") {
      if (value != "true" && value != "false") {
        throw ConfigError("recipe line " + std::to_string(line_no) + ": strict_lint must be true or false");
      }
      recipe.strict_lint = value == "true";
    } else if (key == "GB" || key == "Random" || key == "SB") {
      if (!names.insert(key).second) {
        throw ConfigError("recipe lists component " + key + " twice");
      }
      std::filesystem::path p(value);
      if (p.is_relative()) p = base_dir / p;
      recipe.components.push_back({key, p});
    } else {
      throw ConfigError("recipe line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (recipe.components.empty()) throw ConfigError("recipe has no components");
  return recipe;
}

DatasetRecipe load_recipe(const std::filesystem::path& path) {
  return parse_recipe(io::read_file(path), path.parent_path());
}

std::vector<ParallelPair> mix_pairs(const DatasetRecipe& recipe, MixSummary& summary,
                                    std::vector<LintFlag>* flags) {
  if (recipe.components.empty()) throw ConfigError("recipe has no components");
  summary = {};
  std::vector<ParallelPair> all;
  for (const auto& component : recipe.components) {
    if (!std::filesystem::exists(component.path)) {
      throw LoadError("missing component file " + component.path.string() + " (" +
                      component.name + ")");
    }
    auto pairs = read_parallel_tsv(component.path, recipe.lang);
    summary.component_counts.emplace_back(component.name, pairs.size());
    for (auto& p : pairs) {
      p.id = component.name + ":" + p.id;
      p.origin = origin_for(component.name);
      auto found = lint_counterfactual_pair(p);
      summary.hazard_flags += found.size();
      const bool drop = recipe.strict_lint && !found.empty();
      if (flags) flags->insert(flags->end(), found.begin(), found.end());
      if (drop) {
        ++summary.excluded;
        continue;
      }
      all.push_back(std::move(p));
    }
  }
  seeded_shuffle(all, recipe.shuffle_seed);
  summary.total = all.size();
  return all;
}

MixSummary mix_corpora(const DatasetRecipe& recipe, const std::filesystem::path& out_dir) {
  MixSummary summary;
  const auto pairs = mix_pairs(recipe, summary);
  std::string src;
  std::string tgt;
  for (const auto& p : pairs) {
    src.append(p.src_raw()).push_back('\n');
    tgt.append(p.tgt_raw()).push_back('\n');
  }
  io::write_file(out_dir / "train.src", src);
  io::write_file(out_dir / "train.tgt", tgt);
  io::write_file(out_dir / "train.tsv", format_pairs_tsv(pairs));

  nlohmann::ordered_json manifest;
  manifest["lang"] = recipe.lang;
  manifest["seed"] = recipe.shuffle_seed;
  manifest["strict_lint"] = recipe.strict_lint;
  auto& components = manifest["components"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < recipe.components.size(); ++i) {
    components.push_back({{"name", recipe.components[i].name},
                          {"path", recipe.components[i].path.filename().string()},
                          {"count", summary.component_counts[i].second}});
  }
  manifest["total"] = summary.total;
  manifest["lint"] = {{"PronounMappingHazard", summary.hazard_flags},
                      {"excluded", summary.excluded}};
  io::write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return summary;
}

}  // namespace cfgen
