#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cfgen/assembly.hpp"
#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace cfgen;

namespace {

GenderedSelection original(const std::string& id, const std::string& src, const std::string& tgt,
                           const std::string& lemma = "nurse") {
  GenderedSelection s;
  s.pair = make_raw_pair(id, src, tgt, "fr");
  s.profession_lemma = lemma;
  return s;
}

ParallelPair cf(const std::string& id, const std::string& src, const std::string& tgt) {
  return make_raw_pair(id, src, tgt, "fr", Origin::Counterfactual);
}

void write_component(const std::filesystem::path& p, const std::string& tag, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) {
    out += "The " + tag + " sentence " + std::to_string(i) + ".\tLa phrase " + tag + " " +
           std::to_string(i) + ".\n";
  }
  io::write_file(p, out);
}

}  // namespace

TEST(Balanced, PairsOriginalThenCounterfactual) {
  std::vector<GenderedSelection> orig{
      original("1", "The nurse finished his work.", "L'infirmier termine son travail."),
      original("2", "The baker finished her work.", "La boulangère termine son travail.", "baker")};
  std::vector<ParallelPair> cfs{
      cf("2", "The baker finished his work.", "Le boulanger termine son travail."),
      cf("1", "The nurse finished her work.", "L'infirmière termine son travail.")};
  auto ds = build_balanced_dataset(orig, cfs);
  ASSERT_EQ(ds.pairs.size(), 4u);
  EXPECT_TRUE(ds.flags.empty());
  EXPECT_EQ(ds.pairs[0].id, "1");
  EXPECT_EQ(ds.pairs[0].origin, Origin::Original);
  EXPECT_EQ(ds.pairs[1].id, "1");
  EXPECT_EQ(ds.pairs[1].origin, Origin::Counterfactual);
  EXPECT_EQ(ds.pairs[3].tgt_raw(), "Le boulanger termine son travail.");
}

TEST(Balanced, IdenticalCounterfactualDroppedAfterNfc) {
  std::vector<GenderedSelection> orig{
      original("1", "The nurse said she was late.", "L'infirmière était en retard."),
      original("2", "The nurse said he was late.", "L'infirmier était en retard.")};
  // Same text, decomposed accent.
  std::vector<ParallelPair> cfs{
      cf("1", "The nurse said he was late.", "L'infirmie\xCC\x80re était en retard."),
      cf("2", "The nurse said she was late.", "L'infirmière était en retard.")};
  auto ds = build_balanced_dataset(orig, cfs);
  ASSERT_EQ(ds.pairs.size(), 2u);
  EXPECT_EQ(ds.pairs[0].id, "2");
  ASSERT_EQ(ds.flags.size(), 1u);
  EXPECT_EQ(ds.flags[0].pair_id, "1");
  EXPECT_EQ(ds.flags[0].kind, LintKind::IdenticalCounterfactual);
}

TEST(Balanced, MissingAndOrphanCounterfactuals) {
  std::vector<GenderedSelection> orig{original("1", "a", "b"), original("2", "c", "d")};
  auto ds = build_balanced_dataset(orig, {cf("2", "c2", "d2")});
  ASSERT_EQ(ds.pairs.size(), 2u);
  EXPECT_EQ(ds.pairs[0].id, "2");
  EXPECT_THROW(build_balanced_dataset(orig, {cf("9", "x", "y")}), ContractError);
  EXPECT_THROW(build_balanced_dataset(orig, {cf("1", "x", "y"), cf("1", "x", "z")}), ContractError);
}

TEST(Balanced, GenderCountsBalancedPerProfession) {
  std::vector<GenderedSelection> orig;
  std::vector<ParallelPair> cfs;
  const char* profs[] = {"nurse", "baker", "doctor"};
  int id = 0;
  for (int p = 0; p < 3; ++p) {
    for (int k = 0; k <= p * 3; ++k) {  // skewed: mostly masculine
      const bool masc = k % 4 != 0;
      const std::string s = std::string("The ") + profs[p] + " lost " + (masc ? "his" : "her") + " keys.";
      const std::string t = std::string("The ") + profs[p] + " lost " + (masc ? "her" : "his") + " keys.";
      const auto sid = std::to_string(++id);
      orig.push_back(original(sid, s, "x" + sid, profs[p]));
      cfs.push_back(cf(sid, t, "y" + sid));
    }
  }
  auto ds = build_balanced_dataset(orig, cfs);
  std::map<std::string, std::pair<int, int>> counts;
  for (const auto& pair : ds.pairs) {
    const auto words = pair.src_raw();
    const std::string prof = words.substr(4, words.find(' ', 4) - 4);
    if (words.find(" his ") != std::string::npos) ++counts[prof].first;
    if (words.find(" her ") != std::string::npos) ++counts[prof].second;
  }
  for (const auto& [prof, mf] : counts) EXPECT_EQ(mf.first, mf.second) << prof;
}

TEST(Handcrafted, ParseVerbatim) {
  auto pairs = parse_handcrafted("The nurse finished her work.\tL'infirmière a fini son travail.\n\n", "fr");
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].origin, Origin::Handcrafted);
  EXPECT_EQ(pairs[0].tgt_raw(), "L'infirmière a fini son travail.");
  EXPECT_THROW(parse_handcrafted("", "fr"), LoadError);
  EXPECT_THROW(parse_handcrafted("one column only\n", "fr"), LoadError);
  auto shipped = load_handcrafted(test::fixture("corpus/handcrafted.fr.tsv"), "fr");
  EXPECT_EQ(shipped.size(), 12u);
}

TEST(Lint, SubjectPronounTables) {
  EXPECT_EQ(subject_pronouns("fr").masc, std::vector<std::string>{"il"});
  EXPECT_EQ(subject_pronouns("it").fem, (std::vector<std::string>{"lei", "ella"}));
  EXPECT_TRUE(subject_pronouns("de").masc.empty());
}

TEST(Lint, PronounMappingHazard) {
  auto hazard = make_raw_pair("t5", "She didn't wait around for the reporter to come calling.",
                              "Il n'a pas attendu que la journaliste l'appelle.", "fr");
  auto flags = lint_counterfactual_pair(hazard);
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_EQ(flags[0].kind, LintKind::PronounMappingHazard);
  EXPECT_EQ(flags[0].pair_id, "t5");

  auto reverse = make_raw_pair("r", "He said it.", "Elle l'a dit.", "fr");
  EXPECT_EQ(lint_counterfactual_pair(reverse).size(), 1u);
  auto fine = make_raw_pair("f", "She said it.", "Elle l'a dit.", "fr");
  EXPECT_TRUE(lint_counterfactual_pair(fine).empty());
  auto both = make_raw_pair("b", "She said he left.", "Elle a dit qu'il est parti.", "fr");
  EXPECT_TRUE(lint_counterfactual_pair(both).empty());
  // Word-bounded: "ils" and "shell" are not subject pronouns here.
  auto bounded = make_raw_pair("w", "The shell broke.", "Ils ont cassé la coquille.", "fr");
  EXPECT_TRUE(lint_counterfactual_pair(bounded).empty());
  auto es = make_raw_pair("e", "She pays.", "Él paga.", "es");
  EXPECT_EQ(lint_counterfactual_pair(es).size(), 1u);
}

TEST(Recipe, ParseAndErrors) {
  auto r = parse_recipe("# mix\nlang = es\nseed = 7\nstrict_lint = true\nGB = gb.tsv\nRandom = /abs/r.tsv\n",
                        "/base");
  EXPECT_EQ(r.lang, "es");
  EXPECT_EQ(r.shuffle_seed, 7u);
  EXPECT_TRUE(r.strict_lint);
  ASSERT_EQ(r.components.size(), 2u);
  EXPECT_EQ(r.components[0].path, std::filesystem::path("/base/gb.tsv"));
  EXPECT_EQ(r.components[1].path, std::filesystem::path("/abs/r.tsv"));
  EXPECT_THROW(parse_recipe("lang = es\n", "."), ConfigError);
  EXPECT_THROW(parse_recipe("GB gb.tsv\n", "."), ConfigError);
  EXPECT_THROW(parse_recipe("GB = a\nGB = b\n", "."), ConfigError);
  EXPECT_THROW(parse_recipe("Wiki = a\n", "."), ConfigError);
  EXPECT_THROW(parse_recipe("seed = x\nGB = a\n", "."), ConfigError);
  EXPECT_THROW(parse_recipe("strict_lint = yes\nGB = a\n", "."), ConfigError);
}

TEST(Recipe, SpanishMixCounts) {
  const auto dir = test::scratch_dir("mix_es");
  write_component(dir / "gb.tsv", "gb", 413);
  write_component(dir / "random.tsv", "random", 200);
  write_component(dir / "sb.tsv", "sb", 388);
  io::write_file(dir / "recipe.txt", "lang = es\nseed = 11\nGB = gb.tsv\nRandom = random.tsv\nSB = sb.tsv\n");
  const auto recipe = load_recipe(dir / "recipe.txt");

  MixSummary summary;
  const auto mixed = mix_pairs(recipe, summary);
  EXPECT_EQ(summary.total, 1001u);
  ASSERT_EQ(summary.component_counts.size(), 3u);
  EXPECT_EQ(summary.component_counts[0], (std::pair<std::string, std::size_t>{"GB", 413}));
  EXPECT_EQ(summary.component_counts[1].second, 200u);
  EXPECT_EQ(summary.component_counts[2].second, 388u);
  ASSERT_EQ(mixed.size(), 1001u);

  std::map<Origin, int> origins;
  std::set<std::string> ids;
  for (const auto& p : mixed) {
    ++origins[p.origin];
    ids.insert(p.id);
  }
  EXPECT_EQ(ids.size(), 1001u);
  EXPECT_EQ(origins[Origin::Random], 200);
  EXPECT_EQ(origins[Origin::Handcrafted], 388);
  EXPECT_TRUE(ids.contains("GB:1"));
  EXPECT_TRUE(ids.contains("SB:388"));

  // Shuffled, and the same every time.
  bool moved = false;
  for (std::size_t i = 0; i < 413; ++i) moved |= mixed[i].id != "GB:" + std::to_string(i + 1);
  EXPECT_TRUE(moved);
  MixSummary again;
  const auto mixed2 = mix_pairs(recipe, again);
  for (std::size_t i = 0; i < mixed.size(); ++i) ASSERT_EQ(mixed[i].id, mixed2[i].id);

  const auto out = dir / "out";
  mix_corpora(recipe, out);
  const auto manifest = nlohmann::json::parse(io::read_file(out / "manifest.json"));
  EXPECT_EQ(manifest["total"], 1001);
  EXPECT_EQ(manifest["components"][2]["name"], "SB");
  EXPECT_EQ(manifest["components"][2]["count"], 388);
  EXPECT_EQ(manifest["components"][0]["path"], "gb.tsv");
  EXPECT_EQ(io::read_lines(out / "train.src").size(), 1001u);
  EXPECT_EQ(io::read_lines(out / "train.tgt").size(), 1001u);
  const auto first_manifest = io::read_file(out / "manifest.json");
  const auto first_tsv = io::read_file(out / "train.tsv");
  mix_corpora(recipe, out);
  EXPECT_EQ(io::read_file(out / "manifest.json"), first_manifest);
  EXPECT_EQ(io::read_file(out / "train.tsv"), first_tsv);
}

TEST(Recipe, StrictLintDropsFlaggedPairs) {
  const auto dir = test::scratch_dir("mix_strict");
  io::write_file(dir / "gb.tsv",
                 "She didn't wait for the reporter.\tIl n'a pas attendu la journaliste.\n"
                 "She waited for the reporter.\tElle a attendu la journaliste.\n");
  io::write_file(dir / "r.txt", "lang = fr\nGB = gb.tsv\n");
  auto recipe = load_recipe(dir / "r.txt");
  MixSummary loose;
  std::vector<LintFlag> flags;
  EXPECT_EQ(mix_pairs(recipe, loose, &flags).size(), 2u);
  EXPECT_EQ(loose.hazard_flags, 1u);
  EXPECT_EQ(loose.excluded, 0u);
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_EQ(flags[0].pair_id, "GB:1");
  recipe.strict_lint = true;
  MixSummary strict;
  EXPECT_EQ(mix_pairs(recipe, strict).size(), 1u);
  EXPECT_EQ(strict.excluded, 1u);
}

TEST(Recipe, MissingComponentFile) {
  const auto dir = test::scratch_dir("mix_missing");
  io::write_file(dir / "r.txt", "GB = nope.tsv\n");
  MixSummary s;
  EXPECT_THROW(mix_pairs(load_recipe(dir / "r.txt"), s), LoadError);
}

TEST(Shuffle, FisherYatesIsAPermutation) {
  std::vector<int> v(100);
  for (int i = 0; i < 100; ++i) v[static_cast<std::size_t>(i)] = i;
  auto w = v;
  seeded_shuffle(w, 3);
  EXPECT_NE(w, v);
  auto sorted = w;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, v);
  auto w2 = v;
  seeded_shuffle(w2, 3);
  EXPECT_EQ(w, w2);
}
