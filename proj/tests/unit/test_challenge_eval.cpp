#include <gtest/gtest.h>

#include <cmath>

#include "cfgen/challenge_eval.hpp"
#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/random.hpp"
#include "support.hpp"

using namespace cfgen;

namespace {

std::vector<ChallengeItem> fixture_items() {
  return load_challenge_set(test::fixture("winomt/fr.tsv"), test::fixture("winomt/stereotypes.txt"));
}

std::vector<GenderPrediction> fixture_predictions(const std::vector<ChallengeItem>& items) {
  const auto lines = io::read_lines(test::fixture("winomt/translations.fr.txt"));
  std::vector<GenderPrediction> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back(extract_predicted_gender(items[i], lines.at(i), test::resources().animacy, "fr"));
  }
  return out;
}

ChallengeItem item(EntityGender g, Stereotype s) {
  ChallengeItem it;
  it.gold = g;
  it.stereotype = s;
  it.source = "The nurse left.";
  it.entity_word = "nurse";
  return it;
}

EntityGender flip(EntityGender g) {
  if (g == EntityGender::Male) return EntityGender::Female;
  if (g == EntityGender::Female) return EntityGender::Male;
  return g;
}

}  // namespace

TEST(Challenge, ParseRowsAndSidecar) {
  auto items = fixture_items();
  ASSERT_EQ(items.size(), 12u);
  EXPECT_EQ(items[0].gold, EntityGender::Male);
  EXPECT_EQ(items[0].entity_word, "developer");
  EXPECT_EQ(items[4].stereotype, Stereotype::Anti);
  EXPECT_EQ(items[11].stereotype, Stereotype::Neither);
  auto inline5 = parse_challenge_set("female\t1\tThe nurse left.\tnurse\tpro\n");
  EXPECT_EQ(inline5[0].stereotype, Stereotype::Pro);
  auto none = parse_challenge_set("male\t1\tThe nurse left.\tnurse\n");
  EXPECT_EQ(none[0].stereotype, Stereotype::Neither);
}

TEST(Challenge, ParseErrors) {
  EXPECT_THROW(parse_challenge_set("male\t1\tThe nurse left.\n"), FormatError);
  EXPECT_THROW(parse_challenge_set("neutral\t1\tThe nurse left.\tnurse\n"), FormatError);
  EXPECT_THROW(parse_challenge_set("male\tx\tThe nurse left.\tnurse\n"), FormatError);
  // Entity must occur as a word in the source.
  EXPECT_THROW(parse_challenge_set("male\t1\tThe nurses left.\tnurse\n"), FormatError);
  std::vector<std::string> short_sidecar{"pro"};
  EXPECT_THROW(parse_challenge_set("male\t1\tThe nurse left.\tnurse\nmale\t1\tThe nurse left.\tnurse\n",
                                   &short_sidecar),
               InputError);
  EXPECT_EQ(parse_stereotype("None"), Stereotype::Neither);
  EXPECT_EQ(parse_entity_gender("FEMALE"), EntityGender::Female);
}

TEST(Challenge, ExtractionOnFixture) {
  const auto items = fixture_items();
  const auto preds = fixture_predictions(items);
  const auto rows = tsv_rows(io::read_file(test::fixture("winomt/expected.tsv")));
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(to_string(preds[i].predicted), rows[i].cols[1]) << "item " << i + 1;
    EXPECT_EQ(preds[i].predicted == items[i].gold, rows[i].cols[2] == "1") << "item " << i + 1;
  }
  EXPECT_EQ(preds[2].matched_form, "secrétaire");
  EXPECT_FALSE(preds[10].matched_form);
}

TEST(Challenge, HandComputedMetrics) {
  const auto items = fixture_items();
  const auto m = compute_metrics(items, fixture_predictions(items));
  EXPECT_DOUBLE_EQ(m.acc, 700.0 / 12.0);
  EXPECT_DOUBLE_EQ(m.pro, 75.0);
  EXPECT_DOUBLE_EQ(m.anti, 50.0);
  EXPECT_DOUBLE_EQ(m.delta_s, 25.0);
  EXPECT_NEAR(m.f1_male, 200.0 / 3.0, 1e-9);
  EXPECT_NEAR(m.f1_female, 600.0 / 11.0, 1e-9);
  EXPECT_NEAR(m.delta_g, 400.0 / 33.0, 1e-9);
  EXPECT_EQ(m.total, 12u);
  EXPECT_EQ(m.pro_count, 4u);
  EXPECT_EQ(m.neither_count, 4u);
  EXPECT_EQ(m.confusion[0], (std::array<std::size_t, 3>{4, 2, 0}));
  EXPECT_EQ(m.confusion[1], (std::array<std::size_t, 3>{2, 3, 1}));

  const auto j = metrics_to_json(m);
  EXPECT_EQ(j["acc"].get<double>(), 58.3);
  EXPECT_EQ(j["delta_g"].get<double>(), 12.1);
  EXPECT_EQ(j["f1_female"].get<double>(), 54.5);
  EXPECT_DOUBLE_EQ(j["raw"]["acc"].get<double>(), 700.0 / 12.0);
  EXPECT_EQ(j["confusion"]["female"]["unknown"], 1);
}

TEST(Challenge, PerfectSystemIsSymmetric) {
  const auto items = fixture_items();
  std::vector<GenderPrediction> perfect;
  for (const auto& it : items) perfect.push_back({it.gold, std::nullopt});
  const auto m = compute_metrics(items, perfect);
  EXPECT_EQ(m.acc, 100.0);
  EXPECT_EQ(m.pro, 100.0);
  EXPECT_EQ(m.anti, 100.0);
  EXPECT_EQ(m.delta_s, 0.0);
  EXPECT_EQ(m.delta_g, 0.0);
}

TEST(Challenge, EmptySubsetsScoreZero) {
  std::vector<ChallengeItem> items{item(EntityGender::Male, Stereotype::Neither)};
  const auto m = compute_metrics(items, {{EntityGender::Unknown, std::nullopt}});
  EXPECT_EQ(m.pro, 0.0);
  EXPECT_EQ(m.f1_male, 0.0);
  EXPECT_EQ(m.f1_female, 0.0);
  EXPECT_THROW(compute_metrics(items, {}), ContractError);
}

TEST(ChallengeProperty, SwappingGendersNegatesDeltaG) {
  Rng rng(77);
  const EntityGender genders[] = {EntityGender::Male, EntityGender::Female, EntityGender::Unknown};
  const Stereotype stereos[] = {Stereotype::Pro, Stereotype::Anti, Stereotype::Neither};
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t n = 1 + uniform_below(rng, 40);
    std::vector<ChallengeItem> items, swapped_items;
    std::vector<GenderPrediction> preds, swapped_preds;
    for (std::size_t i = 0; i < n; ++i) {
      auto it = item(genders[uniform_below(rng, 2)], stereos[uniform_below(rng, 3)]);
      GenderPrediction p{genders[uniform_below(rng, 3)], std::nullopt};
      items.push_back(it);
      preds.push_back(p);
      it.gold = flip(it.gold);
      p.predicted = flip(p.predicted);
      swapped_items.push_back(it);
      swapped_preds.push_back(p);
    }
    const auto a = compute_metrics(items, preds);
    const auto b = compute_metrics(swapped_items, swapped_preds);
    EXPECT_NEAR(a.delta_g, -b.delta_g, 1e-9);
    EXPECT_EQ(a.acc, b.acc);
    EXPECT_EQ(a.delta_s, a.pro - a.anti);
    EXPECT_GE(a.f1_male, 0.0);
    EXPECT_LE(a.f1_female, 100.0);
    std::size_t total = 0;
    for (const auto& row : a.confusion) {
      for (auto c : row) total += c;
    }
    EXPECT_EQ(total, n);
  }
}

// Each row of the published WinoMT table: items are synthesized so that the
// pro and anti subsets hit the printed accuracies, then delta_s must agree
// with the printed value up to rounding.
TEST(Challenge, PublishedTableArithmetic) {
  const auto rows = tsv_rows(io::read_file(test::fixture("published_winomt.tsv")));
  ASSERT_EQ(rows.size(), 18u);
  for (const auto& row : rows) {
    const double pro = std::stod(std::string(row.cols[3]));
    const double anti = std::stod(std::string(row.cols[4]));
    const double printed = std::stod(std::string(row.cols[5]));
    std::vector<ChallengeItem> items;
    std::vector<GenderPrediction> preds;
    auto add = [&](Stereotype s, double pct) {
      const int correct = static_cast<int>(std::lround(pct * 10));
      for (int i = 0; i < 1000; ++i) {
        items.push_back(item(EntityGender::Female, s));
        preds.push_back({i < correct ? EntityGender::Female : EntityGender::Male, std::nullopt});
      }
    };
    add(Stereotype::Pro, pro);
    add(Stereotype::Anti, anti);
    const auto m = compute_metrics(items, preds);
    EXPECT_NEAR(m.pro, pro, 1e-9);
    EXPECT_NEAR(m.anti, anti, 1e-9);
    const std::string label = std::string(row.cols[0]) + " " + std::string(row.cols[1]);
    EXPECT_NEAR(m.delta_s, printed, 0.5) << label;
    if (label == "Baseline fr") {
      EXPECT_NEAR(printed - m.delta_s, 0.3, 1e-9);
    } else {
      EXPECT_NEAR(m.delta_s, printed, 0.05) << label;
    }
  }
}

TEST(Challenge, ExtractionRules) {
  const auto& lex = test::resources().animacy;
  auto nurse = item(EntityGender::Female, Stereotype::Pro);
  // Leftmost match wins.
  auto p = extract_predicted_gender(nurse, "L'infirmier a parlé à l'infirmière.", lex, "fr");
  EXPECT_EQ(p.predicted, EntityGender::Male);
  // Word-bounded: "infirmier" inside "infirmière" does not count.
  p = extract_predicted_gender(nurse, "Les INFIRMIÈRE.", lex, "fr");
  EXPECT_EQ(p.predicted, EntityGender::Female);
  ChallengeItem unknown_word = nurse;
  unknown_word.entity_word = "astronaut";
  EXPECT_THROW(extract_predicted_gender(unknown_word, "x", lex, "fr"), ConfigError);
  // Epicene forms go by the article.
  ChallengeItem j = nurse;
  j.entity_word = "journalist";
  EXPECT_EQ(extract_predicted_gender(j, "La journaliste arrive.", lex, "fr").predicted, EntityGender::Female);
  EXPECT_EQ(extract_predicted_gender(j, "Un journaliste arrive.", lex, "fr").predicted, EntityGender::Male);
  EXPECT_EQ(extract_predicted_gender(j, "Les journaliste.", lex, "fr").predicted, EntityGender::Unknown);
}

TEST(Challenge, ArticleGender) {
  EXPECT_EQ(article_gender("la", "fr"), EntityGender::Female);
  EXPECT_EQ(article_gender("Le", "fr"), EntityGender::Male);
  EXPECT_EQ(article_gender("l'", "fr"), EntityGender::Unknown);
  EXPECT_EQ(article_gender("una", "es"), EntityGender::Female);
  EXPECT_EQ(article_gender("el", "es"), EntityGender::Male);
  EXPECT_EQ(article_gender("un'", "it"), EntityGender::Female);
  EXPECT_EQ(article_gender("lo", "it"), EntityGender::Male);
  EXPECT_EQ(article_gender("", "fr"), EntityGender::Unknown);
}

TEST(Challenge, AuditRows) {
  const auto items = fixture_items();
  const auto tsv = audit_tsv(items, fixture_predictions(items));
  const auto rows = tsv_rows(tsv);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0].cols[0], "item");
  EXPECT_EQ(rows[11].cols[5], "_");
  EXPECT_EQ(rows[11].cols.back(), "0");
}
