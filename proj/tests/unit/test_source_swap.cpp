#include <gtest/gtest.h>

#include "cfgen/conllu.hpp"
#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/lexicon.hpp"
#include "cfgen/source_swap.hpp"
#include "cfgen/text.hpp"

#include <set>
#include "support.hpp"

using namespace cfgen;

namespace {

std::vector<AnnotatedSentence> english_fixture_set() {
  std::vector<AnnotatedSentence> all;
  for (const char* rel : {"worked/en.conllu", "filter/en.conllu", "corpus/en.conllu", "her/en.conllu"}) {
    auto s = parse_conllu(io::read_file(test::fixture(rel)));
    all.insert(all.end(), s.begin(), s.end());
  }
  return all;
}

}  // namespace

TEST(SourceSwap, RuleTableCoversExactlyFivePronouns) {
  std::set<std::string> from;
  for (const auto& r : english_swap_rules()) {
    from.insert(r.from);
    if (r.to_possessive) EXPECT_NE(*r.to_possessive, "hers");
    if (r.to_nonpossessive) EXPECT_NE(*r.to_nonpossessive, "hers");
  }
  EXPECT_EQ(from, (std::set<std::string>{"he", "she", "him", "his", "her"}));
}

TEST(SourceSwap, HerDisambiguationMatchesManualAnnotation) {
  const auto sents = parse_conllu(io::read_file(test::fixture("her/en.conllu")));
  const auto rows = tsv_rows(io::read_file(test::fixture("her/expected.tsv")));
  ASSERT_EQ(rows.size(), 31u);
  ASSERT_EQ(sents.size(), 30u);
  int possessive = 0;
  for (std::size_t i = 0; i < sents.size(); ++i) {
    const auto& row = rows[i + 1];
    const int idx = std::stoi(std::string(row.cols[1]));
    ASSERT_EQ(text::to_lower(sents[i].at(idx).surface), "her");
    possessive += is_possessive(sents[i].at(idx));
    const auto out = swap_english_gender(sents[i], idx);
    EXPECT_EQ(out.raw, row.cols[2]) << sents[i].raw;
    EXPECT_EQ(out.at(idx).feats.gender(), Gender::Masc);
    EXPECT_EQ(out.at(idx).lemma, "he");
  }
  EXPECT_EQ(possessive, 15);
}

TEST(SourceSwap, HisAlwaysBecomesHer) {
  auto s = parse_conllu(
      "1\tHis\the\tPRON\t_\tGender=Masc|Number=Sing|Person=3|Poss=Yes|PronType=Prs\t2\tnmod:poss\t_\t_\n"
      "2\tbook\tbook\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
      "3\tfell\tfall\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
      "4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n")[0];
  auto out = swap_english_gender(s, 1);
  EXPECT_EQ(out.raw, "Her book fell.");
  EXPECT_EQ(out.at(1).feats.get("Poss"), "Yes");
  EXPECT_EQ(swap_english_gender(out, 1).raw, "His book fell.");
}

TEST(SourceSwap, OnlyThePronounChanges) {
  const auto sents = parse_conllu(io::read_file(test::fixture("worked/en.conllu")));
  const auto& s = sents[2];  // If the client does not like the photograph, he pays nothing.
  const auto out = swap_english_gender(s, 10);
  EXPECT_EQ(out.raw, "If the client does not like the photograph, she pays nothing.");
  for (int i = 1; i <= static_cast<int>(s.size()); ++i) {
    if (i == 10) continue;
    EXPECT_EQ(out.at(i), s.at(i));
  }
  EXPECT_EQ(out.comments, s.comments);
}

TEST(SourceSwap, InvolutionOverEnglishFixtures) {
  int swapped = 0;
  for (const auto& s : english_fixture_set()) {
    for (const auto& t : s.tokens) {
      if (!AnimacyLexicon::is_gendered_pronoun(t.surface)) continue;
      const auto once = swap_english_gender(s, t.index);
      EXPECT_NE(once.raw, s.raw);
      EXPECT_EQ(swap_english_gender(once, t.index), s) << s.raw;
      ++swapped;
    }
  }
  EXPECT_GT(swapped, 100);
}

TEST(SourceSwap, NonPronounIsAContractViolation) {
  const auto s = parse_conllu(io::read_file(test::fixture("worked/en.conllu")))[0];
  EXPECT_THROW(swap_english_gender(s, 3), ContractError);
  EXPECT_THROW(swap_english_gender(s, 0), ContractError);
  EXPECT_THROW(swap_english_gender(s, 99), ContractError);
}

TEST(SourceSwap, AlignTokens) {
  const auto s = parse_conllu(io::read_file(test::fixture("worked/en.conllu")))[1];
  auto offs = align_tokens(s);
  ASSERT_TRUE(offs);
  EXPECT_EQ((*offs)[0], 0u);
  EXPECT_EQ((*offs)[2], 6u);  // "n't" follows "did" without a space
  auto broken = s;
  broken.raw = "something else";
  EXPECT_FALSE(align_tokens(broken));
}
