#include <gtest/gtest.h>

#include <random>

#include "cfgen/conllu.hpp"
#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/random.hpp"
#include "support.hpp"

using namespace cfgen;

namespace {

// Mixed UD features: a fused token, an empty node, extra MISC, sent_id after
// the text line, unsorted FEATS input.
const char* kUdSample =
    "# sent_id = fr-ud-1\n"
    "# text = Il parle du chat.\n"
    "# translit = none\n"
    "1\tIl\til\tPRON\t_\tPerson=3|Number=Sing|Gender=Masc\t2\tnsubj\t_\t_\n"
    "2\tparle\tparler\tVERB\t_\t_\t0\troot\t0:root\tGloss=speaks\n"
    "3-4\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "3\tde\tde\tADP\t_\t_\t5\tcase\t_\t_\n"
    "4\tle\tle\tDET\t_\tDefinite=Def|Gender=Masc|Number=Sing|PronType=Art\t5\tdet\t_\t_\n"
    "4.1\tvu\tvoir\tVERB\t_\t_\t_\t_\t2:conj\t_\n"
    "5\tchat\tchat\tNOUN\t_\tGender=Masc|Number=Sing\t2\tobl\t_\tSpaceAfter=No\n"
    "6\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
    "\n";

std::string make_tree_block(Rng& rng, int n) {
  std::string out = "# sent_id = gen\n# text =";
  for (int i = 1; i <= n; ++i) out += " w" + std::to_string(i);
  out += "\n";
  std::vector<int> heads(static_cast<std::size_t>(n) + 1, 0);
  // Random recursive tree on a random permutation; one root.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  for (std::size_t k = 1; k < order.size(); ++k) {
    heads[static_cast<std::size_t>(order[k])] = order[uniform_below(rng, k)];
  }
  for (int i = 1; i <= n; ++i) {
    out += std::to_string(i) + "\tw" + std::to_string(i) + "\tw\tNOUN\t_\t_\t" +
           std::to_string(heads[static_cast<std::size_t>(i)]) + "\t" +
           (heads[static_cast<std::size_t>(i)] == 0 ? "root" : "dep") + "\t_\t_\n";
  }
  return out + "\n";
}

}  // namespace

TEST(Conllu, UdSampleRoundTripsAndNormalizesFeats) {
  auto sents = parse_conllu(kUdSample, {.repair_multiroot = true, .lang = "fr"});
  ASSERT_EQ(sents.size(), 1u);
  const auto& s = sents[0];
  EXPECT_EQ(s.raw, "Il parle du chat.");
  EXPECT_EQ(s.lang, "fr");
  ASSERT_EQ(s.multiword.size(), 1u);
  EXPECT_EQ(s.multiword[0].surface, "du");
  ASSERT_EQ(s.empty_nodes.size(), 1u);
  EXPECT_EQ(s.empty_nodes[0].after, 4);
  EXPECT_EQ(s.at(1).feats.to_string(), "Gender=Masc|Number=Sing|Person=3");
  EXPECT_EQ(s.at(2).deps, "0:root");
  EXPECT_EQ(s.at(2).misc, std::vector<std::string>{"Gloss=speaks"});
  EXPECT_EQ(surface_from_tokens(s), "Il parle du chat.");

  std::string expected = kUdSample;
  expected.replace(expected.find("Person=3|Number=Sing|Gender=Masc"), 32,
                   "Gender=Masc|Number=Sing|Person=3");
  const auto once = serialize_conllu(sents);
  EXPECT_EQ(once, expected);
  EXPECT_EQ(serialize_conllu(parse_conllu(once)), once);
  EXPECT_EQ(fnv1a(once), fnv1a(expected));
}

TEST(Conllu, FixtureFilesRoundTripByteForByte) {
  for (const char* rel : {"fr_treebank.conllu", "worked/en.conllu", "worked/fr.conllu",
                          "filter/en.conllu", "filter/fr.conllu", "corpus/en.conllu",
                          "corpus/fr.conllu", "her/en.conllu"}) {
    const auto text = io::read_file(test::fixture(rel));
    const auto sents = parse_conllu(text);
    EXPECT_FALSE(sents.empty()) << rel;
    EXPECT_EQ(serialize_conllu(sents), text) << rel;
    for (const auto& s : sents) {
      EXPECT_TRUE(is_valid_tree(s)) << rel;
      EXPECT_EQ(surface_from_tokens(s), s.raw) << rel;
    }
  }
}

TEST(Conllu, MissingTextCommentIsRebuilt) {
  auto s = parse_conllu("1\tLe\tle\tDET\t_\t_\t2\tdet\t_\t_\n2\tchat\tchat\tNOUN\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
                        "3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].raw, "Le chat.");
  EXPECT_EQ(serialize_sentence(s[0]).substr(0, 17), "# text = Le chat.");
}

TEST(Conllu, CrlfAccepted) {
  auto s = parse_conllu("1\ta\ta\tX\t_\t_\t0\troot\t_\t_\r\n\r\n");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].at(1).surface, "a");
}

TEST(Conllu, MalformedLinesReportLineNumbers) {
  try {
    parse_conllu("# c\n1\ta\ta\tX\t_\t_\t0\troot\t_\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_conllu("1\ta\ta\tX\t_\tGender\t0\troot\t_\t_\n"), FormatError);
  EXPECT_THROW(parse_conllu("1\ta\ta\tX\t_\t_\tx\troot\t_\t_\n"), FormatError);
  EXPECT_THROW(parse_conllu("2\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"), FormatError);
  EXPECT_THROW(parse_conllu("# only a comment\n"), FormatError);
}

TEST(Conllu, MultiRootRepairOrReject) {
  const char* two_roots =
      "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"
      "2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n";
  EXPECT_THROW(parse_conllu(two_roots, {.repair_multiroot = false}), StructureError);
  auto s = parse_conllu(two_roots);
  EXPECT_EQ(s[0].at(2).head, 1);
  EXPECT_EQ(s[0].at(2).deprel, "parataxis");
  EXPECT_TRUE(is_valid_tree(s[0]));
}

TEST(ConlluProperty, RandomTreesAcceptedCorruptionsRejected) {
  Rng rng(20240501);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 12));
    const auto block = make_tree_block(rng, n);
    auto sents = parse_conllu(block, {.repair_multiroot = false});
    ASSERT_EQ(sents.size(), 1u);
    ASSERT_TRUE(is_valid_tree(sents[0]));
    EXPECT_EQ(serialize_conllu(sents), block);

    // Corruptions on the parsed tree.
    AnnotatedSentence bad = sents[0];
    const int victim = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    switch (uniform_below(rng, 4)) {
      case 0:  // self loop
        bad.at(victim).head = victim;
        break;
      case 1:  // out of range
        bad.at(victim).head = n + 1 + static_cast<int>(uniform_below(rng, 3));
        break;
      case 2: {  // root hangs below another token: every token is in its subtree
        const int r = bad.root();
        bad.at(r).head = n == 1 ? 1 : (r == 1 ? 2 : 1);
        break;
      }
      default:  // second root, repair disabled
        if (n == 1) {
          bad.at(1).head = 2;
        } else {
          bad.at(bad.root() == 1 ? 2 : 1).head = 0;
        }
        break;
    }
    EXPECT_FALSE(is_valid_tree(bad)) << "iteration " << iter;
    EXPECT_THROW(parse_conllu(serialize_sentence(bad), {.repair_multiroot = false}), InputError);
  }
}
