#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cfgen/cli.hpp"
#include "cfgen/io.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace cfgen;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cfgen");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return test::fixture(rel).string(); }

std::vector<std::string> pipeline_args(const std::filesystem::path& out, const std::string& jobs) {
  return {"pipeline", "--lang", "fr", "--seed", "17", "--jobs", jobs,
          "--data-dir", test::data_dir().string(),
          "--treebank", fx("fr_treebank.conllu"),
          "--src", fx("corpus/en.conllu"), "--tgt", fx("corpus/fr.conllu"),
          "--neutral-tsv", fx("corpus/neutral.tsv"), "--sample", "20",
          "--handcrafted", fx("corpus/handcrafted.fr.tsv"), "--out", out.string()};
}

}  // namespace

TEST(Cli, HelpAndVersionExitZero) {
  auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pipeline"), std::string::npos);
  EXPECT_EQ(invoke({"--version"}).code, 0);
  EXPECT_EQ(invoke({"select", "--help"}).code, 0);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"swap-src", "--lang", "fr"}).code, 1);  // missing required options
  EXPECT_EQ(invoke({"select", "--lang", "fr", "--jobs", "0", "--out", "x"}).code, 1);
}

TEST(Cli, InputErrorsExitOneWithJsonLog) {
  const auto dir = test::scratch_dir("cli_input");
  auto r = invoke({"swap-src", "--lang", "fr", "--src", (dir / "missing.conllu").string(), "--tgt",
                (dir / "missing2.conllu").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  ASSERT_FALSE(r.err.empty());
  const auto last = r.err.substr(r.err.rfind('{', r.err.size() - 2));
  const auto j = nlohmann::json::parse(last);
  EXPECT_EQ(j["event"], "error");
  EXPECT_EQ(j["kind"], "input");

  // No model given to cf-gen.
  r = invoke({"cf-gen", "--lang", "fr", "--data-dir", test::data_dir().string(), "--src",
           fx("worked/en.conllu"), "--tgt", fx("worked/fr.conllu"), "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, CfGenOnWorkedSentences) {
  const auto dir = test::scratch_dir("cli_cfgen");
  auto r = invoke({"cf-gen", "--lang", "fr", "--data-dir", test::data_dir().string(), "--treebank",
                fx("fr_treebank.conllu"), "--src", fx("worked/en.conllu"), "--tgt",
                fx("worked/fr.conllu"), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto gb = io::read_lines(dir / "gb.tsv");
  ASSERT_EQ(gb.size(), 6u);
  EXPECT_EQ(gb[1], "The German soldier is very happy.\tLa soldate allemande est très contente.");
  const auto lint = io::read_file(dir / "lint.tsv");
  EXPECT_NE(lint.find("journaliste\tPronounMappingHazard"), std::string::npos);
  EXPECT_NE(lint.find("client\tPronounMappingHazard"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
  // Each log line on stderr is a JSON object.
  std::istringstream lines(r.err);
  std::string line;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(nlohmann::json::accept(line)) << line;
  }
}

TEST(Cli, TrainMrfThenUseModelFile) {
  const auto dir = test::scratch_dir("cli_train");
  auto r = invoke({"train-mrf", "--lang", "fr", "--treebank", fx("fr_treebank.conllu"), "--out",
                (dir / "fr.mrf").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  r = invoke({"cf-gen", "--lang", "fr", "--data-dir", test::data_dir().string(), "--mrf",
           (dir / "fr.mrf").string(), "--src", fx("worked/en.conllu"), "--tgt", fx("worked/fr.conllu"),
           "--out", (dir / "cf").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::read_lines(dir / "cf" / "gb.tsv")[3],
            "She didn't wait around for the reporter to come calling.\tIl n'a pas attendu que la "
            "journaliste l'appelle.");
  // A model trained for another language is refused.
  r = invoke({"cf-gen", "--lang", "es", "--data-dir", test::data_dir().string(), "--mrf",
           (dir / "fr.mrf").string(), "--src", fx("worked/en.conllu"), "--tgt", fx("worked/fr.conllu"),
           "--out", (dir / "cf2").string()});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, SelectGenderedWritesRejections) {
  const auto dir = test::scratch_dir("cli_select");
  auto r = invoke({"select", "--lang", "fr", "--data-dir", test::data_dir().string(), "--src",
                fx("filter/en.conllu"), "--tgt", fx("filter/fr.conllu"), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rej = tsv_rows(io::read_file(dir / "rejections.tsv"));
  EXPECT_EQ(rej.size(), 1u + 16u);
  const auto sel = io::read_file(dir / "selected.src.conllu");
  EXPECT_NE(sel.find("# cfgen_lemma = logistician"), std::string::npos);
}

TEST(Cli, SelectNeutralSample) {
  const auto dir = test::scratch_dir("cli_neutral");
  auto r = invoke({"select", "--mode", "neutral", "--lang", "fr", "--tsv", fx("corpus/neutral.tsv"),
                "--sample", "5", "--seed", "3", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::read_lines(dir / "random.tsv").size(), 5u);
  const auto rej = io::read_file(dir / "rejections.tsv");
  EXPECT_NE(rej.find("Wellformedness"), std::string::npos);
  EXPECT_NE(rej.find("LengthRatio"), std::string::npos);
}

TEST(Cli, EnvironmentAndFlagPrecedence) {
  const auto a = test::scratch_dir("cli_env_a");
  const auto b = test::scratch_dir("cli_env_b");
  const auto c = test::scratch_dir("cli_env_c");
  auto base = [&](const std::filesystem::path& out) {
    return std::vector<std::string>{"select", "--mode", "neutral", "--lang", "fr", "--tsv",
                                    fx("corpus/neutral.tsv"), "--sample", "5", "--out", out.string()};
  };
  ::setenv("CFGEN_SEED", "3", 1);
  ASSERT_EQ(invoke(base(a)).code, 0);
  ::setenv("CFGEN_SEED", "4", 1);
  auto args = base(b);
  args.insert(args.end(), {"--seed", "3"});
  ASSERT_EQ(invoke(args).code, 0);  // flag beats env
  ASSERT_EQ(invoke(base(c)).code, 0);
  ::unsetenv("CFGEN_SEED");
  EXPECT_EQ(io::read_file(a / "random.tsv"), io::read_file(b / "random.tsv"));
  EXPECT_NE(io::read_file(a / "random.tsv"), io::read_file(c / "random.tsv"));
}

TEST(Cli, EvaluateWritesMetrics) {
  const auto dir = test::scratch_dir("cli_eval");
  auto r = invoke({"evaluate", "--lang", "fr", "--data-dir", test::data_dir().string(), "--challenge",
                fx("winomt/fr.tsv"), "--stereotypes", fx("winomt/stereotypes.txt"), "--translations",
                fx("winomt/translations.fr.txt"), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(io::read_file(dir / "metrics.json"));
  EXPECT_EQ(j["acc"].get<double>(), 58.3);
  EXPECT_EQ(j["delta_s"].get<double>(), 25.0);
  EXPECT_EQ(io::read_lines(dir / "audit.tsv").size(), 13u);
  // Translation count must match.
  io::write_file(dir / "short.txt", "Le développeur.\n");
  r = invoke({"evaluate", "--lang", "fr", "--data-dir", test::data_dir().string(), "--challenge",
           fx("winomt/fr.tsv"), "--translations", (dir / "short.txt").string(), "--out",
           (dir / "x").string()});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, PipelineIsDeterministicAcrossJobCounts) {
  const auto one = test::scratch_dir("cli_pipe_1");
  const auto many = test::scratch_dir("cli_pipe_8");
  auto r1 = invoke(pipeline_args(one, "1"));
  ASSERT_EQ(r1.code, 0) << r1.err;
  auto r8 = invoke(pipeline_args(many, "8"));
  ASSERT_EQ(r8.code, 0) << r8.err;
  std::size_t files = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(one)) {
    if (!e.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(e.path(), one);
    ASSERT_TRUE(std::filesystem::exists(many / rel)) << rel;
    EXPECT_EQ(io::read_file(e.path()), io::read_file(many / rel)) << rel;
    ++files;
  }
  EXPECT_GE(files, 15u);
  const auto m = nlohmann::json::parse(io::read_file(one / "manifest.json"));
  EXPECT_TRUE(m.contains("outputs"));
}
