#include "cfgen/cli.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "cfgen/assembly.hpp"
#include "cfgen/challenge_eval.hpp"
#include "cfgen/conllu.hpp"
#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/lexicon.hpp"
#include "cfgen/mrf/agreement_model.hpp"
#include "cfgen/parallel.hpp"
#include "cfgen/parallel_corpus.hpp"
#include "cfgen/random.hpp"
#include "cfgen/reinflect.hpp"
#include "cfgen/selection.hpp"
#include "cfgen/source_swap.hpp"
#include "json.hpp"

namespace cfgen::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::uint64_t stage_seed(std::uint64_t seed, std::string_view stage) {
  return splitmix64(seed ^ fnv1a(stage));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string dump(const json& j, int indent = -1) {
  return j.dump(indent, ' ', false, json::error_handler_t::replace);
}

// One JSON object per line on stderr.
class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {}
  void event(const json& j) { err_ << dump(j) << '\n'; }

 private:
  std::ostream& err_;
};

// Paths inside the output root are recorded relative to it so that two runs
// into different directories produce the same manifest.
class Manifest {
 public:
  Manifest(std::string subcommand, fs::path root) : root_(std::move(root)) {
    body_["tool"] = "cfgen";
    body_["version"] = kVersion;
    body_["subcommand"] = std::move(subcommand);
    body_["config"] = json::object();
    body_["counts"] = json::object();
    body_["outputs"] = json::object();
  }

  std::string display(const fs::path& p) const {
    if (!root_.empty()) {
      auto rel = p.lexically_normal().lexically_relative(root_.lexically_normal());
      if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
    }
    return p.generic_string();
  }

  json& config() { return body_["config"]; }
  json& counts() { return body_["counts"]; }

  void output(const fs::path& p) {
    const std::string content = io::read_file(p);
    body_["outputs"][display(p)] = {{"bytes", content.size()}, {"fnv1a64", hex64(fnv1a(content))}};
  }

  void write(const fs::path& path) const { io::write_file(path, dump(body_, 2) + "\n"); }

 private:
  fs::path root_;
  json body_;
};

struct Common {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string lang;
  bool repair_multiroot = true;
};

void add_common(CLI::App* sub, Common& c, bool needs_lang = true) {
  sub->add_option("--seed", c.seed, "Random seed for every sampling step")
      ->envname("CFGEN_SEED")
      ->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads; output does not depend on it")
      ->envname("CFGEN_JOBS")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  auto* lang = sub->add_option("--lang", c.lang, "Target language code (fr, es, it)")
                   ->envname("CFGEN_LANG");
  if (needs_lang) lang->required();
  sub->add_flag("--repair-multiroot,!--no-repair-multiroot", c.repair_multiroot,
                "Attach extra CoNLL-U roots to the first root (default on)");
}

void echo_common(json& cfg, const Common& c) {
  cfg["seed"] = c.seed;
  cfg["lang"] = c.lang;
  cfg["repair_multiroot"] = c.repair_multiroot;
}

struct Resources {
  std::string data_dir;
  std::string animacy;
  std::string inflections;
  std::string contractions;
  std::string rules;

  fs::path resolve(const std::string& given, const char* default_name) const {
    if (!given.empty()) return given;
    if (data_dir.empty()) {
      throw ConfigError(std::string("no path for ") + default_name + ": pass it or --data-dir");
    }
    return fs::path(data_dir) / default_name;
  }
  fs::path animacy_path() const { return resolve(animacy, "animacy.tsv"); }
  fs::path inflections_path() const { return resolve(inflections, "inflections.tsv"); }
  fs::path contractions_path() const { return resolve(contractions, "contractions.tsv"); }
  fs::path rules_path() const { return resolve(rules, "suffix_rules.tsv"); }
};

void add_resources(CLI::App* sub, Resources& r, bool full) {
  sub->add_option("--data-dir", r.data_dir, "Directory holding the default lexicon files")
      ->envname("CFGEN_DATA_DIR");
  sub->add_option("--animacy", r.animacy, "Profession lexicon TSV")->envname("CFGEN_ANIMACY");
  if (!full) return;
  sub->add_option("--inflections", r.inflections, "Inflection lexicon TSV")
      ->envname("CFGEN_INFLECTIONS");
  sub->add_option("--contractions", r.contractions, "Contraction table TSV")
      ->envname("CFGEN_CONTRACTIONS");
  sub->add_option("--rules", r.rules, "Suffix rule TSV")->envname("CFGEN_RULES");
}

void echo_resources(json& cfg, const Resources& r, const Manifest& m, bool full) {
  cfg["animacy"] = m.display(r.animacy_path());
  if (!full) return;
  cfg["inflections"] = m.display(r.inflections_path());
  cfg["contractions"] = m.display(r.contractions_path());
  cfg["rules"] = m.display(r.rules_path());
}

struct GenerationAssets {
  AnimacyLexicon animacy;
  InflectionLexicon inflections;
  std::vector<SuffixRule> rules;
  mrf::AgreementModel model;
};

struct ModelOptions {
  std::string mrf;
  std::string treebank;
  double smoothing = 0.1;
  double beta = 2.0;
};

void add_model_options(CLI::App* sub, ModelOptions& o) {
  auto* mrf = sub->add_option("--mrf", o.mrf, "Trained agreement model")->envname("CFGEN_MRF");
  auto* tb = sub->add_option("--treebank", o.treebank, "Train the agreement model from this CoNLL-U");
  mrf->excludes(tb);
  sub->add_option("--smoothing", o.smoothing, "Add-k constant when training from --treebank")
      ->envname("CFGEN_SMOOTHING")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--beta", o.beta, "Unary bonus for keeping a token's original tag")
      ->envname("CFGEN_BETA")
      ->capture_default_str();
}

GenerationAssets load_assets(const Resources& r, const ModelOptions& o, const Common& c,
                             Manifest& m) {
  GenerationAssets a;
  a.animacy = load_animacy_lexicon(r.animacy_path());
  load_inflections(r.inflections_path(), a.inflections);
  load_contractions(r.contractions_path(), a.inflections);
  a.rules = load_suffix_rules(r.rules_path());
  auto& cfg = m.config();
  if (!o.mrf.empty()) {
    a.model = mrf::parse_model(io::read_file(o.mrf));
    cfg["mrf"] = m.display(o.mrf);
  } else if (!o.treebank.empty()) {
    ConlluOptions opts{c.repair_multiroot, c.lang};
    a.model = mrf::train_agreement_model(parse_conllu(io::read_file(o.treebank), opts),
                                         o.smoothing, c.lang);
    cfg["treebank"] = m.display(o.treebank);
    cfg["smoothing"] = o.smoothing;
  } else {
    throw ConfigError("an agreement model is required: pass --mrf or --treebank");
  }
  if (a.model.lang != c.lang) {
    throw ConfigError("agreement model is for '" + a.model.lang + "', not '" + c.lang + "'");
  }
  cfg["beta"] = o.beta;
  return a;
}

std::vector<GenderedSelection> read_selections(const fs::path& src, const fs::path& tgt,
                                               const Common& c) {
  std::vector<GenderedSelection> out;
  for (auto& pair : read_annotated_parallel(src, tgt, c.lang, c.repair_multiroot)) {
    out.push_back(selection_from_comments(std::move(pair)));
  }
  return out;
}

std::string serialize_side(const std::vector<GenderedSelection>& sels, bool src) {
  std::vector<AnnotatedSentence> sents;
  sents.reserve(sels.size());
  for (const auto& s : sels) sents.push_back(src ? s.pair.src : s.pair.tgt);
  return serialize_conllu(sents);
}

// ---- stages ---------------------------------------------------------------

struct SelectOutcome {
  std::vector<GenderedSelection> kept;
  std::size_t read = 0;
  std::size_t accepted = 0;
  std::map<std::string, std::size_t> reason_counts;
};

SelectOutcome run_select_gendered(const fs::path& src, const fs::path& tgt, const Common& c,
                                  const AnimacyLexicon& lex, std::size_t cap,
                                  const fs::path& out_dir, Log& log, Manifest& m) {
  const auto pairs = read_annotated_parallel(src, tgt, c.lang, c.repair_multiroot);
  const auto verdicts = parallel_map(pairs, c.jobs, [&](const ParallelPair& p) {
    return filter_gendered(p, lex);
  });
  SelectOutcome out;
  out.read = pairs.size();
  std::vector<GenderedSelection> accepted;
  std::string rejections = "id\treasons\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& v = verdicts[i];
    if (v.selection) {
      accepted.push_back(*v.selection);
      continue;
    }
    rejections += pairs[i].id + '\t' + v.verdict.reasons_string() + '\n';
    for (auto r : v.verdict.reasons) ++out.reason_counts[std::string(to_string(r))];
    log.event({{"stage", "select"}, {"event", "reject"}, {"id", pairs[i].id},
               {"reasons", v.verdict.reasons_string()}});
  }
  out.accepted = accepted.size();
  out.kept = sample_per_profession(accepted, cap, stage_seed(c.seed, "select"));
  for (auto& s : out.kept) write_selection_comments(s);

  io::write_file(out_dir / "selected.src.conllu", serialize_side(out.kept, true));
  io::write_file(out_dir / "selected.tgt.conllu", serialize_side(out.kept, false));
  io::write_file(out_dir / "rejections.tsv", rejections);
  m.output(out_dir / "selected.src.conllu");
  m.output(out_dir / "selected.tgt.conllu");
  m.output(out_dir / "rejections.tsv");
  auto& counts = m.counts();
  counts["read"] = out.read;
  counts["accepted"] = out.accepted;
  counts["kept_after_cap"] = out.kept.size();
  counts["rejected"] = out.read - out.accepted;
  counts["reasons"] = out.reason_counts;
  return out;
}

std::size_t run_select_neutral(const std::string& tsv, const std::string& src_text,
                               const std::string& tgt_text, std::size_t sample, const Common& c,
                               const fs::path& out_dir, Log& log, Manifest& m) {
  std::optional<ParallelTextReader> reader;
  if (!tsv.empty()) {
    reader.emplace(tsv, c.lang);
  } else {
    reader.emplace(src_text, tgt_text, c.lang);
  }
  std::size_t read = 0;
  std::string rejections = "line\treasons\n";
  auto sink = [&](const ParallelPair& p, const FilterVerdict& v) {
    ++read;
    if (v.accepted) return;
    rejections += p.id + '\t' + v.reasons_string() + '\n';
    log.event({{"stage", "select"}, {"event", "reject"}, {"id", p.id},
               {"reasons", v.reasons_string()}});
  };
  const auto picked =
      random_sample(reader->source(), sample, stage_seed(c.seed, "random"), {}, sink);
  io::write_file(out_dir / "random.tsv", format_pairs_tsv(picked));
  io::write_file(out_dir / "rejections.tsv", rejections);
  m.output(out_dir / "random.tsv");
  m.output(out_dir / "rejections.tsv");
  m.counts()["read"] = read;
  m.counts()["sampled"] = picked.size();
  return picked.size();
}

std::size_t run_swap(const std::vector<GenderedSelection>& sels, const fs::path& out_file,
                     Log& log, Manifest& m) {
  std::vector<AnnotatedSentence> swapped;
  std::size_t changed = 0;
  for (const auto& s : sels) {
    if (s.pronoun_index == 0) {
      log.event({{"stage", "swap-src"}, {"event", "skip"}, {"id", s.pair.id},
                 {"reason", "no English pronoun recorded"}});
      swapped.push_back(s.pair.src);
      continue;
    }
    swapped.push_back(swap_english_gender(s.pair.src, s.pronoun_index));
    ++changed;
  }
  io::write_file(out_file, serialize_conllu(swapped));
  m.output(out_file);
  m.counts()["sentences"] = sels.size();
  m.counts()["swapped"] = changed;
  return changed;
}

struct CfOutcome {
  std::vector<ParallelPair> counterfactuals;
  BalancedDataset gb;
  std::vector<LintFlag> lint;
};

CfOutcome run_cf_gen(const std::vector<GenderedSelection>& sels, const GenerationAssets& a,
                     const Common& c, double beta, const fs::path& out_dir, Log& log,
                     Manifest& m) {
  CounterfactualConfig cfg;
  cfg.model = &a.model;
  cfg.animacy = &a.animacy;
  cfg.inflections = &a.inflections;
  cfg.rules = &a.rules;
  cfg.lang = c.lang;
  cfg.inference.original_tag_bonus = beta;

  const auto results = parallel_map(sels, c.jobs, [&](const GenderedSelection& s) {
    return generate_counterfactual(s, cfg);
  });

  CfOutcome out;
  std::vector<GenderedSelection> originals;
  std::string skipped = "id\treason\n";
  std::string report = "id\ttoken\tbefore\tafter\tsource\n";
  std::array<std::size_t, 3> sources{};
  std::size_t warnings = 0;
  for (std::size_t i = 0; i < sels.size(); ++i) {
    const auto& r = results[i];
    const auto& id = sels[i].pair.id;
    for (const auto& t : r.report.tokens) {
      report += id + '\t' + std::to_string(t.index) + '\t' + t.before + '\t' + t.after + '\t' +
                std::string(to_string(t.source)) + '\n';
      ++sources[static_cast<std::size_t>(t.source)];
    }
    for (const auto& w : r.report.warnings) {
      ++warnings;
      log.event({{"stage", "cf-gen"}, {"event", "warning"}, {"id", id}, {"detail", w}});
    }
    if (!r.pair) {
      skipped += id + '\t' + r.skip_reason + '\n';
      log.event({{"stage", "cf-gen"}, {"event", "skip"}, {"id", id}, {"reason", r.skip_reason}});
      continue;
    }
    originals.push_back(sels[i]);
    out.counterfactuals.push_back(*r.pair);
  }
  out.gb = build_balanced_dataset(originals, out.counterfactuals);
  std::string lint = "id\tkind\tdetail\n";
  auto record = [&](const LintFlag& f) {
    lint += f.pair_id + '\t' + std::string(to_string(f.kind)) + '\t' + f.detail + '\n';
    log.event({{"stage", "cf-gen"}, {"event", "flag"}, {"id", f.pair_id},
               {"kind", to_string(f.kind)}, {"detail", f.detail}});
  };
  for (const auto& f : out.gb.flags) record(f);
  for (const auto& p : out.gb.pairs) {
    if (p.origin != Origin::Counterfactual) continue;
    for (auto& f : lint_counterfactual_pair(p)) {
      record(f);
      out.lint.push_back(std::move(f));
    }
  }

  std::vector<AnnotatedSentence> cf_src;
  std::vector<AnnotatedSentence> cf_tgt;
  for (const auto& p : out.counterfactuals) {
    cf_src.push_back(p.src);
    cf_tgt.push_back(p.tgt);
  }
  const std::array<std::pair<const char*, std::string>, 7> files = {{
      {"counterfactual.src.conllu", serialize_conllu(cf_src)},
      {"counterfactual.tgt.conllu", serialize_conllu(cf_tgt)},
      {"counterfactuals.tsv", format_pairs_tsv(out.counterfactuals)},
      {"gb.tsv", format_pairs_tsv(out.gb.pairs)},
      {"lint.tsv", lint},
      {"skipped.tsv", skipped},
      {"reinflection.tsv", report},
  }};
  for (const auto& [name, content] : files) {
    io::write_file(out_dir / name, content);
    m.output(out_dir / name);
  }
  auto& counts = m.counts();
  counts["selections"] = sels.size();
  counts["counterfactuals"] = out.counterfactuals.size();
  counts["skipped"] = sels.size() - out.counterfactuals.size();
  counts["identical_dropped"] = out.gb.flags.size();
  counts["gb_pairs"] = out.gb.pairs.size();
  counts["pronoun_hazards"] = out.lint.size();
  counts["forms"] = {{"Lexicon", sources[0]}, {"SuffixRule", sources[1]}, {"Unchanged", sources[2]}};
  counts["warnings"] = warnings;
  return out;
}

MixSummary run_assemble(const DatasetRecipe& recipe, const fs::path& out_dir, Log& log,
                        Manifest& m) {
  std::vector<LintFlag> flags;
  MixSummary summary;
  mix_pairs(recipe, summary, &flags);
  for (const auto& f : flags) {
    log.event({{"stage", "assemble"}, {"event", "flag"}, {"id", f.pair_id},
               {"kind", to_string(f.kind)}, {"excluded", recipe.strict_lint}});
  }
  summary = mix_corpora(recipe, out_dir);
  for (const char* name : {"train.src", "train.tgt", "train.tsv", "manifest.json"}) {
    m.output(out_dir / name);
  }
  auto& counts = m.counts();
  for (const auto& [name, n] : summary.component_counts) counts["components"][name] = n;
  counts["total"] = summary.total;
  counts["pronoun_hazards"] = summary.hazard_flags;
  counts["excluded"] = summary.excluded;
  return summary;
}

// ---- subcommand wiring ------------------------------------------------------

struct SelectArgs {
  Common common;
  Resources res;
  std::string mode = "gendered";
  std::string src;
  std::string tgt;
  std::string tsv;
  std::size_t cap = 10;
  std::size_t sample = 500;
  std::string out;
};

struct SwapArgs {
  Common common;
  std::string src;
  std::string tgt;
  std::string out;
};

struct TrainArgs {
  Common common;
  std::string treebank;
  double smoothing = 0.1;
  std::string out;
};

struct CfArgs {
  Common common;
  Resources res;
  ModelOptions model;
  std::string src;
  std::string tgt;
  std::string out;
};

struct AssembleArgs {
  std::string recipe;
  bool strict_lint = false;
  std::string out;
};

struct EvalArgs {
  Common common;
  Resources res;
  std::string challenge;
  std::string stereotypes;
  std::string translations;
  std::string out;
};

struct PipelineArgs {
  Common common;
  Resources res;
  ModelOptions model;
  std::string src;
  std::string tgt;
  std::string neutral_tsv;
  std::string handcrafted;
  std::size_t cap = 10;
  std::size_t sample = 500;
  bool strict_lint = false;
  std::string out;
};

void do_select(const SelectArgs& a, Log& log) {
  const fs::path out_dir = a.out;
  Manifest m("select", out_dir);
  auto& cfg = m.config();
  cfg["mode"] = a.mode;
  echo_common(cfg, a.common);
  if (a.mode == "gendered") {
    if (a.src.empty() || a.tgt.empty()) {
      throw ConfigError("gendered selection needs --src and --tgt CoNLL-U files");
    }
    cfg["src"] = m.display(a.src);
    cfg["tgt"] = m.display(a.tgt);
    cfg["cap"] = a.cap;
    echo_resources(cfg, a.res, m, false);
    const auto lex = load_animacy_lexicon(a.res.animacy_path());
    run_select_gendered(a.src, a.tgt, a.common, lex, a.cap, out_dir, log, m);
  } else {
    if (a.tsv.empty() && (a.src.empty() || a.tgt.empty())) {
      throw ConfigError("neutral selection needs --tsv or both --src and --tgt text files");
    }
    if (!a.tsv.empty()) {
      cfg["tsv"] = m.display(a.tsv);
    } else {
      cfg["src"] = m.display(a.src);
      cfg["tgt"] = m.display(a.tgt);
    }
    cfg["sample"] = a.sample;
    run_select_neutral(a.tsv, a.src, a.tgt, a.sample, a.common, out_dir, log, m);
  }
  m.write(out_dir / "manifest.json");
}

void do_swap(const SwapArgs& a, Log& log) {
  const fs::path out_dir = a.out;
  Manifest m("swap-src", out_dir);
  echo_common(m.config(), a.common);
  m.config()["src"] = m.display(a.src);
  m.config()["tgt"] = m.display(a.tgt);
  const auto sels = read_selections(a.src, a.tgt, a.common);
  run_swap(sels, out_dir / "swapped.src.conllu", log, m);
  m.write(out_dir / "manifest.json");
}

void do_train(const TrainArgs& a) {
  const fs::path out = a.out;
  Manifest m("train-mrf", out.parent_path());
  echo_common(m.config(), a.common);
  m.config()["treebank"] = m.display(a.treebank);
  m.config()["smoothing"] = a.smoothing;
  ConlluOptions opts{a.common.repair_multiroot, a.common.lang};
  const auto treebank = parse_conllu(io::read_file(a.treebank), opts);
  const auto model = mrf::train_agreement_model(treebank, a.smoothing, a.common.lang);
  io::write_file(out, mrf::serialize_model(model));
  m.output(out);
  m.counts()["sentences"] = treebank.size();
  m.counts()["tags"] = model.tags.size();
  m.counts()["unary_keys"] = model.unary.size();
  m.counts()["pairwise_keys"] = model.pairwise.size();
  m.write(fs::path(out.string() + ".manifest.json"));
}

void do_cf_gen(const CfArgs& a, Log& log) {
  const fs::path out_dir = a.out;
  Manifest m("cf-gen", out_dir);
  auto& cfg = m.config();
  echo_common(cfg, a.common);
  cfg["src"] = m.display(a.src);
  cfg["tgt"] = m.display(a.tgt);
  echo_resources(cfg, a.res, m, true);
  const auto assets = load_assets(a.res, a.model, a.common, m);
  const auto sels = read_selections(a.src, a.tgt, a.common);
  run_cf_gen(sels, assets, a.common, a.model.beta, out_dir, log, m);
  m.write(out_dir / "manifest.json");
}

void do_assemble(const AssembleArgs& a, Log& log) {
  const fs::path out_dir = a.out;
  auto recipe = load_recipe(a.recipe);
  recipe.strict_lint = recipe.strict_lint || a.strict_lint;
  Manifest m("assemble", out_dir);
  m.config()["recipe"] = m.display(a.recipe);
  m.config()["strict_lint"] = recipe.strict_lint;
  run_assemble(recipe, out_dir, log, m);
  // mix_corpora already wrote manifest.json with the mix details; the run
  // manifest sits next to it.
  m.write(out_dir / "run.manifest.json");
}

void do_evaluate(const EvalArgs& a, Log& log) {
  const fs::path out_dir = a.out;
  Manifest m("evaluate", out_dir);
  auto& cfg = m.config();
  cfg["lang"] = a.common.lang;
  cfg["challenge"] = m.display(a.challenge);
  if (!a.stereotypes.empty()) cfg["stereotypes"] = m.display(a.stereotypes);
  cfg["translations"] = m.display(a.translations);
  echo_resources(cfg, a.res, m, false);

  const auto lex = load_animacy_lexicon(a.res.animacy_path());
  std::optional<fs::path> sidecar;
  if (!a.stereotypes.empty()) sidecar = a.stereotypes;
  const auto items = load_challenge_set(a.challenge, sidecar);
  auto translations = io::read_lines(a.translations);
  if (translations.size() != items.size()) {
    throw InputError("translations file has " + std::to_string(translations.size()) +
                     " lines for " + std::to_string(items.size()) + " challenge items");
  }
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto predictions = parallel_map(order, a.common.jobs, [&](std::size_t i) {
    return extract_predicted_gender(items[i], translations[i], lex, a.common.lang);
  });
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (predictions[i].predicted == EntityGender::Unknown) {
      log.event({{"stage", "evaluate"}, {"event", "unknown"}, {"item", i + 1},
                 {"entity", items[i].entity_word}});
    }
  }
  const auto report = compute_metrics(items, predictions);
  io::write_file(out_dir / "metrics.json", dump(metrics_to_json(report), 2) + "\n");
  io::write_file(out_dir / "audit.tsv", audit_tsv(items, predictions));
  m.output(out_dir / "metrics.json");
  m.output(out_dir / "audit.tsv");
  m.counts()["items"] = items.size();
  m.write(out_dir / "manifest.json");
}

void do_pipeline(const PipelineArgs& a, Log& log) {
  const fs::path root = a.out;
  Manifest top("pipeline", root);
  auto& cfg = top.config();
  echo_common(cfg, a.common);
  cfg["src"] = top.display(a.src);
  cfg["tgt"] = top.display(a.tgt);
  cfg["cap"] = a.cap;
  if (!a.neutral_tsv.empty()) {
    cfg["neutral_tsv"] = top.display(a.neutral_tsv);
    cfg["sample"] = a.sample;
  }
  if (!a.handcrafted.empty()) cfg["handcrafted"] = top.display(a.handcrafted);
  cfg["strict_lint"] = a.strict_lint;
  echo_resources(cfg, a.res, top, true);
  const auto assets = load_assets(a.res, a.model, a.common, top);

  Manifest sel_m("select", root);
  const auto selected = run_select_gendered(a.src, a.tgt, a.common, assets.animacy, a.cap,
                                            root / "select", log, sel_m);
  Manifest swap_m("swap-src", root);
  run_swap(selected.kept, root / "swap-src" / "swapped.src.conllu", log, swap_m);
  Manifest cf_m("cf-gen", root);
  run_cf_gen(selected.kept, assets, a.common, a.model.beta, root / "cf-gen", log, cf_m);

  DatasetRecipe recipe;
  recipe.lang = a.common.lang;
  recipe.shuffle_seed = stage_seed(a.common.seed, "assemble");
  recipe.strict_lint = a.strict_lint;
  recipe.components.push_back({"GB", root / "cf-gen" / "gb.tsv"});
  std::string recipe_text = "lang = " + recipe.lang + "\nseed = " +
                            std::to_string(recipe.shuffle_seed) + "\nstrict_lint = " +
                            (recipe.strict_lint ? "true" : "false") + "\nGB = ../cf-gen/gb.tsv\n";
  if (!a.neutral_tsv.empty()) {
    Manifest rnd_m("select", root);
    run_select_neutral(a.neutral_tsv, {}, {}, a.sample, a.common, root / "random", log, rnd_m);
    recipe.components.push_back({"Random", root / "random" / "random.tsv"});
    recipe_text += "Random = ../random/random.tsv\n";
    for (const auto& [k, v] : rnd_m.counts().items()) top.counts()["random"][k] = v;
  }
  if (!a.handcrafted.empty()) {
    const auto sb = load_handcrafted(a.handcrafted, a.common.lang);
    // Copied into the tree so the recipe never points outside it.
    const fs::path copy = root / "handcrafted" / "sb.tsv";
    io::write_file(copy, io::read_file(a.handcrafted));
    recipe.components.push_back({"SB", copy});
    recipe_text += "SB = ../handcrafted/sb.tsv\n";
    top.counts()["handcrafted"] = sb.size();
  }
  io::write_file(root / "assemble" / "recipe.txt", recipe_text);
  Manifest asm_m("assemble", root);
  run_assemble(recipe, root / "assemble", log, asm_m);

  top.counts()["select"] = sel_m.counts();
  top.counts()["swap-src"] = swap_m.counts();
  top.counts()["cf-gen"] = cf_m.counts();
  top.counts()["assemble"] = asm_m.counts();
  for (const char* f : {"select/selected.src.conllu", "select/selected.tgt.conllu",
                        "select/rejections.tsv", "swap-src/swapped.src.conllu",
                        "cf-gen/counterfactual.src.conllu", "cf-gen/counterfactual.tgt.conllu",
                        "cf-gen/gb.tsv", "cf-gen/lint.tsv", "cf-gen/skipped.tsv",
                        "cf-gen/reinflection.tsv", "assemble/train.src", "assemble/train.tgt",
                        "assemble/train.tsv", "assemble/manifest.json"}) {
    top.output(root / f);
  }
  if (!a.neutral_tsv.empty()) top.output(root / "random" / "random.tsv");
  if (!a.handcrafted.empty()) top.output(root / "handcrafted" / "sb.tsv");
  top.write(root / "manifest.json");
}

int execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cfgen: gender-balanced corpus generation and gender-accuracy evaluation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SelectArgs sel;
  auto* s = app.add_subcommand("select", "Filter a parallel corpus (gendered or neutral sample)");
  add_common(s, sel.common);
  add_resources(s, sel.res, false);
  s->add_option("--mode", sel.mode, "gendered or neutral")
      ->check(CLI::IsMember({"gendered", "neutral"}))
      ->capture_default_str();
  s->add_option("--src", sel.src, "English side (CoNLL-U when gendered, text when neutral)");
  s->add_option("--tgt", sel.tgt, "Target side, aligned with --src");
  s->add_option("--tsv", sel.tsv, "Neutral mode: two-column parallel TSV");
  s->add_option("--cap", sel.cap, "Max originals per profession")
      ->envname("CFGEN_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--sample", sel.sample, "Neutral mode: reservoir size")
      ->envname("CFGEN_SAMPLE")
      ->capture_default_str();
  s->add_option("--out", sel.out, "Output directory")->required();

  SwapArgs sw;
  auto* w = app.add_subcommand("swap-src", "Swap the gendered English pronoun of selected pairs");
  add_common(w, sw.common);
  w->add_option("--src", sw.src, "selected.src.conllu")->required();
  w->add_option("--tgt", sw.tgt, "selected.tgt.conllu")->required();
  w->add_option("--out", sw.out, "Output directory")->required();

  TrainArgs tr;
  auto* t = app.add_subcommand("train-mrf", "Train the agreement MRF from a treebank");
  add_common(t, tr.common);
  t->add_option("--treebank", tr.treebank, "CoNLL-U treebank")->required();
  t->add_option("--smoothing", tr.smoothing, "Add-k constant")
      ->envname("CFGEN_SMOOTHING")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  t->add_option("--out", tr.out, "Model file")->required();

  CfArgs cf;
  auto* c = app.add_subcommand("cf-gen", "Generate counterfactual pairs for selected pairs");
  add_common(c, cf.common);
  add_resources(c, cf.res, true);
  add_model_options(c, cf.model);
  c->add_option("--src", cf.src, "selected.src.conllu")->required();
  c->add_option("--tgt", cf.tgt, "selected.tgt.conllu")->required();
  c->add_option("--out", cf.out, "Output directory")->required();

  AssembleArgs as;
  auto* a = app.add_subcommand("assemble", "Mix component corpora into a fine-tuning set");
  a->add_option("--recipe", as.recipe, "Recipe file (key = value lines)")->required();
  a->add_flag("--strict-lint", as.strict_lint, "Drop pairs flagged by the pronoun lint");
  a->add_option("--out", as.out, "Output directory")->required();

  EvalArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score translations of a gender challenge set");
  add_common(e, ev.common);
  add_resources(e, ev.res, false);
  e->add_option("--challenge", ev.challenge, "Challenge set TSV")->required();
  e->add_option("--stereotypes", ev.stereotypes, "One pro/anti/neither label per item");
  e->add_option("--translations", ev.translations, "One translation per line")->required();
  e->add_option("--out", ev.out, "Output directory")->required();

  PipelineArgs pl;
  auto* p = app.add_subcommand("pipeline", "select, swap-src, cf-gen and assemble in one run");
  add_common(p, pl.common);
  add_resources(p, pl.res, true);
  add_model_options(p, pl.model);
  p->add_option("--src", pl.src, "English CoNLL-U")->required();
  p->add_option("--tgt", pl.tgt, "Target CoNLL-U")->required();
  p->add_option("--neutral-tsv", pl.neutral_tsv, "Corpus for the neutral random sample");
  p->add_option("--handcrafted", pl.handcrafted, "Handcrafted TSV (en, tgt)");
  p->add_option("--cap", pl.cap, "Max originals per profession")
      ->envname("CFGEN_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  p->add_option("--sample", pl.sample, "Neutral reservoir size")
      ->envname("CFGEN_SAMPLE")
      ->capture_default_str();
  p->add_flag("--strict-lint", pl.strict_lint, "Drop pairs flagged by the pronoun lint");
  p->add_option("--out", pl.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 1;
  }

  Log log(err);
  if (*s) do_select(sel, log);
  if (*w) do_swap(sw, log);
  if (*t) do_train(tr);
  if (*c) do_cf_gen(cf, log);
  if (*a) do_assemble(as, log);
  if (*e) do_evaluate(ev, log);
  if (*p) do_pipeline(pl, log);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return execute(argc, argv, out, err);
  } catch (const InputError& ex) {
    err << dump({{"event", "error"}, {"kind", "input"}, {"message", ex.what()}}) << '\n';
    return 1;
  } catch (const std::exception& ex) {
    err << dump({{"event", "error"}, {"kind", "internal"}, {"message", ex.what()}}) << '\n';
    return 2;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cfgen::cli
