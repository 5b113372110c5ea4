#include "cfgen/reinflect.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "cfgen/error.hpp"
#include "cfgen/io.hpp"
#include "cfgen/source_swap.hpp"
#include "cfgen/text.hpp"

namespace cfgen {
namespace {

std::string suffix_field(std::string_view s) { return s == "_" ? std::string() : std::string(s); }

bool vowel_initial(std::string_view word, std::string_view lang) {
  if (!text::starts_with_vowel_or_h(word)) return false;
  // Italian does not elide before h.
  if (lang == "it" && !word.empty() && (word[0] == 'h' || word[0] == 'H')) return false;
  return true;
}

bool is_vowel_ascii(char c) {
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Italian onsets that take lo/uno instead of il/un.
bool italian_lo_onset(std::string_view word) {
  const std::string w = text::to_lower(word);
  if (w.empty()) return false;
  if (w[0] == 'z' || w[0] == 'x' || w[0] == 'y') return true;
  if (text::starts_with(w, "gn") || text::starts_with(w, "ps") || text::starts_with(w, "pn")) {
    return true;
  }
  return w.size() > 1 && w[0] == 's' && std::isalpha(static_cast<unsigned char>(w[1])) &&
         !is_vowel_ascii(w[1]);
}

bool is_elided_article(std::string_view lower) { return lower == "l'" || lower == "l’"; }

// A surface unit for detokenization: a syntactic word, an untouched
// multiword range, or a contraction of two units.
struct Unit {
  Token tok;
  int first = 0;
  int last = 0;
};

bool contract_once(std::vector<Unit>& units, const InflectionLexicon& lex, std::string_view lang) {
  for (std::size_t i = 0; i + 1 < units.size(); ++i) {
    auto contracted = lex.contraction(lang, units[i].tok.surface, units[i + 1].tok.surface);
    if (!contracted) continue;
    Unit merged = units[i];
    merged.tok.surface = text::match_case(units[i].tok.surface, *contracted);
    merged.tok.space_after = units[i + 1].tok.space_after;
    merged.last = units[i + 1].last;
    units[i] = std::move(merged);
    units.erase(units.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    return true;
  }
  return false;
}

void contract_units(std::vector<Unit>& units, const InflectionLexicon& lex, std::string_view lang) {
  while (contract_once(units, lex, lang)) {
  }
}

std::vector<Token> unit_tokens(const std::vector<Unit>& units) {
  std::vector<Token> out;
  out.reserve(units.size());
  for (const auto& u : units) out.push_back(u.tok);
  return out;
}

}  // namespace

std::string_view to_string(FormSource s) {
  switch (s) {
    case FormSource::Lexicon: return "Lexicon";
    case FormSource::SuffixRule: return "SuffixRule";
    case FormSource::Unchanged: return "Unchanged";
  }
  return "Unchanged";
}

std::vector<SuffixRule> parse_suffix_rules(std::string_view tsv, std::string_view origin) {
  std::vector<SuffixRule> rules;
  std::map<std::tuple<std::string, Direction, int>, std::size_t> seen;
  for (const auto& row : tsv_rows(tsv)) {
    const std::string where = std::string(origin) + ":" + std::to_string(row.line);
    if (row.cols.size() != 6) {
      throw LoadError(where + ": expected lang, pos_scope, match, replace, direction, priority");
    }
    SuffixRule r;
    r.lang = std::string(row.cols[0]);
    if (row.cols[1] != "*") {
      for (auto pos : text::split(row.cols[1], ',')) r.pos_scope.emplace(text::trim(pos));
    }
    r.match_suffix = suffix_field(row.cols[2]);
    r.replace_suffix = suffix_field(row.cols[3]);
    if (row.cols[4] == "M>F") {
      r.direction = Direction::MascToFem;
    } else if (row.cols[4] == "F>M") {
      r.direction = Direction::FemToMasc;
    } else {
      throw LoadError(where + ": direction must be M>F or F>M");
    }
    auto p = row.cols[5];
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), r.priority);
    if (ec != std::errc() || ptr != p.data() + p.size()) {
      throw LoadError(where + ": bad priority '" + std::string(p) + "'");
    }
    if (!seen.emplace(std::make_tuple(r.lang, r.direction, r.priority), row.line).second) {
      throw LoadError(where + ": duplicate priority " + std::to_string(r.priority) + " for " +
                      r.lang + " " + std::string(row.cols[4]));
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<SuffixRule> load_suffix_rules(const std::filesystem::path& path) {
  return parse_suffix_rules(io::read_file(path), path.string());
}

ReinflectedForm reinflect_token(const Token& token, const mrf::AgreementTag& target,
                                std::string_view lang, const InflectionLexicon& lex,
                                const std::vector<SuffixRule>& rules) {
  if (target.no_agr || target.gender == Gender::None) {
    return {token.surface, FormSource::Unchanged,
            "no target gender for '" + token.surface + "'"};
  }
  if (token.feats.gender() == target.gender) {
    return {token.surface, FormSource::Unchanged, std::nullopt};
  }
  if (auto form = lex.lookup(lang, token.lemma, target.gender, target.number)) {
    return {text::match_case(token.surface, *form), FormSource::Lexicon, std::nullopt};
  }
  const Direction dir =
      target.gender == Gender::Fem ? Direction::MascToFem : Direction::FemToMasc;
  // fr/es plurals: the rules are written for singular endings, so a final -s
  // comes off first and goes back on afterwards (contents -> contentes).
  std::string_view core = token.surface;
  const bool plural_s = target.number == Number::Plur && (lang == "fr" || lang == "es");
  if (plural_s && core.size() > 1 && (core.back() == 's' || core.back() == 'S')) {
    core.remove_suffix(1);
  }
  auto pluralize = [&](std::string form) {
    if (plural_s && !text::ends_with(form, "s") && !text::ends_with(form, "x")) form += 's';
    return form;
  };
  const std::string lower = text::to_lower(core);
  const SuffixRule* best = nullptr;
  for (const auto& r : rules) {
    if (r.lang != lang || r.direction != dir) continue;
    if (!r.pos_scope.empty() && !r.pos_scope.contains(token.upos)) continue;
    if (!text::ends_with(lower, text::to_lower(r.match_suffix))) continue;
    if (r.match_suffix.size() >= lower.size() && !r.match_suffix.empty()) continue;
    if (!best || r.match_suffix.size() > best->match_suffix.size() ||
        (r.match_suffix.size() == best->match_suffix.size() && r.priority < best->priority)) {
      best = &r;
    }
  }
  if (best) {
    const std::string stem(core.substr(0, core.size() - best->match_suffix.size()));
    return {text::match_case(token.surface, pluralize(text::to_lower(stem) + best->replace_suffix)),
            FormSource::SuffixRule, std::nullopt};
  }
  return {token.surface, FormSource::Unchanged,
          "no lexicon entry or suffix rule for '" + token.surface + "' (" + token.lemma + ", " +
              target.to_string() + ")"};
}

std::vector<Token> apply_contractions(std::vector<Token> tokens, const InflectionLexicon& lex,
                                      std::string_view lang) {
  std::vector<Unit> units;
  units.reserve(tokens.size());
  for (auto& t : tokens) {
    const int idx = t.index;
    units.push_back({std::move(t), idx, idx});
  }
  contract_units(units, lex, lang);
  return unit_tokens(units);
}

std::string detokenize(const std::vector<Token>& tokens, std::string_view lang) {
  const bool elides = lang == "fr" || lang == "it";
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    out.append(t.surface);
    if (i + 1 == tokens.size()) break;
    const bool apostrophe = text::ends_with(t.surface, "'") || text::ends_with(t.surface, "’");
    if (t.space_after && !(elides && apostrophe)) out.push_back(' ');
  }
  return out;
}

void repair_elision(std::vector<Token>& tokens, std::size_t i, std::string_view lang) {
  if (i + 1 >= tokens.size() || (lang != "fr" && lang != "it")) return;
  Token& det = tokens[i];
  const std::string& next = tokens[i + 1].surface;
  const std::string lower = text::to_lower(det.surface);
  const bool vowel = vowel_initial(next, lang);
  const bool fem = det.feats.gender() == Gender::Fem;
  auto set = [&](std::string_view form, bool space_after) {
    det.surface = text::match_case(det.surface, form);
    det.space_after = space_after;
  };

  if (lang == "fr") {
    if ((lower == "le" || lower == "la") && vowel) {
      set("l'", false);
    } else if (is_elided_article(lower) && !vowel) {
      set(fem ? "la" : "le", true);
    }
    return;
  }
  // Italian
  if ((lower == "lo" || lower == "la") && vowel) {
    set("l'", false);
  } else if (is_elided_article(lower) && !vowel) {
    set(fem ? "la" : (italian_lo_onset(next) ? "lo" : "il"), true);
  } else if (lower == "il" && italian_lo_onset(next)) {
    set("lo", true);
  } else if (lower == "lo" && !vowel && !italian_lo_onset(next)) {
    set("il", true);
  } else if (lower == "una" && vowel) {
    set("un'", false);
  } else if (lower == "un'" && (!vowel || !fem)) {
    set(fem ? "una" : "un", true);
  } else if (lower == "un" && fem && vowel) {
    set("un'", false);
  }
}

std::optional<int> locate_animate_noun(const AnnotatedSentence& tgt, const GenderedForms& forms,
                                       std::string* why) {
  const std::string masc = text::to_lower(forms.masc);
  const std::string fem = text::to_lower(forms.fem);
  std::vector<int> hits;
  for (const Token& t : tgt.tokens) {
    const std::string lemma = text::to_lower(t.lemma);
    const std::string surface = text::to_lower(t.surface);
    if (lemma == masc || lemma == fem || surface == masc || surface == fem) {
      hits.push_back(t.index);
    }
  }
  if (hits.size() == 1) return hits.front();
  if (why) {
    *why = hits.empty() ? "target animate noun '" + forms.masc + "/" + forms.fem + "' not found"
                        : "target animate noun '" + forms.masc + "/" + forms.fem + "' matched " +
                              std::to_string(hits.size()) + " tokens";
  }
  return std::nullopt;
}

AnnotatedSentence regenerate_target(const AnnotatedSentence& tgt, int site,
                                    const GenderedForms* site_forms,
                                    const CounterfactualConfig& cfg, ReinflectionReport& report) {
  const auto iv = mrf::gender_swap_intervention(tgt, site);
  const auto new_tags = mrf::infer_tags(tgt, *cfg.model, iv, cfg.inference);
  const auto marks = mrf::mark_reinflection_targets(tgt, new_tags, iv, cfg.lang);

  AnnotatedSentence out = tgt;
  std::set<int> changed;
  for (int idx : marks) {
    Token& tok = out.at(idx);
    TokenReport entry{idx, tok.surface, tok.surface, FormSource::Unchanged};
    mrf::AgreementTag target = new_tags[static_cast<std::size_t>(idx - 1)];
    ReinflectedForm form;
    if (idx == site) {
      target = iv.forced_tag;
      if (site_forms) {
        form = {text::match_case(tok.surface, site_forms->form(target.gender)),
                FormSource::Lexicon, std::nullopt};
      } else {
        form = reinflect_token(tok, target, cfg.lang, *cfg.inflections, *cfg.rules);
      }
    } else {
      if (target.no_agr && tok.upos == "DET") {
        // Determiner attached to the noun but left untouched by the MRF.
        target = mrf::AgreementTag::of(iv.forced_tag.gender, tok.feats.number());
      }
      form = reinflect_token(tok, target, cfg.lang, *cfg.inflections, *cfg.rules);
    }
    if (form.warning) report.warnings.push_back(*form.warning);
    entry.source = form.source;
    if (form.source != FormSource::Unchanged) {
      tok.surface = form.surface;
      tok.feats.set_gender(target.gender);
    }
    entry.after = tok.surface;
    if (entry.after != entry.before) changed.insert(idx);
    report.tokens.push_back(std::move(entry));
  }

  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    Token& tok = out.tokens[i];
    if (tok.upos != "DET") continue;
    if (!marks.contains(tok.index) && !marks.contains(tok.index + 1)) continue;
    const std::string before = tok.surface;
    repair_elision(out.tokens, i, cfg.lang);
    if (tok.surface != before) {
      changed.insert(tok.index);
      for (auto& entry : report.tokens) {
        if (entry.index == tok.index) entry.after = tok.surface;
      }
    }
  }

  // Surface units: untouched ranges stay fused, touched ones split into parts.
  std::vector<Unit> units;
  std::map<std::pair<int, int>, const MultiwordToken*> original_ranges;
  for (const auto& mw : tgt.multiword) original_ranges[{mw.first, mw.last}] = &mw;
  for (std::size_t i = 0; i < out.tokens.size();) {
    const int idx = static_cast<int>(i) + 1;
    auto range = std::find_if(tgt.multiword.begin(), tgt.multiword.end(),
                              [idx](const MultiwordToken& m) { return m.first == idx; });
    if (range != tgt.multiword.end()) {
      bool touched = false;
      for (int k = range->first; k <= range->last; ++k) touched = touched || changed.contains(k);
      if (!touched) {
        Token fused = out.tokens[i];
        fused.surface = range->surface;
        fused.space_after = range->space_after;
        units.push_back({std::move(fused), range->first, range->last});
        i = static_cast<std::size_t>(range->last);
        continue;
      }
      for (int k = range->first; k <= range->last; ++k) {
        Token& part = out.at(k);
        part.space_after = k == range->last ? range->space_after : true;
        units.push_back({part, k, k});
      }
      i = static_cast<std::size_t>(range->last);
      continue;
    }
    units.push_back({out.tokens[i], idx, idx});
    ++i;
  }
  contract_units(units, *cfg.inflections, cfg.lang);

  out.multiword.clear();
  for (const auto& u : units) {
    if (u.first == u.last) continue;
    MultiwordToken mw;
    mw.first = u.first;
    mw.last = u.last;
    mw.surface = u.tok.surface;
    mw.space_after = u.tok.space_after;
    if (auto it = original_ranges.find({u.first, u.last}); it != original_ranges.end()) {
      mw.misc = it->second->misc;
    }
    for (int k = u.first; k <= u.last; ++k) out.at(k).space_after = true;
    out.multiword.push_back(std::move(mw));
  }
  out.raw = detokenize(unit_tokens(units), cfg.lang);
  if (text::starts_upper(tgt.raw) && !text::starts_upper(out.raw)) {
    out.raw = text::capitalize_first(out.raw);
  }
  return out;
}

CounterfactualResult generate_counterfactual(const GenderedSelection& sel,
                                             const CounterfactualConfig& cfg) {
  if (!cfg.model || !cfg.animacy || !cfg.inflections || !cfg.rules) {
    throw ContractError("counterfactual configuration is incomplete");
  }
  CounterfactualResult result;
  const GenderedForms* forms = cfg.animacy->find(sel.profession_lemma, cfg.lang);
  if (!forms) {
    result.skip_reason = "profession '" + sel.profession_lemma + "' has no " + cfg.lang + " forms";
    return result;
  }
  std::string why;
  auto site = locate_animate_noun(sel.pair.tgt, *forms, &why);
  if (!site) {
    result.skip_reason = why;
    return result;
  }
  if (mrf::tag_of(sel.pair.tgt.at(*site)).no_agr) {
    result.skip_reason = "target animate noun '" + sel.pair.tgt.at(*site).surface +
                         "' has no Gender feature";
    return result;
  }
  ParallelPair cf;
  cf.id = sel.pair.id;
  cf.origin = Origin::Counterfactual;
  // Index 0: no English pronoun, only the target side is rewritten.
  cf.src = sel.pronoun_index == 0 ? sel.pair.src
                                  : swap_english_gender(sel.pair.src, sel.pronoun_index);
  cf.tgt = regenerate_target(sel.pair.tgt, *site, forms, cfg, result.report);
  result.pair = std::move(cf);
  return result;
}

}  // namespace cfgen
