#include "cfgen/mrf/agreement_model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "cfgen/error.hpp"
#include "cfgen/text.hpp"

namespace cfgen::mrf {
namespace {

std::string format_double(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, std::size_t line) {
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || std::isnan(v)) {
    throw FormatError("bad number '" + tmp + "'", line);
  }
  return v;
}

std::string_view base_relation(std::string_view deprel) {
  return deprel.substr(0, deprel.find(':'));
}

}  // namespace

const std::vector<double>* AgreementModel::find_unary(std::string_view upos) const {
  auto it = unary.find(upos);
  return it == unary.end() ? nullptr : &it->second;
}

const std::vector<double>* AgreementModel::find_pairwise(std::string_view deprel) const {
  auto it = pairwise.find(deprel);
  if (it == pairwise.end()) it = pairwise.find(base_relation(deprel));
  return it == pairwise.end() ? nullptr : &it->second;
}

AgreementModel train_agreement_model(const std::vector<AnnotatedSentence>& treebank,
                                     double smoothing, std::string lang) {
  if (treebank.empty()) throw InputError("cannot train an agreement model on an empty treebank");
  if (!(smoothing >= 0)) throw InputError("smoothing constant must be non-negative");

  std::vector<AgreementTag> observed;
  for (const auto& sent : treebank) {
    for (const auto& tok : sent.tokens) observed.push_back(tag_of(tok));
  }
  AgreementModel model;
  model.lang = std::move(lang);
  model.smoothing = smoothing;
  model.tags = TagSpace(std::move(observed));
  const std::size_t T = model.tags.size();

  std::map<std::string, std::vector<double>, std::less<>> unary_counts;
  std::map<std::string, std::vector<double>, std::less<>> pair_counts;
  for (const auto& sent : treebank) {
    for (const auto& tok : sent.tokens) {
      const std::size_t t = *model.tags.index_of(tag_of(tok));
      auto& u = unary_counts[tok.upos];
      u.resize(T, 0.0);
      u[t] += 1.0;
      if (tok.head == 0) continue;
      const std::size_t h = *model.tags.index_of(tag_of(sent.at(tok.head)));
      auto& p = pair_counts[tok.deprel];
      p.resize(T * T, 0.0);
      p[h * T + t] += 1.0;
    }
  }
  auto normalize = [smoothing](std::vector<double> counts) {
    double total = 0;
    for (double c : counts) total += c;
    const double denom = total + smoothing * static_cast<double>(counts.size());
    for (double& c : counts) c = std::log((c + smoothing) / denom);
    return counts;
  };
  for (auto& [upos, counts] : unary_counts) model.unary.emplace(upos, normalize(counts));
  for (auto& [rel, counts] : pair_counts) model.pairwise.emplace(rel, normalize(counts));
  return model;
}

std::string serialize_model(const AgreementModel& model) {
  const std::size_t T = model.tags.size();
  std::string out = "CFGEN-MRF 1\n";
  out += "LANG " + model.lang + "\n";
  out += "SMOOTHING " + format_double(model.smoothing) + "\n";
  for (std::size_t i = 0; i < T; ++i) {
    out += "TAG " + std::to_string(i) + " " + model.tags[i].to_string() + "\n";
  }
  for (const auto& [upos, values] : model.unary) {
    for (std::size_t t = 0; t < T; ++t) {
      out += "UNARY " + upos + " " + model.tags[t].to_string() + " " + format_double(values[t]) +
             "\n";
    }
  }
  for (const auto& [rel, values] : model.pairwise) {
    for (std::size_t h = 0; h < T; ++h) {
      for (std::size_t c = 0; c < T; ++c) {
        out += "PAIR " + rel + " " + model.tags[h].to_string() + " " +
               model.tags[c].to_string() + " " + format_double(values[h * T + c]) + "\n";
      }
    }
  }
  return out;
}

AgreementModel parse_model(std::string_view input) {
  AgreementModel model;
  std::vector<AgreementTag> tags;
  bool tags_closed = false;
  std::size_t line_no = 0;
  std::map<std::string, std::vector<bool>> unary_seen;
  std::map<std::string, std::vector<bool>> pair_seen;

  auto tag_index = [&](std::string_view s, std::size_t line) {
    auto tag = AgreementTag::parse(s);
    if (!tag) throw FormatError("bad tag '" + std::string(s) + "'", line);
    auto idx = model.tags.index_of(*tag);
    if (!idx) throw FormatError("tag '" + std::string(s) + "' not declared", line);
    return *idx;
  };
  auto close_tags = [&](std::size_t line) {
    if (tags_closed) return;
    model.tags = TagSpace(tags);
    if (model.tags.size() != tags.size() + 1) {
      throw FormatError("TAG lines must list NoAgr plus unique gendered tags", line);
    }
    tags_closed = true;
  };

  for (auto raw_line : text::split(input, '\n')) {
    ++line_no;
    auto line = text::trim(raw_line);
    if (line.empty()) continue;
    auto f = text::split_whitespace(line);
    if (line_no == 1) {
      if (f.size() != 2 || f[0] != "CFGEN-MRF" || f[1] != "1") {
        throw FormatError("not a version 1 model file", line_no);
      }
      continue;
    }
    if (f[0] == "LANG" && f.size() == 2) {
      model.lang = std::string(f[1]);
    } else if (f[0] == "SMOOTHING" && f.size() == 2) {
      model.smoothing = parse_double(f[1], line_no);
    } else if (f[0] == "TAG" && f.size() == 3) {
      if (tags_closed) throw FormatError("TAG after potentials", line_no);
      auto tag = AgreementTag::parse(f[2]);
      if (!tag) throw FormatError("bad tag '" + std::string(f[2]) + "'", line_no);
      if (!tag->no_agr) tags.push_back(*tag);
    } else if (f[0] == "UNARY" && f.size() == 4) {
      close_tags(line_no);
      const std::size_t T = model.tags.size();
      auto& row = model.unary[std::string(f[1])];
      auto& seen = unary_seen[std::string(f[1])];
      row.resize(T, 0.0);
      seen.resize(T, false);
      const auto t = tag_index(f[2], line_no);
      row[t] = parse_double(f[3], line_no);
      seen[t] = true;
    } else if (f[0] == "PAIR" && f.size() == 5) {
      close_tags(line_no);
      const std::size_t T = model.tags.size();
      auto& row = model.pairwise[std::string(f[1])];
      auto& seen = pair_seen[std::string(f[1])];
      row.resize(T * T, 0.0);
      seen.resize(T * T, false);
      const auto idx = tag_index(f[2], line_no) * T + tag_index(f[3], line_no);
      row[idx] = parse_double(f[4], line_no);
      seen[idx] = true;
    } else {
      throw FormatError("unrecognized model line", line_no);
    }
  }
  if (line_no == 0) throw FormatError("empty model file", 1);
  close_tags(line_no);
  for (const auto& [key, seen] : unary_seen) {
    for (bool s : seen) {
      if (!s) throw FormatError("incomplete UNARY row for " + key, line_no);
    }
  }
  for (const auto& [key, seen] : pair_seen) {
    for (bool s : seen) {
      if (!s) throw FormatError("incomplete PAIR matrix for " + key, line_no);
    }
  }
  return model;
}

}  // namespace cfgen::mrf
