#include "provkb/eval.h"

#include <algorithm>
#include <cstdio>

#include "provkb/errors.h"
#include "provkb/text.h"

namespace provkb::eval {

namespace {

std::optional<double> Ratio(int num, int den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / den;
}

size_t Width(std::string_view s) { return text::Decode(s).size(); }

std::string Pad(const std::string& s, size_t width) {
  return s + std::string(width > Width(s) ? width - Width(s) : 0, ' ');
}

}  // namespace

std::string MethodTag(Method m) {
  switch (m) {
    case Method::kSyntactic: return "syntactic";
    case Method::kLexicoSyntactic: return "lexicoSyntactic";
    case Method::kLexicon: return "lexicon";
  }
  return "";
}

std::string MethodLabel(Method m) {
  switch (m) {
    case Method::kSyntactic: return "Règles syntaxiques";
    case Method::kLexicoSyntactic: return "Règles lexico-syntaxiques";
    case Method::kLexicon: return "Définition du lexique";
  }
  return "";
}

Method ParseMethod(std::string_view tag) {
  for (Method m : kAllMethods) {
    if (MethodTag(m) == tag) return m;
  }
  throw Error("unknown method '" + std::string(tag) + "'");
}

Score ScoreSets(const InstanceSet& gold, const InstanceSet& predicted) {
  Score s;
  for (const RelationInstance& p : predicted) {
    if (gold.count(p)) {
      ++s.tp;
    } else {
      ++s.fp;
    }
  }
  s.fn = static_cast<int>(gold.size()) - s.tp;
  s.precision = Ratio(s.tp, s.tp + s.fp);
  s.recall = Ratio(s.tp, s.tp + s.fn);
  if (s.precision && s.recall) {
    double sum = *s.precision + *s.recall;
    s.f1 = sum == 0 ? 0.0 : 2 * *s.precision * *s.recall / sum;
  }
  return s;
}

InstanceSet GoldInstances(const corpus::Document& doc, const corpus::GoldAnnotation& gold) {
  InstanceSet out;
  for (const corpus::RelationAnnotation& r : gold.relations) {
    const corpus::Sentence* s = doc.Find(r.sentence_id);
    if (!s) throw NotFound("gold sentence '" + r.sentence_id + "' not in document " + doc.id);
    out.insert({r.property,
                text::NormalizeSurface(s->SpanText(r.subject.start, r.subject.end)),
                text::NormalizeSurface(s->SpanText(r.object.start, r.object.end)),
                r.sentence_id});
  }
  return out;
}

InstanceSet PredictedInstances(const std::vector<relex::CandidateTriple>& candidates) {
  InstanceSet out;
  for (const relex::CandidateTriple& c : candidates) {
    out.insert({c.triple.predicate.iri(), text::NormalizeSurface(c.subject_surface),
                text::NormalizeSurface(c.object_surface), c.sentence_id});
  }
  return out;
}

InstanceSet ForProperty(const InstanceSet& in, const TermId& property) {
  InstanceSet out;
  for (const RelationInstance& r : in) {
    if (r.property == property) out.insert(r);
  }
  return out;
}

std::vector<TermId> ReportProperties() {
  return {terms::Pv("hasComponent"), terms::Pv("hasFragranceCreator"),
          terms::Pv("hasRepresentative")};
}

EvalReport::EvalReport(std::vector<ReportRow> rows) : rows_(std::move(rows)) {}

EvalReport EvalReport::FromRuns(const std::vector<MethodRun>& runs) {
  std::vector<ReportRow> rows;
  for (const MethodRun& run : runs) {
    for (const TermId& p : ReportProperties()) {
      Score s = ScoreSets(ForProperty(run.gold, p), ForProperty(run.predicted, p));
      rows.push_back({p, run.method, s.recall, s.precision, s.f1, s.tp, s.fp, s.fn});
    }
  }
  return EvalReport(std::move(rows));
}

const ReportRow* EvalReport::Find(const TermId& property, Method method) const {
  for (const ReportRow& r : rows_) {
    if (r.property == property && r.method == method) return &r;
  }
  return nullptr;
}

std::string FormatMetric(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

namespace {

std::vector<std::vector<std::string>> Cells(const std::vector<ReportRow>& rows,
                                            const PrefixTable& prefixes, bool with_counts,
                                            bool repeat_method) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> header = {"Propriétés",
                                     repeat_method ? "Méthode" : "Méthodes d'extraction",
                                     "Rappel", "Précision"};
  if (with_counts) {
    for (const char* h : {"F1", "tp", "fp", "fn"}) header.push_back(h);
  }
  out.push_back(header);
  for (size_t i = 0; i < rows.size(); ++i) {
    const ReportRow& r = rows[i];
    bool first = i == 0 || rows[i - 1].method != r.method;
    std::vector<std::string> line = {prefixes.Render(r.property),
                                     first || repeat_method ? MethodLabel(r.method) : "",
                                     FormatMetric(r.recall), FormatMetric(r.precision)};
    if (with_counts) {
      line.push_back(FormatMetric(r.f1));
      for (int n : {r.tp, r.fp, r.fn}) line.push_back(std::to_string(n));
    }
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> EvalReport::Grid(const PrefixTable& prefixes,
                                                       bool with_counts) const {
  return Cells(rows_, prefixes, with_counts, false);
}

std::string EvalReport::RenderTable(const PrefixTable& prefixes, bool with_counts) const {
  std::vector<std::vector<std::string>> cells = Grid(prefixes, with_counts);
  std::vector<size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], Width(line[c]));
  }
  std::string out;
  for (const auto& line : cells) {
    std::string row;
    for (size_t c = 0; c < line.size(); ++c) {
      row += c + 1 == line.size() ? line[c] : Pad(line[c], widths[c] + 2);
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + "\n";
  }
  return out;
}

std::string EvalReport::RenderTsv(const PrefixTable& prefixes, bool with_counts) const {
  std::string out;
  for (const auto& line : Cells(rows_, prefixes, with_counts, true)) {
    out += text::Join(line, "\t") + "\n";
  }
  return out;
}

std::vector<relex::CandidateTriple> RunMethod(Method method, const corpus::Document& doc,
                                              const std::vector<ner::EntityMention>& mentions,
                                              const MethodInputs& inputs) {
  switch (method) {
    case Method::kSyntactic:
      return relex::ApplyRules(doc, mentions, inputs.syntactic, inputs.options);
    case Method::kLexicoSyntactic:
      return relex::ApplyRules(doc, mentions, inputs.lexico_syntactic, inputs.options);
    case Method::kLexicon:
      return relex::ExtractPerSentence(doc, mentions, inputs.lexico_syntactic, inputs.lexicons,
                                       inputs.options);
  }
  return {};
}

std::vector<MethodRun> RunAllMethods(const corpus::Document& doc,
                                     const std::vector<ner::EntityMention>& mentions,
                                     const corpus::GoldAnnotation& gold,
                                     const MethodInputs& inputs) {
  InstanceSet g = GoldInstances(doc, gold);
  std::vector<MethodRun> runs;
  for (Method m : kAllMethods) {
    runs.push_back({m, g, PredictedInstances(RunMethod(m, doc, mentions, inputs))});
  }
  return runs;
}

}  // namespace provkb::eval
