#pragma once

// Precision/recall scoring of extracted relations against gold annotations,
// and the per-property, per-method report.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "provkb/corpus.h"
#include "provkb/ner.h"
#include "provkb/rdf.h"
#include "provkb/relex.h"

namespace provkb::eval {

enum class Method { kSyntactic, kLexicoSyntactic, kLexicon };

inline constexpr Method kAllMethods[] = {Method::kSyntactic, Method::kLexicoSyntactic,
                                         Method::kLexicon};

std::string MethodTag(Method m);    // "syntactic", "lexicoSyntactic", "lexicon"
std::string MethodLabel(Method m);  // French row-group label
Method ParseMethod(std::string_view tag);

// Endpoints are normalized surfaces (or IRIs), compared exactly.
struct RelationInstance {
  TermId property;
  std::string subject;
  std::string object;
  std::string sentence_id;
  auto operator<=>(const RelationInstance&) const = default;
};

using InstanceSet = std::set<RelationInstance>;

struct Score {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

Score ScoreSets(const InstanceSet& gold, const InstanceSet& predicted);

// Gold relations of a document, endpoints taken from the span text.
InstanceSet GoldInstances(const corpus::Document& doc, const corpus::GoldAnnotation& gold);
InstanceSet PredictedInstances(const std::vector<relex::CandidateTriple>& candidates);
// Keeps only instances of `property`.
InstanceSet ForProperty(const InstanceSet& in, const TermId& property);

// The three properties the report covers, in row order.
std::vector<TermId> ReportProperties();

struct ReportRow {
  TermId property;
  Method method;
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f1;
  int tp = 0;
  int fp = 0;
  int fn = 0;
};

struct MethodRun {
  Method method;
  InstanceSet gold;
  InstanceSet predicted;
};

class EvalReport {
 public:
  EvalReport() = default;
  explicit EvalReport(std::vector<ReportRow> rows);

  // One row per (method, property), method blocks in run order.
  static EvalReport FromRuns(const std::vector<MethodRun>& runs);

  const std::vector<ReportRow>& rows() const { return rows_; }
  const ReportRow* Find(const TermId& property, Method method) const;

  // Header plus one line per row, as printed: the method label appears on
  // its block's first row only.
  std::vector<std::vector<std::string>> Grid(const PrefixTable& prefixes,
                                             bool with_counts = false) const;
  // Aligned plain text; the method label is printed on its block's first
  // row only. Values use two decimals, undefined values print "n/a".
  std::string RenderTable(const PrefixTable& prefixes, bool with_counts = false) const;
  // Tab-separated, one header line, method label on every row.
  std::string RenderTsv(const PrefixTable& prefixes, bool with_counts = false) const;

 private:
  std::vector<ReportRow> rows_;
};

std::string FormatMetric(const std::optional<double>& v);

// Rule sets compared by the evaluation. The syntactic pack has no lexical
// triggers; the lexicon method is the lexico-syntactic pack followed by the
// gated lexicon stage.
struct MethodInputs {
  std::vector<relex::LexSynRule> syntactic;
  std::vector<relex::LexSynRule> lexico_syntactic;
  std::vector<relex::RelationLexicon> lexicons;
  relex::ExtractOptions options;
};

std::vector<relex::CandidateTriple> RunMethod(Method method, const corpus::Document& doc,
                                              const std::vector<ner::EntityMention>& mentions,
                                              const MethodInputs& inputs);

// One run per method, in kAllMethods order.
std::vector<MethodRun> RunAllMethods(const corpus::Document& doc,
                                     const std::vector<ner::EntityMention>& mentions,
                                     const corpus::GoldAnnotation& gold,
                                     const MethodInputs& inputs);

}  // namespace provkb::eval
