#include <doctest.h>

#include <random>

#include "oracles/score_oracle.h"
#include "provkb/eval.h"
#include "provkb/ner.h"
#include "provkb/paths.h"
#include "provkb/relex.h"
#include "provkb/vocab.h"

using namespace provkb;

namespace {

eval::RelationInstance R(const std::string& s, const std::string& o) {
  return {terms::Pv("hasComponent"), s, o, "s1"};
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("score set arithmetic") {
  eval::InstanceSet gold = {R("a", "x"), R("b", "x"), R("c", "x"), R("d", "x")};
  auto s = eval::ScoreSets(gold, {R("a", "x"), R("b", "x"), R("e", "x")});
  CHECK(s.tp == 2);
  CHECK(s.fp == 1);
  CHECK(s.fn == 2);
  CHECK(*s.precision == doctest::Approx(2.0 / 3));
  CHECK(*s.recall == doctest::Approx(0.5));
  CHECK(*s.f1 == doctest::Approx(2 * (2.0 / 3) * 0.5 / (2.0 / 3 + 0.5)));

  auto same = eval::ScoreSets(gold, gold);
  CHECK(*same.precision == 1.0);
  CHECK(*same.recall == 1.0);

  auto none = eval::ScoreSets(gold, {});
  CHECK(*none.recall == 0.0);
  CHECK_FALSE(none.precision);
  CHECK_FALSE(none.f1);
}

TEST_CASE("scores agree with the pairwise matcher and stay in range") {
  std::mt19937 rng(2);
  for (int i = 0; i < 300; ++i) {
    eval::InstanceSet gold, pred;
    for (unsigned k = rng() % 7; k > 0; --k) gold.insert(R(std::string(1, char('a' + rng() % 4)), "x"));
    for (unsigned k = rng() % 7; k > 0; --k) pred.insert(R(std::string(1, char('a' + rng() % 5)), "x"));
    auto s = eval::ScoreSets(gold, pred);
    auto o = oracle::Score({gold.begin(), gold.end()}, {pred.begin(), pred.end()});
    CHECK(s.tp == o.tp);
    CHECK(s.fp == o.fp);
    CHECK(s.fn == o.fn);
    CHECK(s.precision.has_value() == o.precision.has_value());
    CHECK(s.recall.has_value() == o.recall.has_value());
    for (const auto& v : {s.precision, s.recall, s.f1}) {
      if (v) {
        CHECK(*v >= 0.0);
        CHECK(*v <= 1.0);
      }
    }
  }
}

TEST_CASE("metric formatting") {
  CHECK(eval::FormatMetric(0.2) == "0.20");
  CHECK(eval::FormatMetric(1.0) == "1.00");
  CHECK(eval::FormatMetric(2.0 / 3) == "0.67");
  CHECK(eval::FormatMetric(std::nullopt) == "n/a");
}

TEST_CASE("method names") {
  CHECK(eval::MethodTag(eval::Method::kLexicoSyntactic) == "lexicoSyntactic");
  CHECK(eval::ParseMethod("lexicon") == eval::Method::kLexicon);
  CHECK(eval::MethodLabel(eval::Method::kSyntactic) == "Règles syntaxiques");
  CHECK_THROWS(eval::ParseMethod("magic"));
}

TEST_CASE("report grid follows the printed layout") {
  std::vector<eval::ReportRow> rows;
  for (eval::Method m : eval::kAllMethods) {
    for (const TermId& p : eval::ReportProperties()) {
      eval::ReportRow r;
      r.property = p;
      r.method = m;
      r.recall = 0.36;
      r.precision = 0.96;
      rows.push_back(r);
    }
  }
  rows[4].recall.reset();
  eval::EvalReport report(rows);
  auto grid = report.Grid(PrefixTable::Defaults());
  REQUIRE(grid.size() == 10);
  CHECK(grid[0] == std::vector<std::string>{"Propriétés", "Méthodes d'extraction", "Rappel", "Précision"});
  CHECK(grid[1] == std::vector<std::string>{"pv:hasComponent", "Règles syntaxiques", "0.36", "0.96"});
  CHECK(grid[2][1].empty());
  CHECK(grid[4][1] == "Règles lexico-syntaxiques");
  CHECK(grid[5][2] == "n/a");
  CHECK(report.Find(terms::Pv("hasRepresentative"), eval::Method::kLexicon) != nullptr);

  std::string tsv = report.RenderTsv(PrefixTable::Defaults());
  CHECK(tsv.find("Propriétés\tMéthode\tRappel\tPrécision\n") == 0);
  CHECK(tsv.find("pv:hasFragranceCreator\tRègles syntaxiques\t0.36\t0.96") != std::string::npos);
  auto counts = report.Grid(PrefixTable::Defaults(), true);
  CHECK(counts[0].size() == 8);
}

TEST_CASE("empty report renders the header only") {
  eval::EvalReport empty = eval::EvalReport::FromRuns({});
  CHECK(empty.rows().empty());
  std::string table = empty.RenderTable(PrefixTable::Defaults());
  CHECK(std::count(table.begin(), table.end(), '\n') == 1);
  CHECK(table.find("Rappel") != std::string::npos);
}

TEST_CASE("recall never drops when the lexicon stage is added") {
  const auto& reg = vocab::VocabRegistry::Default();
  auto doc = corpus::LoadConllu(ReadFile(DataPath("corpus/mini.conllu")), "mini");
  auto gold = corpus::LoadGold(ReadFile(DataPath("corpus/mini.gold.tsv")), reg, &doc);
  auto ms = ner::Recognize(doc, ner::LoadGazetteer(ReadFile(DataPath("ner/gazetteer.tsv")), PrefixTable::Defaults()),
                           ner::LoadContextRules(ReadFile(DataPath("ner/context.tsv"))));
  eval::MethodInputs in;
  in.syntactic = relex::LoadRulePack(ReadFile(DataPath("rules/syntactic.rules")), reg).rules;
  in.lexico_syntactic = relex::LoadRulePack(ReadFile(DataPath("rules/lexsyn.rules")), reg).rules;
  in.lexicons = relex::LoadLexicons(ReadFile(DataPath("rules/lexicons.tsv")), reg);
  auto runs = eval::RunAllMethods(doc, ms, gold, in);
  REQUIRE(runs.size() == 3);
  auto report = eval::EvalReport::FromRuns(runs);
  CHECK(report.rows().size() == 9);
  for (const TermId& p : eval::ReportProperties()) {
    auto a = report.Find(p, eval::Method::kLexicoSyntactic);
    auto ab = report.Find(p, eval::Method::kLexicon);
    REQUIRE(a);
    REQUIRE(ab);
    CHECK(*ab->recall >= *a->recall);
    CHECK(ab->tp + ab->fn == a->tp + a->fn);
  }
  // Gold endpoints come from span text.
  bool found = false;
  for (const auto& g : eval::GoldInstances(doc, gold)) found = found || g.subject == "eau mega" || g.object == "olivier polge";
  CHECK(found);
}

}  // TEST_SUITE
