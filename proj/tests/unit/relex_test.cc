#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "provkb/corpus.h"
#include "provkb/errors.h"
#include "provkb/eval.h"
#include "provkb/ner.h"
#include "provkb/paths.h"
#include "provkb/relex.h"
#include "provkb/vocab.h"

using namespace provkb;

namespace {

const vocab::VocabRegistry& Reg() { return vocab::VocabRegistry::Default(); }

struct Shipped {
  std::vector<ner::GazetteerEntry> gaz =
      ner::LoadGazetteer(ReadFile(DataPath("ner/gazetteer.tsv")), PrefixTable::Defaults());
  std::vector<ner::ContextRule> cues = ner::LoadContextRules(ReadFile(DataPath("ner/context.tsv")));
  relex::RulePack pack = relex::LoadRulePack(ReadFile(DataPath("rules/lexsyn.rules")), Reg());
  relex::RulePack syntactic = relex::LoadRulePack(ReadFile(DataPath("rules/syntactic.rules")), Reg());
  std::vector<relex::RelationLexicon> lexicons =
      relex::LoadLexicons(ReadFile(DataPath("rules/lexicons.tsv")), Reg());
};

const Shipped& S() {
  static Shipped s;
  return s;
}

corpus::Document Fixture(const char* name) {
  return corpus::LoadConllu(ReadFile(DataPath(std::string("fixtures/") + name)));
}

Triple T(const std::string& s, const std::string& p, const std::string& o) {
  return Triple::Make(Term::Iri(terms::Ex(s)), Term::Iri(terms::Pv(p)), Term::Iri(terms::Ex(o)));
}

std::set<Triple> Triples(const std::vector<relex::CandidateTriple>& cs) {
  std::set<Triple> out;
  for (const auto& c : cs) out.insert(c.triple);
  return out;
}

std::vector<ner::EntityMention> Mentions(const corpus::Document& doc) {
  return ner::Recognize(doc, S().gaz, S().cues);
}

}  // namespace

TEST_SUITE("relex") {

TEST_CASE("shipped rule pack size per property") {
  auto counts = S().pack.CountsByProperty();
  CHECK(counts[terms::Pv("hasRepresentative")] >= 11);
  CHECK(counts[terms::Pv("hasFragranceCreator")] >= 7);
  CHECK(counts[terms::Pv("hasComponent")] >= 23);
  CHECK(S().pack.labels == "ftb");
  for (const auto& r : S().pack.rules) {
    CHECK(r.origin == "reconstruction");
    // only the preposition-anchored component rules go without a trigger
    if (r.trigger_lemmas.empty()) CHECK(r.property == terms::Pv("hasComponent"));
  }
  for (const auto& r : S().syntactic.rules) CHECK(r.trigger_lemmas.empty());
}

TEST_CASE("stage A on the Eau Mega sentence") {
  auto doc = Fixture("eau_mega.conllu");
  auto ms = Mentions(doc);
  auto out = relex::ApplyRules(doc, ms, S().pack.rules);
  CHECK(Triples(out) == std::set<Triple>{T("Eau_Mega", "hasFragranceCreator", "Olivier_Polge")});
  REQUIRE_FALSE(out.empty());
  CHECK(out[0].provenance.extractor.kind == store::ExtractorKind::kLexSynRule);
  CHECK(out[0].provenance.confidence == doctest::Approx(0.8));
  CHECK(out[0].subject_surface == "Eau Mega");
  CHECK(out[0].object_surface == "Olivier Polge");

  // Same sentence, the creator no longer typed as a person.
  for (auto& m : ms) {
    if (m.surface == "Olivier Polge") m.type = EntityType::kBrand;
  }
  CHECK(relex::ApplyRules(doc, ms, S().pack.rules).empty());
}

TEST_CASE("the trigger-free rule fires for both person relations") {
  auto doc = Fixture("syntactic.conllu");
  auto out = relex::ApplyRules(doc, Mentions(doc), S().syntactic.rules);
  CHECK(Triples(out) == std::set<Triple>{T("Idole", "hasFragranceCreator", "Zendaya"),
                                         T("Idole", "hasRepresentative", "Zendaya")});
}

TEST_CASE("stage B on the Nina sentence") {
  auto doc = Fixture("nina.conllu");
  auto ms = Mentions(doc);
  auto out = relex::ApplyLexicon(doc, ms, S().lexicons);
  REQUIRE(Triples(out).count(T("Nina", "hasRepresentative", "Frida_Gustavsson")) == 1);
  for (const auto& c : out) {
    if (c.triple == T("Nina", "hasRepresentative", "Frida_Gustavsson")) {
      CHECK(c.provenance.extractor.kind == store::ExtractorKind::kLexicon);
      CHECK(c.provenance.extractor.id == terms::Pv("hasRepresentative").str() + "#mannequin");
      CHECK(c.provenance.confidence == doctest::Approx(0.5));
    }
  }
  // No cue lemma near the pair.
  auto quiet = corpus::TokenizeRawText("Nina de Nina Ricci plonge dans un monde avec Frida Gustavsson.");
  CHECK(relex::ApplyLexicon(quiet, Mentions(quiet), S().lexicons).empty());
  // The window is measured in tokens around the pair.
  relex::ExtractOptions narrow;
  narrow.window = 0;
  CHECK(Triples(relex::ApplyLexicon(doc, ms, S().lexicons, narrow)).count(
            T("Nina", "hasRepresentative", "Frida_Gustavsson")) == 1);
}

TEST_CASE("one candidate per person in a three-mention sentence") {
  auto doc = Fixture("three_mentions.conllu");
  auto out = relex::ApplyLexicon(doc, Mentions(doc), S().lexicons);
  CHECK(Triples(out) == std::set<Triple>{T("Libre", "hasRepresentative", "Kate_Moss"),
                                         T("Libre", "hasRepresentative", "Cara_Delevingne")});
}

TEST_CASE("extract composes the stages without duplicates") {
  corpus::Document doc = Fixture("eau_mega.conllu");
  corpus::Document nina = Fixture("nina.conllu");
  doc.sentences.push_back(nina.sentences[0]);
  auto out = relex::Extract(doc, Mentions(doc), S().pack.rules, S().lexicons);
  auto ts = Triples(out);
  CHECK(ts.count(T("Eau_Mega", "hasFragranceCreator", "Olivier_Polge")) == 1);
  CHECK(ts.count(T("Nina", "hasRepresentative", "Frida_Gustavsson")) == 1);
  CHECK(ts.size() == out.size());
}

TEST_CASE("the same triple on two sentences is merged with two attestations") {
  corpus::Document doc = Fixture("eau_mega.conllu");
  corpus::Sentence again = doc.sentences[0];
  again.id = "eau-mega-2";
  doc.sentences.push_back(again);
  auto out = relex::Extract(doc, Mentions(doc), S().pack.rules, S().lexicons);
  int hits = 0;
  for (const auto& c : out) {
    if (c.triple == T("Eau_Mega", "hasFragranceCreator", "Olivier_Polge")) {
      ++hits;
      CHECK(c.attestations.size() == 2);
    }
  }
  CHECK(hits == 1);
}

TEST_CASE("mini corpus candidate counts match the manifest") {
  auto doc = corpus::LoadConllu(ReadFile(DataPath("corpus/mini.conllu")), "mini");
  auto ms = Mentions(doc);
  auto manifest = nlohmann::json::parse(ReadFile(DataPath("corpus/mini.manifest.json")));
  eval::MethodInputs in;
  in.syntactic = S().syntactic.rules;
  in.lexico_syntactic = S().pack.rules;
  in.lexicons = S().lexicons;
  for (eval::Method m : eval::kAllMethods) {
    auto predicted = eval::PredictedInstances(eval::RunMethod(m, doc, ms, in));
    for (const auto& [qname, n] : manifest["candidates"][eval::MethodTag(m)].items()) {
      INFO(eval::MethodTag(m) << " " << qname);
      CHECK(eval::ForProperty(predicted, Reg().Resolve(qname)).size() == n.get<size_t>());
    }
  }
}

TEST_CASE("superset, gating and rule-order independence on the mini corpus") {
  auto doc = corpus::LoadConllu(ReadFile(DataPath("corpus/mini.conllu")), "mini");
  auto ms = Mentions(doc);
  auto rules = S().pack.rules;
  auto a = relex::ApplyRules(doc, ms, rules);
  auto ab = relex::ExtractPerSentence(doc, ms, rules, S().lexicons);
  auto ta = Triples(a), tab = Triples(ab);
  CHECK(std::includes(tab.begin(), tab.end(), ta.begin(), ta.end()));

  std::set<std::pair<std::string, Term>> covered;
  for (const auto& c : a) covered.insert({c.sentence_id, c.triple.predicate});
  int lexicon = 0;
  for (const auto& c : ab) {
    if (c.provenance.extractor.kind != store::ExtractorKind::kLexicon) continue;
    ++lexicon;
    CHECK(covered.count({c.sentence_id, c.triple.predicate}) == 0);
  }
  CHECK(lexicon > 0);

  std::mt19937 rng(8);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(rules.begin(), rules.end(), rng);
    CHECK(Triples(relex::ExtractPerSentence(doc, ms, rules, S().lexicons)) == tab);
  }
}

TEST_CASE("unparsed sentences only go through the lexicon") {
  auto doc = corpus::TokenizeRawText("Eau Mega composé par Olivier Polge, un bouquet de jasmin.");
  auto ms = Mentions(doc);
  CHECK(relex::ApplyRules(doc, ms, S().pack.rules).empty());
  CHECK_FALSE(relex::ExtractPerSentence(doc, ms, S().pack.rules, S().lexicons).empty());
}

TEST_CASE("rule pack and lexicon errors") {
  CHECK_THROWS_AS(relex::LoadRulePack("id = x\nproperty = pv:nope\nrole = pair\npath = S:NC -obj-> O:NC\n", Reg()), UnknownProperty);
  CHECK_THROWS_AS(relex::LoadRulePack("id = x\nwhat is this\n", Reg()), ParseError);
  CHECK_THROWS_AS(relex::LoadRulePack("id = x\nproperty = pv:hasComponent\nflavour = sweet\n", Reg()),
                  ParseError);
  CHECK_THROWS_AS(relex::LoadLexicons("pv:hasComponent\tProduct\n", Reg()), ParseError);
  auto lex = relex::LoadLexicons("pv:contains\tProduct\tComponent\tnote|accord\n", Reg());
  REQUIRE(lex.size() == 1);
  CHECK(lex[0].property == terms::Pv("hasComponent"));
  CHECK(lex[0].lemmas == std::set<std::string>{"note", "accord"});
}

}  // TEST_SUITE
