#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles/edit_distance.h"
#include "provkb/corpus.h"
#include "provkb/errors.h"
#include "provkb/linker.h"
#include "provkb/paths.h"

using namespace provkb;

namespace {

const TermId kYmca("http://dbpedia.org/resource/YMCA");
const TermId kSong("http://dbpedia.org/resource/Y.M.C.A._(song)");
const TermId kMartti("http://dbpedia.org/resource/Martti_Ahtisaari");

linker::Snapshot YmcaSnapshot() {
  return linker::Snapshot::FromTurtle(ReadFile(DataPath("linker/ymca.ttl")));
}

struct Fig2Doc {
  corpus::Document doc = corpus::TokenizeRawText(ReadFile(DataPath("linker/ymca.txt")), "ymca");
  std::vector<ner::EntityMention> mentions;

  Fig2Doc() {
    const corpus::Sentence& s = doc.sentences.at(0);
    for (const corpus::Token& t : s.tokens) {
      if (t.form == "Martti") mentions.push_back({s.id, {t.index, t.index + 1}, "Martti Ahtisaari", EntityType::kPerson, {}, ""});
      if (t.form == "YMCA") mentions.push_back({s.id, {t.index, t.index}, "YMCA", EntityType::kGroup, {}, ""});
    }
  }
};

std::vector<TermId> Iris(const std::vector<const linker::KbEntity*>& es) {
  std::vector<TermId> out;
  for (const auto* e : es) out.push_back(e->iri);
  return out;
}

}  // namespace

TEST_SUITE("linker") {

TEST_CASE("edit ratio agrees with the reference DP") {
  CHECK(linker::EditRatio("", "") == 1.0);
  CHECK(linker::EditRatio("YMCA", "ymca") == 1.0);
  CHECK(linker::EditRatio("Lancome  Hypnose Doll", "lancome hypnose doll") == 1.0);
  std::mt19937 rng(23);
  const char* alphabet[] = {"a", "b", "é", "è", "ô", "c", " ", "ü"};
  for (int i = 0; i < 500; ++i) {
    auto word = [&] {
      std::string s;
      int n = static_cast<int>(rng() % 9);
      for (int k = 0; k < n; ++k) {
        std::string c = alphabet[rng() % 8];
        if (c == " " && (s.empty() || s.back() == ' ')) c = "a";
        s += c;
      }
      if (!s.empty() && s.back() == ' ') s.back() = 'b';
      return s;
    };
    std::string a = word(), b = word();
    CHECK(linker::EditRatio(a, b) == doctest::Approx(oracle::EditRatio(a, b)));
  }
}

TEST_CASE("candidate generation") {
  auto snap = YmcaSnapshot();
  CHECK(Iris(linker::GenerateCandidates("YMCA", snap)) == std::vector<TermId>{kSong, kYmca});
  CHECK(linker::GenerateCandidates("Chanel", snap).empty());
  CHECK(Iris(linker::GenerateCandidates("Martti Ahtisaari", snap)) == std::vector<TermId>{kMartti});
}

TEST_CASE("scoring corner cases") {
  auto snap = YmcaSnapshot();
  auto one = linker::GenerateCandidates("Martti Ahtisaari", snap);
  for (const auto& w : {linker::Weights{}, linker::Weights{1, 0, 0}, linker::Weights{0, 0, 1}}) {
    auto r = linker::ScoreCandidates("Martti Ahtisaari", {}, one, {}, w, snap);
    REQUIRE(r.size() == 1);
    CHECK(r[0].entity == kMartti);
  }
  auto id = linker::ScoreCandidates("Martti Ahtisaari", {}, one, {}, {1, 0, 0}, snap);
  CHECK(id[0].string_sim == 1.0);
  CHECK(id[0].total == doctest::Approx(1.0));
  CHECK_THROWS_AS(linker::ScoreCandidates("x", {}, one, {}, {0.5, 0.5, 0.5}, snap), WeightsInvalid);
}

TEST_CASE("weights") {
  CHECK_NOTHROW(linker::Weights{}.Validate());
  CHECK_THROWS_AS((linker::Weights{-0.1, 0.6, 0.5}.Validate()), WeightsInvalid);
  CHECK_THROWS_AS(linker::Weights::Normalized(0, 0, 0), WeightsInvalid);
  auto n = linker::Weights::Normalized(4, 3, 3);
  CHECK(n.string == doctest::Approx(0.4));
  auto p = linker::Weights::Parse("0.5,0.25,0.25");
  CHECK(p.context == doctest::Approx(0.25));
  CHECK_THROWS_AS(linker::Weights::Parse("1,2"), WeightsInvalid);
}

TEST_CASE("YMCA disambiguation decisions") {
  Fig2Doc f;
  REQUIRE(f.mentions.size() == 2);
  auto snap = YmcaSnapshot();
  auto d = linker::LinkDocument(f.doc, f.mentions, snap);
  REQUIRE(d.size() == 2);
  CHECK(d[0].result == kMartti);
  CHECK(d[1].result == kYmca);
  auto strings = linker::LinkDocument(f.doc, f.mentions, snap, {1, 0, 0}, 0.0);
  CHECK(strings[1].result == kSong);
  for (const auto& dec : d) {
    for (const auto& s : dec.ranking) {
      for (double v : {s.string_sim, s.context_sim, s.connectivity, s.total}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("a fuzzy candidate below tau is NIL") {
  auto snap = linker::Snapshot::FromTurtle(
      "<http://dbpedia.org/resource/Hypnose_Doll> rdfs:label \"Lancome Hypnose Doll\" .");
  CHECK(oracle::EditRatio("lancom hipnose dol", "lancome hypnose doll") == doctest::Approx(0.85));
  auto doc = corpus::TokenizeRawText("Lancom Hipnose Dol est sorti.");
  std::vector<ner::EntityMention> ms = {
      {doc.sentences[0].id, {1, 3}, "Lancom Hipnose Dol", EntityType::kProduct, {}, ""}};
  auto strict = linker::LinkDocument(doc, ms, snap, {1, 0, 0}, 0.95);
  CHECK_FALSE(strict[0].result);
  REQUIRE(strict[0].ranking.size() == 1);
  CHECK(strict[0].ranking[0].total == doctest::Approx(0.85));
  auto loose = linker::LinkDocument(doc, ms, snap, {1, 0, 0}, 0.8);
  CHECK(loose[0].result == TermId("http://dbpedia.org/resource/Hypnose_Doll"));
}

TEST_CASE("a mention without candidates is NIL") {
  auto doc = corpus::TokenizeRawText("Chanel est à Paris.");
  std::vector<ner::EntityMention> ms = {{doc.sentences[0].id, {1, 1}, "Chanel", EntityType::kBrand, {}, ""}};
  auto d = linker::LinkDocument(doc, ms, YmcaSnapshot());
  CHECK_FALSE(d[0].result);
  CHECK(d[0].ranking.empty());
}

TEST_CASE("mention order does not change decisions") {
  Fig2Doc f;
  auto snap = YmcaSnapshot();
  auto forward = linker::LinkDocument(f.doc, f.mentions, snap);
  std::vector<ner::EntityMention> reversed(f.mentions.rbegin(), f.mentions.rend());
  auto backward = linker::LinkDocument(f.doc, reversed, snap);
  CHECK(forward[0].result == backward[1].result);
  CHECK(forward[1].result == backward[0].result);
}

TEST_CASE("without connectivity, mentions are decided independently") {
  Fig2Doc f;
  auto snap = YmcaSnapshot();
  linker::Weights w{0.6, 0.4, 0};
  auto joint = linker::LinkDocument(f.doc, f.mentions, snap, w);
  for (size_t i = 0; i < f.mentions.size(); ++i) {
    auto alone = linker::LinkDocument(f.doc, {f.mentions[i]}, snap, w);
    CHECK(alone[0].result == joint[i].result);
  }
}

TEST_CASE("context similarity") {
  auto snap = YmcaSnapshot();
  CHECK(linker::ContextSimilarity({}, {"diplomate"}, snap) == 0.0);
  CHECK(linker::ContextSimilarity({"diplomate"}, {"diplomate"}, snap) == doctest::Approx(1.0));
  CHECK(snap.Idf("jamais-vu") >= snap.Idf("diplomate"));
}

TEST_CASE("applying links keeps existing IRIs") {
  Fig2Doc f;
  f.mentions[0].linked_iri = TermId("http://example.org#Martti");
  auto d = linker::LinkDocument(f.doc, f.mentions, YmcaSnapshot());
  linker::ApplyLinks(&f.mentions, d);
  CHECK(f.mentions[0].linked_iri == TermId("http://example.org#Martti"));
  CHECK(f.mentions[1].linked_iri == kYmca);
}

}  // TEST_SUITE
