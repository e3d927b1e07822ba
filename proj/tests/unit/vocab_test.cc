#include <doctest.h>

#include <set>

#include "oracles/edit_distance.h"
#include "provkb/entity_type.h"
#include "provkb/errors.h"
#include "provkb/query.h"
#include "provkb/paths.h"
#include "provkb/rdf.h"
#include "provkb/text.h"
#include "provkb/vocab.h"

using namespace provkb;

namespace {

const vocab::VocabRegistry& Reg() { return vocab::VocabRegistry::Default(); }

}  // namespace

TEST_SUITE("vocab") {

TEST_CASE("resolve uses the hash-terminated provoc namespace") {
  PrefixTable p = PrefixTable::Defaults();
  CHECK(vocab::Resolve("pv:Package", p).str() == "http://ns.inria.fr/provoc#Package");
  CHECK(vocab::Resolve("ex:Elsève", p).str() == "http://example.org#Elsève");
  CHECK_THROWS_AS(vocab::Resolve("zz:X", p), UnknownPrefix);
  CHECK_THROWS_AS(vocab::Resolve("nocolon", p), Error);
}

TEST_CASE("normalizeProperty maps aliases to canonical names") {
  CHECK(Reg().NormalizeProperty(terms::Pv("belongsToRange")).id ==
        terms::Pv("belongsToProductOrServiceRange"));
  CHECK(Reg().NormalizeProperty(terms::Pv("contains")).id == terms::Pv("hasComponent"));
  auto same = Reg().NormalizeProperty(terms::Pv("hasRepresentative"));
  CHECK(same.known);
  CHECK(same.id == terms::Pv("hasRepresentative"));
  auto unknown = Reg().NormalizeProperty(terms::Ex("madeUp"));
  CHECK_FALSE(unknown.known);
  CHECK(unknown.id == terms::Ex("madeUp"));
}

TEST_CASE("normalizeProperty is idempotent over every registered name and alias") {
  for (const auto& [id, def] : Reg().properties()) {
    std::set<TermId> names = def.aliases;
    names.insert(id);
    for (const TermId& n : names) {
      TermId once = Reg().NormalizeProperty(n).id;
      CHECK(once == id);
      CHECK(Reg().NormalizeProperty(once).id == once);
    }
  }
}

TEST_CASE("every property in the example queries normalizes to a registered property") {
  for (const char* f : {"ex1.rq", "ex2.rq", "ex2bis.rq", "ex3.rq", "ex4.rq", "ex5.rq", "ex6.rq", "ex7.rq"}) {
    query::SelectQuery q = query::ParseQuery(ReadFile(DataPath(std::string("queries/") + f)));
    std::vector<query::TriplePattern> all = q.Positive();
    for (const auto& b : q.NotExists()) all.insert(all.end(), b.patterns.begin(), b.patterns.end());
    for (const auto& tp : all) {
      if (const Term* t = std::get_if<Term>(&tp.p)) {
        INFO(f << " " << t->value());
        CHECK(Reg().FindProperty(t->iri()) != nullptr);
      }
    }
  }
}

TEST_CASE("registry covers the symbols used by the toolkit") {
  for (const char* c : {"pv:ProductOrServiceRange", "pv:Component", "pv:Division", "pv:Package",
                        "pv:Provider", "pv:Ambassador", "gr:ProductOrService", "gr:Brand",
                        "gr:BusinessEntity", "gr:ProductOrServiceModel", "foaf:Person"}) {
    CHECK_MESSAGE(Reg().IsClass(Reg().Resolve(c)), c);
  }
  for (const char* p : {"pv:belongsToProductOrServiceRange", "pv:belongsToBrand", "pv:belongsToPackage",
                        "pv:hasProvider", "pv:hasComponent", "pv:healthImpact", "pv:hasTarget",
                        "pv:hasRepresentative", "pv:hasFragranceCreator", "gr:isVariantOf",
                        "gr:isSimilarTo"}) {
    CHECK_MESSAGE(Reg().FindProperty(Reg().Resolve(p)) != nullptr, p);
  }
  for (EntityType t : kAllEntityTypes) CHECK(Reg().IsClass(EntityClass(t)));
}

TEST_CASE("typeClosure") {
  CHECK(Reg().TypeClosure({terms::Pv("Ambassador")}) ==
        std::set<TermId>{terms::Pv("Ambassador"), Reg().Resolve("foaf:Person")});
  CHECK(Reg().TypeClosure({}).empty());
  // Division -> BusinessEntity by hand; BusinessEntity has no superclass.
  CHECK(Reg().TypeClosure({terms::Pv("Division"), terms::Gr("BusinessEntity")}) ==
        std::set<TermId>{terms::Pv("Division"), terms::Gr("BusinessEntity")});
  CHECK(Reg().TypeClosure({terms::Pv("Package")}) ==
        std::set<TermId>{terms::Pv("Package"), terms::Gr("ProductOrService")});
}

TEST_CASE("typeClosure is idempotent") {
  for (const auto& [id, def] : Reg().classes()) {
    auto once = Reg().TypeClosure({id});
    CHECK(Reg().TypeClosure(once) == once);
  }
}

TEST_CASE("validateTriple") {
  vocab::TypeMap types;
  types[terms::Ex("Elsève")] = {terms::Pv("ProductOrServiceRange")};
  types[terms::Ex("Loreal_Paris")] = {terms::Gr("Brand")};
  types[terms::Ex("SomePerson")] = {Reg().Resolve("foaf:Person")};
  Term brand = Term::Iri(terms::Ex("Loreal_Paris"));
  Term btb = Term::Iri(terms::Pv("belongsToBrand"));
  CHECK(Reg().ValidateTriple(Triple::Make(Term::Iri(terms::Ex("Elsève")), btb, brand), types).empty());

  auto v = Reg().ValidateTriple(Triple::Make(Term::Iri(terms::Ex("SomePerson")), btb, brand), types);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == vocab::ViolationKind::kDomain);
  CHECK(v[0].severity == vocab::Severity::kError);

  auto w = Reg().ValidateTriple(Triple::Make(Term::Iri(terms::Ex("X")),
                                             Term::Iri(terms::Pv("hasRepresentative")),
                                             Term::Iri(terms::Ex("Y"))),
                                {});
  REQUIRE(w.size() == 2);
  CHECK(w[0].severity == vocab::Severity::kWarning);
  CHECK(w[1].severity == vocab::Severity::kWarning);
}

TEST_CASE("subclass of a domain class satisfies the domain") {
  vocab::TypeMap types;
  types[terms::Ex("Box")] = {terms::Pv("Package")};
  types[terms::Ex("Carrefour")] = {terms::Pv("Provider")};
  auto v = Reg().ValidateTriple(Triple::Make(Term::Iri(terms::Ex("Box")),
                                             Term::Iri(terms::Pv("hasProvider")),
                                             Term::Iri(terms::Ex("Carrefour"))),
                                types);
  CHECK(v.empty());
}

TEST_CASE("malformed vocabularies are rejected") {
  const char* head = "@prefix pv: <http://ns.inria.fr/provoc#> .\n"
                     "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
                     "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                     "@prefix kb: <http://provkb.org/ns#> .\n";
  CHECK_THROWS_AS(vocab::VocabRegistry::FromTurtle(std::string(head) +
                                                   "pv:A a owl:Class ; rdfs:subClassOf pv:B .\n"
                                                   "pv:B a owl:Class ; rdfs:subClassOf pv:A .\n"),
                  VocabError);
  CHECK_THROWS_AS(vocab::VocabRegistry::FromTurtle(std::string(head) +
                                                   "pv:A a owl:Class ; rdfs:subClassOf pv:Missing .\n"),
                  VocabError);
  CHECK_THROWS_AS(vocab::VocabRegistry::FromTurtle(
                      std::string(head) + "pv:A a owl:Class .\n"
                                          "pv:p a owl:ObjectProperty ; rdfs:range pv:A ; kb:alias pv:q .\n"
                                          "pv:r a owl:ObjectProperty ; rdfs:range pv:A ; kb:alias pv:q .\n"),
                  VocabError);
}

}  // TEST_SUITE

TEST_SUITE("text") {

TEST_CASE("lowercasing keeps accents") {
  CHECK(text::Lower("Élsève LANCÔME") == "élsève lancôme");
  CHECK(text::NormalizeSurface("  Eau   Mega\t") == "eau mega");
  CHECK(text::InitialBucket("Écla") == 'E');
  CHECK(text::InitialBucket("4711") == '#');
}

TEST_CASE("decode and encode round-trip") {
  std::string s = "n°5 · Idôle € 𝄞";
  CHECK(text::Encode(text::Decode(s)) == s);
  CHECK(text::Decode("\xff").size() == 1);
  CHECK(text::TruncateCodePoints("élégant", 3) == "élé");
}

TEST_CASE("elision and joining") {
  CHECK(text::SplitElision("l'Oréal") == std::vector<std::string>{"l'", "Oréal"});
  CHECK(text::SplitElision("Chanel") == std::vector<std::string>{"Chanel"});
  CHECK(text::JoinForms({"J'", "adore", "de", "Dior", "."}) == "J'adore de Dior.");
  CHECK(text::Tokenize("Eau Mega,", true) == std::vector<std::string>{"Eau", "Mega", ","});
}

TEST_CASE("edit ratio oracle agrees with itself on known pairs") {
  CHECK(oracle::Levenshtein("kitten", "sitting") == 3);
  CHECK(oracle::Levenshtein("élan", "elan") == 1);
  CHECK(oracle::Levenshtein("", "abc") == 3);
}

}  // TEST_SUITE

TEST_SUITE("rdf") {

TEST_CASE("terms and prefixes") {
  CHECK_THROWS_AS(TermId(""), Error);
  CHECK_THROWS_AS(TermId("no-scheme"), Error);
  PrefixTable p = PrefixTable::Defaults();
  CHECK(p.Render(terms::Ex("Eau_Mega")) == "ex:Eau_Mega");
  CHECK(p.Render(TermId("http://dbpedia.org/resource/Y.M.C.A._(song)")) ==
        "<http://dbpedia.org/resource/Y.M.C.A._(song)>");
  CHECK(p.Render(TermId("http://nowhere.test/x")) == "<http://nowhere.test/x>");
  CHECK(MintIri("La petite robe noire") == terms::Ex("La_petite_robe_noire"));
  CHECK(DisplayName(terms::Ex("La_Vie_est_Belle")) == "La Vie est Belle");
  CHECK_THROWS(Triple::Make(Term::Literal("x"), Term::Iri(terms::RdfType()), Term::Literal("y")));
}

TEST_CASE("entity types") {
  CHECK(EntityClass(EntityType::kBrand) == terms::Gr("Brand"));
  CHECK(EntityClass(EntityType::kProduct) == terms::Gr("ProductOrService"));
  CHECK(ParseEntityType("Marque") == EntityType::kBrand);
  CHECK(ParseEntityType("produit") == EntityType::kProduct);
  CHECK_THROWS_AS(EntityTypeOrThrow("Vehicle"), UnknownType);
  CHECK(EntityColor(EntityType::kGroup) == "brown");
  CHECK(EntityColor(EntityType::kDivision) == "blue");
  CHECK(EntityColor(EntityType::kBrand) == "red");
  CHECK(EntityColor(EntityType::kRange) == "purple");
  CHECK(EntityColor(EntityType::kProduct) == "green");
}

}  // TEST_SUITE
