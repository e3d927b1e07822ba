#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include <json.hpp>

#include "provkb/corpus.h"
#include "provkb/errors.h"
#include "provkb/paths.h"
#include "provkb/vocab.h"

using namespace provkb;

namespace {

std::string Conllu(const std::vector<std::pair<int, std::string>>& heads) {
  std::string out = "# sent_id = t-1\n";
  for (size_t i = 0; i < heads.size(); ++i) {
    out += std::to_string(i + 1) + "\tw" + std::to_string(i + 1) + "\tw\tX\tX\t_\t" +
           std::to_string(heads[i].first) + "\t" + heads[i].second + "\t_\t_\n";
  }
  return out + "\n";
}

// Independent check: exactly one root and no cycle, via union-find over
// the head edges.
bool IsTreeOracle(const std::vector<int>& heads) {
  int n = static_cast<int>(heads.size());
  std::vector<int> parent(static_cast<size_t>(n + 1));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]);
  };
  int roots = 0;
  for (int i = 1; i <= n; ++i) {
    int h = heads[static_cast<size_t>(i - 1)];
    if (h == 0) ++roots;
    if (h < 0 || h > n) return false;
    int a = find(i), b = find(h);
    if (a == b) return false;
    parent[static_cast<size_t>(a)] = b;
  }
  return roots == 1;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("the authored parse of the Eau Mega sentence") {
  auto doc = corpus::LoadConllu(ReadFile(DataPath("fixtures/eau_mega.conllu")));
  REQUIRE(doc.sentences.size() == 1);
  const corpus::Sentence& s = doc.sentences[0];
  CHECK(s.id == "eau-mega-1");
  CHECK(doc.id == "eau-mega");
  const corpus::Token& compose = s.at(3);
  CHECK(compose.form == "composé");
  bool has_par = false;
  for (int c : s.Children(3)) has_par = has_par || (s.at(c).form == "par" && s.at(c).deprel == "p_obj");
  CHECK(has_par);
  CHECK(s.SpanText(5, 6) == "Olivier Polge");
}

TEST_CASE("empty input and malformed trees") {
  CHECK(corpus::LoadConllu("").sentences.empty());
  CHECK_THROWS_AS(corpus::LoadConllu(Conllu({{1, "root"}})), NonTree);
  CHECK_THROWS_AS(corpus::LoadConllu(Conllu({{0, "root"}, {0, "root"}})), NonTree);
  CHECK_THROWS_AS(corpus::LoadConllu(Conllu({{0, "root"}, {3, "dep"}, {2, "dep"}})), NonTree);
  CHECK_THROWS_AS(corpus::LoadConllu("1\tonly\tthree\n\n"), ParseError);
}

TEST_CASE("multiword ranges and empty nodes are skipped") {
  std::string text =
      "# sent_id = mw\n"
      "1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tde\tde\tADP\tP\t_\t3\tdep\t_\t_\n"
      "2\tle\tle\tDET\tDET\t_\t3\tdet\t_\t_\n"
      "2.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "3\tparfum\tparfum\tNOUN\tNC\t_\t0\troot\t_\t_\n\n";
  auto doc = corpus::LoadConllu(text);
  REQUIRE(doc.sentences.size() == 1);
  CHECK(doc.sentences[0].size() == 3);
}

TEST_CASE("tree check agrees with a union-find oracle") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::pair<int, std::string>> heads;
    std::vector<int> raw;
    for (int k = 0; k < n; ++k) {
      int h = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
      heads.push_back({h, h == 0 ? "root" : "dep"});
      raw.push_back(h);
    }
    bool loaded = true;
    try {
      corpus::LoadConllu(Conllu(heads));
    } catch (const NonTree&) {
      loaded = false;
    }
    CHECK(loaded == IsTreeOracle(raw));
  }
}

TEST_CASE("stripMarkup") {
  CHECK(corpus::StripMarkup("<p>Chanel n°5</p>") == "Chanel n°5\n");
  CHECK(corpus::StripMarkup("<script>x=1</script><p>a</p>") == "a\n");
  CHECK(corpus::StripMarkup("<b>Eau <i>Mega</i></b>") == "Eau Mega");
  CHECK(corpus::StripMarkup("a<!-- hidden -->b") == "ab");
  CHECK(corpus::StripMarkup("A &amp; B &eacute;t&eacute;") .find("A &amp; B") == 0);
  std::string page = corpus::StripMarkup(ReadFile(DataPath("fixtures/guerlain.html")));
  CHECK(page.find("Guerlain") != std::string::npos);
  CHECK(page.find("tracker") == std::string::npos);
  CHECK(page.find("font-family") == std::string::npos);
}

TEST_CASE("stripMarkup is idempotent on its output") {
  for (const std::string& html :
       {ReadFile(DataPath("fixtures/guerlain.html")), std::string("<div>x &lt;b&gt; y</div><p>z</p>"),
        std::string("plain text\nwith lines"), std::string("<ul><li>a</li><li>b &amp; c</li></ul>")}) {
    std::string once = corpus::StripMarkup(html);
    CHECK(corpus::StripMarkup(once) == once);
  }
}

TEST_CASE("raw text tokenization") {
  auto doc = corpus::TokenizeRawText(ReadFile(DataPath("fixtures/article.txt")), "art");
  CHECK(doc.sentences.size() == 11);
  for (const auto& s : doc.sentences) CHECK_FALSE(s.parsed);
  auto dots = corpus::TokenizeRawText("Comme beaucoup... moi aussi. Fin.");
  REQUIRE(dots.sentences.size() == 3);
  CHECK(dots.sentences[0].text == "Comme beaucoup...");
  CHECK(dots.sentences[1].text == "moi aussi.");
  auto elided = corpus::TokenizeRawText("J'adore l'Oréal.");
  REQUIRE(elided.sentences.size() == 1);
  CHECK(elided.sentences[0].tokens[0].form == "J'");
  CHECK(elided.sentences[0].tokens[1].form == "adore");
}

TEST_CASE("mini corpus gold matches its manifest") {
  const auto& reg = vocab::VocabRegistry::Default();
  auto doc = corpus::LoadConllu(ReadFile(DataPath("corpus/mini.conllu")), "mini");
  auto manifest = nlohmann::json::parse(ReadFile(DataPath("corpus/mini.manifest.json")));
  CHECK(doc.sentences.size() == manifest["sentences"].get<size_t>());
  auto gold = corpus::LoadGold(ReadFile(DataPath("corpus/mini.gold.tsv")), reg, &doc);
  auto counts = gold.CountsByProperty();
  for (const auto& [qname, n] : manifest["gold"].items()) {
    CHECK(counts[reg.Resolve(qname)] == n.get<int>());
  }
}

TEST_CASE("gold loading and round-trip") {
  const auto& reg = vocab::VocabRegistry::Default();
  CHECK(corpus::LoadGold("", reg) == corpus::GoldAnnotation{});
  auto doc = corpus::LoadConllu(ReadFile(DataPath("fixtures/eau_mega.conllu")));
  std::string text =
      "# comment\n"
      "ENT\teau-mega-1\t1-2\tProduct\n"
      "ENT\teau-mega-1\t5-6\tPerson\n"
      "REL\teau-mega-1\tpv:hasFragranceCreator\t1-2\t5-6\n"
      "REL\teau-mega-1\tpv:contains\t1-2\t11\n";
  auto gold = corpus::LoadGold(text, reg, &doc);
  CHECK(gold.entities.size() == 2);
  REQUIRE(gold.relations.size() == 2);
  CHECK(gold.relations[1].property == terms::Pv("hasComponent"));
  CHECK(corpus::LoadGold(corpus::SerializeGold(gold, PrefixTable::Defaults()), reg, &doc) == gold);

  auto mini = corpus::LoadGold(ReadFile(DataPath("corpus/mini.gold.tsv")), reg);
  CHECK(corpus::LoadGold(corpus::SerializeGold(mini, PrefixTable::Defaults()), reg) == mini);

  CHECK_THROWS_AS(corpus::LoadGold("REL\teau-mega-1\tpv:nope\t1\t2\n", reg), UnknownProperty);
  CHECK_THROWS_AS(corpus::LoadGold("REL\teau-mega-1\tpv:hasComponent\t1\t40\n", reg, &doc),
                  SpanOutOfBounds);
  CHECK_THROWS_AS(corpus::LoadGold("REL\tonly-two\n", reg), ParseError);
}

TEST_CASE("spans") {
  CHECK(corpus::Span::Parse("3-4") == corpus::Span{3, 4});
  CHECK(corpus::Span::Parse("7") == corpus::Span{7, 7});
  CHECK_FALSE(corpus::Span::Parse("4-3"));
  CHECK(corpus::Span{3, 4}.ToString() == "3-4");
  CHECK(corpus::Span{1, 3}.Overlaps({3, 5}));
  CHECK_FALSE(corpus::Span{1, 2}.Overlaps({3, 5}));
}

}  // TEST_SUITE
