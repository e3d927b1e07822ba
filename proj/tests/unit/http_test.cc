#include <doctest.h>

#include <httplib.h>

#include <json.hpp>
#include <memory>
#include <thread>

#include "provkb/http_api.h"
#include "provkb/paths.h"
#include "provkb/service.h"

using namespace provkb;
using nlohmann::json;

namespace {

class TestServer {
 public:
  TestServer() : svc_(service::ServiceOptions::Defaults()) {
    service::RegisterRoutes(server_, svc_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Client& client() { return *client_; }

  json PostJson(const std::string& path, const json& body, int expect) {
    auto res = client_->Post(path, body.dump(), "application/json");
    REQUIRE(res);
    CHECK_MESSAGE(res->status == expect, path << " -> " << res->status << " " << res->body);
    return json::parse(res->body);
  }
  json Get(const std::string& path, int expect = 200) {
    auto res = client_->Get(path);
    REQUIRE(res);
    CHECK_MESSAGE(res->status == expect, path << " -> " << res->status << " " << res->body);
    return json::parse(res->body);
  }

 private:
  service::Service svc_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

std::string Fixture(const char* name) { return ReadFile(DataPath(std::string("fixtures/") + name)); }

}  // namespace

TEST_SUITE("http") {

TEST_CASE("health and colors") {
  TestServer s;
  CHECK(s.Get("/health")["status"] == "ok");
  json colors = s.Get("/colors");
  for (const char* t : {"Group", "Division", "Brand", "Range", "Product", "Person", "Component"}) {
    CHECK_MESSAGE(colors.contains(t), t);
  }
}

TEST_CASE("document ingestion, queue and decisions") {
  TestServer s;
  CHECK(s.Get("/queue") == json::array());

  json body = {{"payload", Fixture("guerlain.html")}, {"kind", "html"}, {"sourceUrl", "http://blog.local/g"},
               {"date", "2016-02-03"}};
  json r = s.PostJson("/documents", body, 201);
  std::string doc = r["documentId"];
  CHECK(doc.rfind("doc-", 0) == 0);
  CHECK(r["newPending"] == 2);
  json again = s.PostJson("/documents", body, 200);
  CHECK(again["documentId"] == doc);
  CHECK(again["newPending"] == 0);

  json queue = s.Get("/queue");
  REQUIRE(queue.size() == 1);
  CHECK(queue[0]["documentId"] == doc);
  CHECK(queue[0]["progress"] == "0 / 2");
  CHECK(queue[0]["sourceUrl"] == "http://blog.local/g");
  CHECK(queue[0]["date"] == "2016-02-03");

  json pending = s.Get("/documents/" + doc + "/pending");
  REQUIRE(pending.size() == 2);
  std::string key;
  std::string dress_key;
  for (const json& item : pending) {
    CHECK(item["options"].size() == 4);
    CHECK(item["status"] == "pending");
    CHECK(item.contains("sentence"));
    CHECK(item.contains("extractor"));
    if (item["prompt"] == "Guerlain est de type Marque.") key = item["tripleKey"];
    if (item["prompt"] == "Est-ce que La petite robe noire est: Produit ?") dress_key = item["tripleKey"];
  }
  REQUIRE_FALSE(key.empty());
  REQUIRE_FALSE(dress_key.empty());

  json entry = s.PostJson("/triples/" + key + "/decision", {{"decision", "accept"}}, 200);
  CHECK(entry["progress"] == "1 / 2");
  json dup = s.PostJson("/triples/" + key + "/decision", {{"decision", "accept"}}, 409);
  CHECK(dup["error"] == "AlreadyDecided");
  json missing = s.PostJson("/triples/nope/decision", {{"decision", "reject"}}, 404);
  CHECK(missing["error"] == "NotFound");
  json bad_type = s.PostJson("/triples/" + dress_key + "/decision",
                             {{"decision", "create-new-entity"}, {"type", "Vehicle"}}, 400);
  CHECK(bad_type["error"] == "UnknownType");
  s.PostJson("/triples/" + dress_key + "/decision", {{"decision", "create-new-entity"}, {"type", "Produit"}}, 200);

  json processed = s.Get("/documents/" + doc + "/processed");
  CHECK(processed.size() == 2);
  CHECK(s.Get("/documents/" + doc + "/pending") == json::array());
  CHECK(s.Get("/queue")[0]["progress"] == "2 / 2");

  json mentions = s.Get("/documents/" + doc + "/mentions");
  CHECK(mentions["documentId"] == doc);
  CHECK_FALSE(mentions["mentions"].empty());
  CHECK(mentions.contains("panel"));
  CHECK(mentions.contains("colors"));

  CHECK(s.Get("/documents/doc-missing/pending", 404)["error"] == "NotFound");
  CHECK(s.Get("/documents/doc-missing/processed", 404)["error"] == "NotFound");
  CHECK(s.Get("/documents/doc-missing/mentions", 404)["error"] == "NotFound");

  json q = s.PostJson("/query", {{"query", "SELECT ?b WHERE { ?b a gr:Brand }"}}, 200);
  bool found = false;
  for (const json& row : q["rows"]) found = found || row.dump().find("Guerlain") != std::string::npos;
  CHECK(found);
}

TEST_CASE("ingestion errors") {
  TestServer s;
  CHECK(s.PostJson("/documents", {{"payload", ""}, {"kind", "raw"}}, 422)["error"] == "UnparseablePayload");
  CHECK(s.PostJson("/documents", {{"payload", "Chanel."}, {"date", "2016-13-45"}}, 422)["error"] ==
        "UnparseablePayload");
  auto res = s.client().Post("/documents", "{not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
}

TEST_CASE("entity index") {
  TestServer s;
  json idx = s.Get("/entities?type=Marque&initial=L");
  CHECK(idx["type"] == "Brand");
  json labels = json::array();
  for (const json& e : idx["buckets"]["L"]) labels.push_back(e["label"]);
  CHECK(labels.dump().find("Lanvin") != std::string::npos);
  json all = s.Get("/entities?type=Marque");
  CHECK(all["buckets"].size() > 1);
  CHECK(s.Get("/entities?type=Personne", 400)["error"] == "UnknownType");
  CHECK(s.Get("/entities", 400)["error"] == "UnknownType");
}

TEST_CASE("neighborhood graph") {
  TestServer s;
  json g = s.Get("/graph/ex:La_Vie_est_Belle?depth=1");
  CHECK(g["depth"] == 1);
  CHECK_FALSE(g["nodes"].empty());
  CHECK_FALSE(g["edges"].empty());
  for (const json& n : g["nodes"]) {
    CHECK(n.contains("iri"));
    CHECK(n.contains("origin"));
  }
  json clamped = s.Get("/graph/ex:La_Vie_est_Belle?depth=7");
  CHECK(clamped["depth"] == 2);
  CHECK(clamped["warnings"].size() == 1);
  CHECK(s.Get("/graph/ex:Nowhere", 404)["error"] == "NotFound");
}

TEST_CASE("query endpoint") {
  TestServer s;
  auto res = s.client().Post("/query", "SELECT ?b WHERE { ?b a gr:Brand }", "application/sparql-query");
  REQUIRE(res);
  CHECK(res->status == 200);
  json r = json::parse(res->body);
  CHECK(r["variables"] == json::array({"b"}));
  CHECK_FALSE(r["rows"].empty());
  CHECK(r.contains("rewrites"));
  json err = s.PostJson("/query", {{"query", "SELECT ?x WHERE { ?x"}}, 400);
  CHECK(err["error"] == "SyntaxError");
}

}  // TEST_SUITE
