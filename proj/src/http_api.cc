#include "provkb/http_api.h"

#include <httplib.h>

#include "provkb/errors.h"
#include "provkb/turtle.h"

namespace provkb::service {

using nlohmann::json;

namespace {

json StatusJson(const store::Status s) { return std::string(store::StatusName(s)); }

json DateJson(const std::optional<store::CalendarDate>& d) {
  return d ? json(d->ToString()) : json(nullptr);
}

std::string OptString(const json& body, const char* key) {
  if (!body.contains(key) || body.at(key).is_null()) return "";
  return body.at(key).get<std::string>();
}

}  // namespace

json TermJson(const Term& term, const PrefixTable& prefixes) {
  json j = {{"type", term.is_iri() ? "iri" : "literal"},
            {"value", term.value()},
            {"display", store::RenderTerm(term, prefixes)}};
  if (term.is_literal()) {
    if (!term.lang().empty()) j["lang"] = term.lang();
    if (!term.datatype().empty()) j["datatype"] = term.datatype().str();
  }
  return j;
}

json TripleJson(const Triple& t, const PrefixTable& prefixes) {
  return {{"subject", TermJson(t.subject, prefixes)},
          {"predicate", TermJson(t.predicate, prefixes)},
          {"object", TermJson(t.object, prefixes)},
          {"ntriples", t.ToNTriples()}};
}

json ToJson(const IngestResult& r) {
  return {{"documentId", r.document_id},
          {"mentionCount", r.mention_count},
          {"candidateCount", r.candidate_count},
          {"newPending", r.new_pending},
          {"reducedPipeline", r.reduced_pipeline}};
}

json ToJson(const QueueEntry& e) {
  return {{"documentId", e.document_id},
          {"excerpt", e.excerpt},
          {"decided", e.decided},
          {"total", e.total},
          {"progress", std::to_string(e.decided) + " / " + std::to_string(e.total)},
          {"sourceUrl", e.source_url},
          {"date", DateJson(e.date)}};
}

json ToJson(const PendingItem& item, const PrefixTable& prefixes) {
  return {{"tripleKey", item.triple_key},
          {"triple", TripleJson(item.triple, prefixes)},
          {"sentence", item.sentence},
          {"prompt", item.prompt},
          {"options", item.options},
          {"extractor", item.extractor.ToString()},
          {"confidence", item.confidence},
          {"status", StatusJson(item.status)}};
}

json ToJson(const EntityIndex& index) {
  json buckets = json::object();
  for (const auto& [b, items] : index.buckets) {
    json arr = json::array();
    for (const IndexedEntity& e : items) arr.push_back({{"label", e.label}, {"iri", e.iri.str()}});
    buckets[b] = arr;
  }
  return {{"type", std::string(EntityTypeName(index.type))},
          {"label", std::string(EntityUiLabel(index.type))},
          {"buckets", buckets}};
}

json ToJson(const NeighborhoodGraph& g, const PrefixTable& prefixes) {
  json nodes = json::array();
  for (const GraphNode& n : g.nodes) {
    json j = {{"iri", n.iri.str()},
              {"display", prefixes.Render(n.iri)},
              {"label", n.label},
              {"origin", n.origin}};
    if (n.image) j["image"] = *n.image;
    nodes.push_back(j);
  }
  json edges = json::array();
  for (const Triple& t : g.edges) {
    edges.push_back({{"s", t.subject.value()},
                     {"p", t.predicate.value()},
                     {"o", t.object.value()},
                     {"label", prefixes.Render(t.predicate.iri())}});
  }
  return {{"center", g.center.str()},
          {"depth", g.depth},
          {"nodes", nodes},
          {"edges", edges},
          {"warnings", g.warnings}};
}

json ToJson(const QueryResult& r, const PrefixTable& prefixes) {
  json rows = json::array();
  for (const auto& row : r.table.rows) {
    json b = json::object();
    for (size_t i = 0; i < row.size(); ++i) b[r.table.variables[i]] = TermJson(row[i], prefixes);
    rows.push_back(b);
  }
  return {{"variables", r.table.variables}, {"rows", rows}, {"rewrites", r.rewrites}};
}

json ColorMap() {
  json j = json::object();
  for (EntityType t : kAllEntityTypes) {
    j[std::string(EntityTypeName(t))] = {{"label", std::string(EntityUiLabel(t))},
                                         {"color", std::string(EntityColor(t))}};
  }
  return j;
}

json ToJson(const DocumentMentions& m) {
  json sentences = json::array();
  for (const auto& [id, t] : m.sentences) sentences.push_back({{"id", id}, {"text", t}});
  json mentions = json::array();
  for (const ner::EntityMention& e : m.mentions) {
    json j = {{"sentenceId", e.sentence_id},
              {"start", e.span.start},
              {"end", e.span.end},
              {"surface", e.surface},
              {"type", std::string(EntityTypeName(e.type))},
              {"label", std::string(EntityUiLabel(e.type))},
              {"color", std::string(EntityColor(e.type))}};
    j["iri"] = e.linked_iri ? json(e.linked_iri->str()) : json(nullptr);
    mentions.push_back(j);
  }
  json panel = json::array();
  for (EntityType t : kAllEntityTypes) {
    json items = json::array();
    for (const ner::SummaryItem& it : m.summary.at(t)) {
      items.push_back({{"surface", it.surface}, {"count", it.count}});
    }
    panel.push_back({{"type", std::string(EntityTypeName(t))},
                     {"label", std::string(EntityUiLabel(t))},
                     {"color", std::string(EntityColor(t))},
                     {"items", items}});
  }
  return {{"documentId", m.document_id},
          {"sourceUrl", m.source_url},
          {"date", DateJson(m.date)},
          {"sentences", sentences},
          {"mentions", mentions},
          {"panel", panel},
          {"colors", ColorMap()}};
}

DecisionRequest DecisionFromJson(const json& body, const Service& service) {
  if (!body.is_object() || !body.contains("decision")) {
    throw Error("decision body needs a \"decision\" field");
  }
  DecisionRequest r;
  r.kind = DecisionRequest::ParseKind(body.at("decision").get<std::string>());
  if (std::string s = OptString(body, "subject"); !s.empty()) r.subject = service.ResolveIri(s);
  if (std::string s = OptString(body, "object"); !s.empty()) r.object = service.ResolveIri(s);
  if (std::string s = OptString(body, "iri"); !s.empty() && !r.subject) {
    r.subject = service.ResolveIri(s);
  }
  if (std::string s = OptString(body, "type"); !s.empty()) r.type = EntityTypeOrThrow(s);
  if (std::string s = OptString(body, "label"); !s.empty()) r.label = s;
  if (std::string s = OptString(body, "role"); !s.empty()) r.role = s;
  if (std::string s = OptString(body, "documentId"); !s.empty()) r.document_id = s;
  return r;
}

std::pair<int, json> ErrorResponse(const std::exception& e) {
  json j = {{"message", e.what()}};
  int status = 400;
  if (auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    j["error"] = "SyntaxError";
    j["line"] = s->line();
    j["column"] = s->column();
  } else if (dynamic_cast<const UnsupportedFeature*>(&e)) {
    j["error"] = "UnsupportedFeature";
  } else if (dynamic_cast<const UnknownPrefix*>(&e)) {
    j["error"] = "UnknownPrefix";
  } else if (dynamic_cast<const NotFound*>(&e)) {
    j["error"] = "NotFound";
    status = 404;
  } else if (dynamic_cast<const AlreadyDecided*>(&e)) {
    j["error"] = "AlreadyDecided";
    status = 409;
  } else if (dynamic_cast<const UnparseablePayload*>(&e)) {
    j["error"] = "UnparseablePayload";
    status = 422;
  } else if (dynamic_cast<const UnknownType*>(&e)) {
    j["error"] = "UnknownType";
  } else if (dynamic_cast<const WeightsInvalid*>(&e)) {
    j["error"] = "WeightsInvalid";
  } else if (dynamic_cast<const json::exception*>(&e)) {
    j["error"] = "BadRequest";
  } else if (dynamic_cast<const Error*>(&e)) {
    j["error"] = "BadRequest";
  } else {
    j["error"] = "Internal";
    status = 500;
  }
  return {status, j};
}

namespace {

void Reply(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

template <typename F>
httplib::Server::Handler Guard(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const std::exception& e) {
      auto [status, body] = ErrorResponse(e);
      Reply(res, body, status);
    }
  };
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

void RegisterRoutes(httplib::Server& server, Service& svc) {
  const PrefixTable& prefixes = svc.registry().prefixes();

  server.Get("/health", Guard([](const httplib::Request&, httplib::Response& res) {
    Reply(res, {{"status", "ok"}});
  }));

  server.Get("/colors", Guard([](const httplib::Request&, httplib::Response& res) {
    Reply(res, ColorMap());
  }));

  server.Post("/documents", Guard([&svc](const httplib::Request& req, httplib::Response& res) {
    json body = ParseBody(req);
    std::string payload = OptString(body, "payload");
    PayloadKind kind = ParsePayloadKind(body.value("kind", "raw"));
    std::optional<store::CalendarDate> date;
    if (std::string d = OptString(body, "date"); !d.empty()) {
      try {
        date = store::CalendarDate::Parse(d);
      } catch (const Error& e) {
        throw UnparseablePayload(e.what());
      }
    }
    IngestResult r = svc.Ingest(payload, kind, OptString(body, "sourceUrl"), date);
    Reply(res, ToJson(r), r.new_pending > 0 ? 201 : 200);
  }));

  server.Get("/queue", Guard([&svc](const httplib::Request&, httplib::Response& res) {
    json arr = json::array();
    for (const QueueEntry& e : svc.PendingByArticle()) arr.push_back(ToJson(e));
    Reply(res, arr);
  }));

  server.Get(R"(/documents/([^/]+)/pending)",
             Guard([&svc, &prefixes](const httplib::Request& req, httplib::Response& res) {
               json arr = json::array();
               for (const PendingItem& it : svc.PendingTriples(req.matches[1])) {
                 arr.push_back(ToJson(it, prefixes));
               }
               Reply(res, arr);
             }));

  server.Get(R"(/documents/([^/]+)/processed)",
             Guard([&svc, &prefixes](const httplib::Request& req, httplib::Response& res) {
               json arr = json::array();
               for (const PendingItem& it : svc.ProcessedTriples(req.matches[1])) {
                 arr.push_back(ToJson(it, prefixes));
               }
               Reply(res, arr);
             }));

  server.Get(R"(/documents/([^/]+)/mentions)",
             Guard([&svc](const httplib::Request& req, httplib::Response& res) {
               Reply(res, ToJson(svc.Mentions(req.matches[1])));
             }));

  server.Post(R"(/triples/([^/]+)/decision)",
              Guard([&svc](const httplib::Request& req, httplib::Response& res) {
                DecisionRequest d = DecisionFromJson(ParseBody(req), svc);
                Reply(res, ToJson(svc.Decide(req.matches[1], d)));
              }));

  server.Get("/entities", Guard([&svc](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("type")) throw UnknownType("missing type parameter");
    std::optional<std::string> initial;
    if (req.has_param("initial") && !req.get_param_value("initial").empty()) {
      initial = req.get_param_value("initial");
    }
    Reply(res, ToJson(svc.Entities(req.get_param_value("type"), initial)));
  }));

  server.Get(R"(/graph/(.+))",
             Guard([&svc, &prefixes](const httplib::Request& req, httplib::Response& res) {
               int depth = 1;
               if (req.has_param("depth")) {
                 try {
                   depth = std::stoi(req.get_param_value("depth"));
                 } catch (const std::exception&) {
                   throw Error("depth must be an integer");
                 }
               }
               TermId iri = svc.ResolveIri(std::string(req.matches[1]));
               Reply(res, ToJson(svc.Neighborhood(iri, depth), prefixes));
             }));

  server.Post("/query",
              Guard([&svc, &prefixes](const httplib::Request& req, httplib::Response& res) {
                std::string text = req.body;
                size_t first = text.find_first_not_of(" \t\r\n");
                if (first != std::string::npos && text[first] == '{') {
                  text = json::parse(req.body).at("query").get<std::string>();
                }
                Reply(res, ToJson(svc.Query(text), prefixes));
              }));
}

bool Serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  RegisterRoutes(server, service);
  return server.listen(host, port);
}

}  // namespace provkb::service
