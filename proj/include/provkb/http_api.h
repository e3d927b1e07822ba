#pragma once

// JSON views of the service types and the HTTP routes serving them.

#include <string>

#include <json.hpp>

#include "provkb/service.h"

namespace httplib {
class Server;
}

namespace provkb::service {

nlohmann::json TermJson(const Term& term, const PrefixTable& prefixes);
nlohmann::json TripleJson(const Triple& triple, const PrefixTable& prefixes);
nlohmann::json ToJson(const IngestResult& r);
nlohmann::json ToJson(const QueueEntry& e);
nlohmann::json ToJson(const PendingItem& item, const PrefixTable& prefixes);
nlohmann::json ToJson(const EntityIndex& index);
nlohmann::json ToJson(const NeighborhoodGraph& g, const PrefixTable& prefixes);
nlohmann::json ToJson(const QueryResult& r, const PrefixTable& prefixes);
nlohmann::json ToJson(const DocumentMentions& m);
nlohmann::json ColorMap();

// Reads the decision body: {"decision": ..., "subject"?, "object"?,
// "type"?, "label"?, "role"?, "documentId"?}.
DecisionRequest DecisionFromJson(const nlohmann::json& body, const Service& service);

// Error body {"error": kind, "message": ...} and its HTTP status.
std::pair<int, nlohmann::json> ErrorResponse(const std::exception& e);

// GET /health, POST /documents, GET /queue, GET /documents/{id}/pending,
// GET /documents/{id}/processed, GET /documents/{id}/mentions,
// POST /triples/{key}/decision, GET /entities, GET /graph/{iri},
// POST /query, GET /colors.
void RegisterRoutes(httplib::Server& server, Service& service);

// Blocks until the server stops.
bool Serve(Service& service, const std::string& host, int port);

}  // namespace provkb::service
