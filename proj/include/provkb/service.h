#pragma once

// The processing chain behind the HTTP API: ingestion into the temporary
// graph, the per-article validation queue, expert decisions, the entity
// index, neighborhood graphs and the query endpoint.
//
// Service is safe to share between threads: reads take a shared lock and
// every mutation goes through a single exclusive writer.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "provkb/corpus.h"
#include "provkb/linker.h"
#include "provkb/ner.h"
#include "provkb/query.h"
#include "provkb/relex.h"
#include "provkb/store.h"
#include "provkb/vocab.h"

namespace provkb::service {

struct ServiceOptions {
  std::filesystem::path vocab;
  std::filesystem::path kb;  // Turtle seed of the validated graph; may be empty
  std::vector<std::pair<std::string, std::filesystem::path>> snapshots;
  std::filesystem::path rules;
  std::filesystem::path lexicons;
  std::filesystem::path gazetteer;
  std::filesystem::path context_rules;
  // When set, mutations are appended here and an existing journal is
  // replayed at startup instead of importing the seed.
  std::optional<std::filesystem::path> journal;
  linker::Weights weights;
  double tau = linker::kDefaultTau;
  relex::ExtractOptions extract;

  // Everything from the shipped data directory, no journal.
  static ServiceOptions Defaults();
};

// The loaded, read-only pipeline resources.
struct Pipeline {
  std::shared_ptr<const vocab::VocabRegistry> registry;
  std::vector<ner::GazetteerEntry> gazetteer;
  std::vector<ner::ContextRule> context_rules;
  relex::RulePack rules;
  std::vector<relex::RelationLexicon> lexicons;
  linker::Snapshot snapshot;
  linker::Weights weights;
  double tau = linker::kDefaultTau;
  relex::ExtractOptions extract;
};

struct PipelineOutput {
  corpus::Document doc;
  std::vector<ner::EntityMention> mentions;
  std::vector<linker::LinkDecision> links;
  std::vector<relex::CandidateTriple> candidates;
  bool reduced = false;  // no parsed sentence: lexicon stage only
};

// recognize -> link -> extract on an already loaded document.
PipelineOutput RunPipeline(corpus::Document doc, const Pipeline& pipeline);

// Loads vocabulary, gazetteer, cue rules, rule pack and lexicons. The
// linker snapshot is left empty.
Pipeline LoadPipeline(const ServiceOptions& options);

enum class PayloadKind { kRaw, kHtml, kConllu };
PayloadKind ParsePayloadKind(std::string_view name);
std::string_view PayloadKindName(PayloadKind kind);

// Throws UnparseablePayload.
corpus::Document LoadPayload(std::string_view payload, PayloadKind kind,
                             const std::string& doc_id);

struct IngestResult {
  std::string document_id;
  int mention_count = 0;
  int candidate_count = 0;  // triples queued for this document
  int new_pending = 0;      // of which newly added by this call
  bool reduced_pipeline = false;
};

struct QueueEntry {
  std::string document_id;
  std::string excerpt;
  int decided = 0;
  int total = 0;
  std::string source_url;
  std::optional<store::CalendarDate> date;
};

struct PendingItem {
  std::string triple_key;
  Triple triple;
  std::string sentence;  // evidence sentence text
  std::string prompt;
  std::vector<std::string> options;
  store::Extractor extractor;
  double confidence = 0;
  store::Status status = store::Status::kPending;
};

struct DecisionRequest {
  enum class Kind { kAccept, kReject, kCreateNewEntity, kProposeOtherIri };
  Kind kind = Kind::kAccept;
  std::optional<TermId> subject;  // propose-other-IRI
  std::optional<TermId> object;   // propose-other-IRI
  std::optional<EntityType> type;     // create-new-entity
  std::optional<std::string> label;   // create-new-entity
  std::string role = "subject";       // create-new-entity: which endpoint
  std::optional<std::string> document_id;

  static Kind ParseKind(std::string_view name);
};

std::string_view DecisionKindName(DecisionRequest::Kind kind);

struct IndexedEntity {
  std::string label;
  TermId iri;
};

struct EntityIndex {
  EntityType type;
  std::map<std::string, std::vector<IndexedEntity>> buckets;  // "A".."Z", "#"
};

struct GraphNode {
  TermId iri;
  std::string label;
  std::string origin;  // "local", "dbpedia-snapshot", "netsent-snapshot"
  std::optional<std::string> image;
};

struct NeighborhoodGraph {
  TermId center;
  int depth = 1;
  std::vector<GraphNode> nodes;
  std::vector<Triple> edges;
  std::vector<std::string> warnings;
};

struct DocumentMentions {
  std::string document_id;
  std::string source_url;
  std::optional<store::CalendarDate> date;
  std::vector<std::pair<std::string, std::string>> sentences;  // (id, text)
  std::vector<ner::EntityMention> mentions;
  ner::Summary summary;
};

struct QueryResult {
  query::ResultTable table;
  std::vector<std::string> rewrites;
};

class Service {
 public:
  explicit Service(const ServiceOptions& options);
  // For tests: explicit resources and a prepared dataset.
  Service(Pipeline pipeline, store::Dataset dataset);

  IngestResult Ingest(std::string_view payload, PayloadKind kind,
                      const std::string& source_url,
                      const std::optional<store::CalendarDate>& date);

  // Documents with at least one queued triple, newest first.
  std::vector<QueueEntry> PendingByArticle() const;
  // Throws NotFound.
  std::vector<PendingItem> PendingTriples(const std::string& document_id) const;
  std::vector<PendingItem> ProcessedTriples(const std::string& document_id) const;
  // Throws NotFound, AlreadyDecided, UnknownType.
  QueueEntry Decide(const std::string& triple_key, const DecisionRequest& request);

  // Throws UnknownType unless `type` is one of the five index types.
  EntityIndex Entities(std::string_view type, std::optional<std::string> initial) const;
  // Depth is clamped to 1..2. Throws NotFound.
  NeighborhoodGraph Neighborhood(const TermId& center, int depth) const;
  // Over validated plus snapshots. Throws SyntaxError, UnsupportedFeature.
  QueryResult Query(std::string_view sparql) const;
  DocumentMentions Mentions(const std::string& document_id) const;

  size_t ImportTurtle(std::string_view turtle);  // into validated
  std::string ExportTurtle(const store::GraphSelector& graph) const;

  // Accepts a prefixed name or an absolute IRI.
  TermId ResolveIri(std::string_view text) const;

  const vocab::VocabRegistry& registry() const { return *pipeline_.registry; }
  const Pipeline& pipeline() const { return pipeline_; }
  // Unsynchronized; callers must not mutate concurrently.
  const store::Dataset& dataset() const { return dataset_; }

  static std::string TripleKey(const Triple& t);

 private:
  struct Item {
    std::string key;
    Triple triple;
    std::string sentence_id;
    bool typing = false;
    bool linked = false;
    std::string subject_surface;
    std::string object_surface;
    std::optional<EntityType> entity_type;
  };
  struct DocRecord {
    std::string id;
    std::string source_url;
    std::optional<store::CalendarDate> date;
    std::string kind;
    bool reduced = false;
    std::vector<std::pair<std::string, std::string>> sentences;
    std::vector<ner::EntityMention> mentions;
    std::vector<Item> items;
  };

  void IndexDocument(DocRecord record);
  std::string DocumentPayload(const DocRecord& record) const;
  DocRecord ParseDocumentPayload(const std::string& payload) const;
  QueueEntry EntryFor(const DocRecord& doc) const;
  PendingItem ItemView(const DocRecord& doc, const Item& item) const;
  const DocRecord& DocOrThrow(const std::string& id) const;
  std::vector<store::GraphSelector> ReadableGraphs() const;

  Pipeline pipeline_;
  store::Dataset dataset_;
  std::map<std::string, DocRecord> docs_;
  std::map<std::string, std::vector<std::string>> docs_by_key_;
  mutable std::shared_mutex mu_;
};

}  // namespace provkb::service
