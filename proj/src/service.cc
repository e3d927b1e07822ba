#include "provkb/service.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>

#include <json.hpp>

#include "provkb/errors.h"
#include "provkb/paths.h"
#include "provkb/text.h"
#include "provkb/turtle.h"

namespace provkb::service {

using nlohmann::json;

namespace {

constexpr size_t kExcerptLength = 240;
const char* const kDecisionOptions[] = {"accept", "create-new-entity", "propose-other-IRI",
                                        "reject"};

store::Provenance ManualProvenance(const std::string& id) {
  store::Provenance p;
  p.extractor = {store::ExtractorKind::kManual, id};
  p.status = store::Status::kAccepted;
  p.confidence = 1.0;
  return p;
}

std::string OriginName(const std::string& snapshot) {
  return snapshot + "-snapshot";
}

json MentionJson(const ner::EntityMention& m) {
  json j = {{"sentenceId", m.sentence_id},
            {"start", m.span.start},
            {"end", m.span.end},
            {"surface", m.surface},
            {"type", std::string(EntityTypeName(m.type))},
            {"rule", m.context_rule}};
  if (m.linked_iri) j["iri"] = m.linked_iri->str();
  return j;
}

ner::EntityMention MentionFromJson(const json& j) {
  ner::EntityMention m;
  m.sentence_id = j.at("sentenceId").get<std::string>();
  m.span = {j.at("start").get<int>(), j.at("end").get<int>()};
  m.surface = j.at("surface").get<std::string>();
  m.type = EntityTypeOrThrow(j.at("type").get<std::string>());
  m.context_rule = j.value("rule", "");
  if (j.contains("iri")) m.linked_iri = TermId(j.at("iri").get<std::string>());
  return m;
}

Triple ParseNTriple(const std::string& nt) {
  std::vector<Triple> ts = store::ParseTurtle(nt + " .", PrefixTable());
  if (ts.size() != 1) throw Error("bad triple in document record: " + nt);
  return ts[0];
}

}  // namespace

ServiceOptions ServiceOptions::Defaults() {
  ServiceOptions o;
  o.vocab = DataPath("vocab/provoc.ttl");
  o.kb = DataPath("kb/seed.ttl");
  o.snapshots = {{"dbpedia", DataPath("snapshots/dbpedia.ttl")},
                 {"netsent", DataPath("snapshots/netsent.ttl")}};
  o.rules = DataPath("rules/lexsyn.rules");
  o.lexicons = DataPath("rules/lexicons.tsv");
  o.gazetteer = DataPath("ner/gazetteer.tsv");
  o.context_rules = DataPath("ner/context.tsv");
  return o;
}

Pipeline LoadPipeline(const ServiceOptions& options) {
  Pipeline p;
  if (options.vocab.empty() || options.vocab == DataPath("vocab/provoc.ttl")) {
    p.registry = std::shared_ptr<const vocab::VocabRegistry>(
        &vocab::VocabRegistry::Default(), [](const vocab::VocabRegistry*) {});
  } else {
    p.registry = std::make_shared<const vocab::VocabRegistry>(
        vocab::VocabRegistry::FromFile(options.vocab));
  }
  const PrefixTable& prefixes = p.registry->prefixes();
  if (!options.gazetteer.empty()) {
    p.gazetteer = ner::LoadGazetteer(ReadFile(options.gazetteer), prefixes);
  }
  if (!options.context_rules.empty()) {
    p.context_rules = ner::LoadContextRules(ReadFile(options.context_rules));
  }
  if (!options.rules.empty()) p.rules = relex::LoadRulePack(ReadFile(options.rules), *p.registry);
  if (!options.lexicons.empty()) {
    p.lexicons = relex::LoadLexicons(ReadFile(options.lexicons), *p.registry);
  }
  options.weights.Validate();
  p.weights = options.weights;
  p.tau = options.tau;
  p.extract = options.extract;
  return p;
}

PipelineOutput RunPipeline(corpus::Document doc, const Pipeline& pipeline) {
  PipelineOutput out;
  out.mentions = ner::Recognize(doc, pipeline.gazetteer, pipeline.context_rules);
  out.links = linker::LinkDocument(doc, out.mentions, pipeline.snapshot, pipeline.weights,
                                   pipeline.tau);
  linker::ApplyLinks(&out.mentions, out.links);
  out.candidates = relex::Extract(doc, out.mentions, pipeline.rules.rules, pipeline.lexicons,
                                  pipeline.extract);
  out.reduced = std::none_of(doc.sentences.begin(), doc.sentences.end(),
                             [](const corpus::Sentence& s) { return s.parsed; });
  out.doc = std::move(doc);
  return out;
}

PayloadKind ParsePayloadKind(std::string_view name) {
  if (name == "raw" || name == "text") return PayloadKind::kRaw;
  if (name == "html") return PayloadKind::kHtml;
  if (name == "conllu") return PayloadKind::kConllu;
  throw UnparseablePayload("unknown payload kind '" + std::string(name) + "'");
}

std::string_view PayloadKindName(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::kRaw: return "raw";
    case PayloadKind::kHtml: return "html";
    case PayloadKind::kConllu: return "conllu";
  }
  return "";
}

corpus::Document LoadPayload(std::string_view payload, PayloadKind kind,
                             const std::string& doc_id) {
  if (text::Trim(payload).empty()) throw UnparseablePayload("empty payload");
  corpus::Document doc;
  switch (kind) {
    case PayloadKind::kConllu:
      try {
        doc = corpus::LoadConllu(payload, doc_id);
      } catch (const Error& e) {
        throw UnparseablePayload(std::string("conllu: ") + e.what());
      }
      doc.id = doc_id;
      break;
    case PayloadKind::kHtml:
      doc = corpus::TokenizeRawText(corpus::StripMarkup(payload), doc_id);
      break;
    case PayloadKind::kRaw:
      doc = corpus::TokenizeRawText(payload, doc_id);
      break;
  }
  if (doc.sentences.empty()) throw UnparseablePayload("payload has no text");
  return doc;
}

DecisionRequest::Kind DecisionRequest::ParseKind(std::string_view name) {
  if (name == "accept") return Kind::kAccept;
  if (name == "reject") return Kind::kReject;
  if (name == "create-new-entity") return Kind::kCreateNewEntity;
  if (name == "propose-other-IRI" || name == "propose-other-iri") {
    return Kind::kProposeOtherIri;
  }
  throw Error("unknown decision '" + std::string(name) + "'");
}

std::string_view DecisionKindName(DecisionRequest::Kind kind) {
  switch (kind) {
    case DecisionRequest::Kind::kAccept: return "accept";
    case DecisionRequest::Kind::kReject: return "reject";
    case DecisionRequest::Kind::kCreateNewEntity: return "create-new-entity";
    case DecisionRequest::Kind::kProposeOtherIri: return "propose-other-IRI";
  }
  return "";
}

std::string Service::TripleKey(const Triple& t) { return text::HashHex(t.ToNTriples()); }

Service::Service(Pipeline pipeline, store::Dataset dataset)
    : pipeline_(std::move(pipeline)), dataset_(std::move(dataset)) {
  for (const store::JournalRecord& r : dataset_.journal()) {
    if (r.op == store::JournalRecord::Op::kDocument) {
      IndexDocument(ParseDocumentPayload(r.payload));
    }
  }
}

Service::Service(const ServiceOptions& options) : pipeline_(LoadPipeline(options)) {
  for (const auto& [name, path] : options.snapshots) {
    dataset_.AddSnapshot(name, store::ParseTurtle(ReadFile(path), registry().prefixes()));
  }
  bool replayed = false;
  if (options.journal && std::filesystem::exists(*options.journal) &&
      std::filesystem::file_size(*options.journal) > 0) {
    for (const store::JournalRecord& r : store::ReadJournal(*options.journal)) {
      dataset_.Apply(r);
      if (r.op == store::JournalRecord::Op::kDocument) {
        IndexDocument(ParseDocumentPayload(r.payload));
      }
    }
    replayed = true;
  }
  if (options.journal) {
    std::filesystem::path path = *options.journal;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    dataset_.SetListener([path](const store::JournalRecord& r) {
      std::ofstream out(path, std::ios::app | std::ios::binary);
      out << store::ToJsonLine(r) << "\n";
      if (!out) throw Error("cannot append to journal " + path.string());
    });
  }
  if (!replayed && !options.kb.empty()) ImportTurtle(ReadFile(options.kb));

  std::vector<Triple> known = dataset_.validated().Triples();
  for (const std::string& name : dataset_.SnapshotNames()) {
    std::vector<Triple> ts = dataset_.snapshot(name)->Triples();
    known.insert(known.end(), ts.begin(), ts.end());
  }
  pipeline_.snapshot = linker::Snapshot::FromTriples(known);
}

TermId Service::ResolveIri(std::string_view input) const {
  std::string_view s = text::Trim(input);
  if (s.size() > 2 && s.front() == '<' && s.back() == '>') {
    return TermId(std::string(s.substr(1, s.size() - 2)));
  }
  size_t colon = s.find(':');
  if (colon != std::string_view::npos &&
      registry().prefixes().Find(std::string(s.substr(0, colon)))) {
    return registry().prefixes().Resolve(s);
  }
  return TermId(std::string(s));
}

std::vector<store::GraphSelector> Service::ReadableGraphs() const {
  std::vector<store::GraphSelector> graphs = {store::GraphSelector::Validated()};
  for (const std::string& name : dataset_.SnapshotNames()) {
    graphs.push_back(store::GraphSelector::Snapshot(name));
  }
  return graphs;
}

std::string Service::DocumentPayload(const DocRecord& d) const {
  json j;
  j["id"] = d.id;
  j["sourceUrl"] = d.source_url;
  if (d.date) j["date"] = d.date->ToString();
  j["kind"] = d.kind;
  j["reduced"] = d.reduced;
  j["sentences"] = json::array();
  for (const auto& [id, t] : d.sentences) j["sentences"].push_back({{"id", id}, {"text", t}});
  j["mentions"] = json::array();
  for (const ner::EntityMention& m : d.mentions) j["mentions"].push_back(MentionJson(m));
  j["items"] = json::array();
  for (const Item& it : d.items) {
    json ij = {{"triple", it.triple.ToNTriples()},
               {"sentenceId", it.sentence_id},
               {"typing", it.typing},
               {"linked", it.linked},
               {"subjectSurface", it.subject_surface},
               {"objectSurface", it.object_surface}};
    if (it.entity_type) ij["entityType"] = std::string(EntityTypeName(*it.entity_type));
    j["items"].push_back(ij);
  }
  return j.dump();
}

Service::DocRecord Service::ParseDocumentPayload(const std::string& payload) const {
  try {
    json j = json::parse(payload);
    DocRecord d;
    d.id = j.at("id").get<std::string>();
    d.source_url = j.value("sourceUrl", "");
    if (j.contains("date")) d.date = store::CalendarDate::Parse(j.at("date").get<std::string>());
    d.kind = j.value("kind", "raw");
    d.reduced = j.value("reduced", false);
    for (const json& s : j.at("sentences")) {
      d.sentences.emplace_back(s.at("id").get<std::string>(), s.at("text").get<std::string>());
    }
    for (const json& m : j.at("mentions")) d.mentions.push_back(MentionFromJson(m));
    for (const json& ij : j.at("items")) {
      std::string nt = ij.at("triple").get<std::string>();
      if (text::EndsWith(nt, " .")) nt.resize(nt.size() - 2);
      Item it;
      it.triple = ParseNTriple(nt);
      it.key = TripleKey(it.triple);
      it.sentence_id = ij.value("sentenceId", "");
      it.typing = ij.value("typing", false);
      it.linked = ij.value("linked", false);
      it.subject_surface = ij.value("subjectSurface", "");
      it.object_surface = ij.value("objectSurface", "");
      if (ij.contains("entityType")) {
        it.entity_type = EntityTypeOrThrow(ij.at("entityType").get<std::string>());
      }
      d.items.push_back(std::move(it));
    }
    return d;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed document record: ") + e.what());
  }
}

void Service::IndexDocument(DocRecord record) {
  for (const Item& it : record.items) {
    std::vector<std::string>& docs = docs_by_key_[it.key];
    if (std::find(docs.begin(), docs.end(), record.id) == docs.end()) {
      docs.push_back(record.id);
    }
  }
  std::string id = record.id;
  docs_[id] = std::move(record);
}

const Service::DocRecord& Service::DocOrThrow(const std::string& id) const {
  auto it = docs_.find(id);
  if (it == docs_.end()) throw NotFound("unknown document '" + id + "'");
  return it->second;
}

IngestResult Service::Ingest(std::string_view payload, PayloadKind kind,
                             const std::string& source_url,
                             const std::optional<store::CalendarDate>& date) {
  if (text::Trim(payload).empty()) throw UnparseablePayload("empty payload");
  std::string id = "doc-" + text::HashHex(source_url + "\n" +
                                          std::string(PayloadKindName(kind)) + "\n" +
                                          std::string(payload));
  auto existing = [&]() -> std::optional<IngestResult> {
    auto it = docs_.find(id);
    if (it == docs_.end()) return std::nullopt;
    return IngestResult{id, static_cast<int>(it->second.mentions.size()),
                        static_cast<int>(it->second.items.size()), 0, it->second.reduced};
  };
  {
    std::shared_lock lock(mu_);
    if (auto r = existing()) return *r;
  }

  corpus::Document doc = LoadPayload(payload, kind, id);
  if (!source_url.empty()) doc.source_url = source_url;
  if (date) doc.date = date;
  PipelineOutput out = RunPipeline(std::move(doc), pipeline_);

  DocRecord rec;
  rec.id = id;
  rec.source_url = out.doc.source_url;
  rec.date = out.doc.date;
  rec.kind = std::string(PayloadKindName(kind));
  rec.reduced = out.reduced;
  for (const corpus::Sentence& s : out.doc.sentences) rec.sentences.emplace_back(s.id, s.text);
  rec.mentions = out.mentions;

  // Entity typing questions, then relation candidates.
  std::vector<std::pair<Item, store::Provenance>> queued;
  std::set<Triple> seen;
  for (size_t i = 0; i < out.mentions.size(); ++i) {
    const ner::EntityMention& m = out.mentions[i];
    Item it;
    it.typing = true;
    it.linked = m.linked_iri.has_value();
    TermId subject = m.linked_iri ? *m.linked_iri : MintIri(m.surface);
    it.triple = Triple{Term::Iri(subject), Term::Iri(terms::RdfType()),
                       Term::Iri(EntityClass(m.type))};
    if (!seen.insert(it.triple).second) continue;
    it.key = TripleKey(it.triple);
    it.sentence_id = m.sentence_id;
    it.subject_surface = m.surface;
    it.entity_type = m.type;
    store::Provenance p;
    p.source_url = out.doc.source_url;
    p.date = out.doc.date;
    bool by_linker = i < out.links.size() && out.links[i].result &&
                     out.links[i].result == m.linked_iri;
    p.extractor = {store::ExtractorKind::kNer, by_linker ? "linker" : "gazetteer"};
    p.confidence = !it.linked ? 0.5 : by_linker ? out.links[i].score->total : 1.0;
    p.document_id = id;
    p.sentence_id = m.sentence_id;
    queued.emplace_back(std::move(it), std::move(p));
  }
  for (const relex::CandidateTriple& c : out.candidates) {
    if (!seen.insert(c.triple).second) continue;
    Item it;
    it.triple = c.triple;
    it.key = TripleKey(c.triple);
    it.sentence_id = c.sentence_id;
    it.subject_surface = c.subject_surface;
    it.object_surface = c.object_surface;
    queued.emplace_back(std::move(it), c.provenance);
  }

  std::unique_lock lock(mu_);
  if (auto r = existing()) return *r;
  int fresh = 0;
  for (auto& [item, prov] : queued) {
    if (dataset_.Insert(item.triple, prov, store::GraphSelector::Temporary())) ++fresh;
    // A triple is queued once: later documents only add an attestation.
    const store::Entry* e = dataset_.temporary().Find(item.triple);
    if (e && e->provenance.status == store::Status::kPending && !docs_by_key_.count(item.key)) {
      rec.items.push_back(std::move(item));
    }
  }
  store::JournalRecord jr;
  jr.op = store::JournalRecord::Op::kDocument;
  jr.payload = DocumentPayload(rec);
  dataset_.Record(std::move(jr));
  IngestResult result{id, static_cast<int>(rec.mentions.size()),
                      static_cast<int>(rec.items.size()), fresh, rec.reduced};
  IndexDocument(std::move(rec));
  return result;
}

QueueEntry Service::EntryFor(const DocRecord& doc) const {
  QueueEntry e;
  e.document_id = doc.id;
  std::vector<std::string> texts;
  for (const auto& [id, t] : doc.sentences) texts.push_back(t);
  e.excerpt = text::TruncateCodePoints(text::Join(texts, " "), kExcerptLength);
  e.total = static_cast<int>(doc.items.size());
  for (const Item& it : doc.items) {
    const store::Entry* entry = dataset_.temporary().Find(it.triple);
    if (entry && entry->provenance.status != store::Status::kPending) ++e.decided;
  }
  e.source_url = doc.source_url;
  e.date = doc.date;
  return e;
}

std::vector<QueueEntry> Service::PendingByArticle() const {
  std::shared_lock lock(mu_);
  std::vector<QueueEntry> out;
  for (const auto& [id, doc] : docs_) {
    if (!doc.items.empty()) out.push_back(EntryFor(doc));
  }
  std::stable_sort(out.begin(), out.end(), [](const QueueEntry& a, const QueueEntry& b) {
    if (a.date != b.date) return a.date > b.date;
    return a.document_id < b.document_id;
  });
  return out;
}

PendingItem Service::ItemView(const DocRecord& doc, const Item& item) const {
  PendingItem v;
  v.triple_key = item.key;
  v.triple = item.triple;
  for (const auto& [id, t] : doc.sentences) {
    if (id == item.sentence_id) v.sentence = t;
  }
  const store::Entry* entry = dataset_.temporary().Find(item.triple);
  if (entry) {
    v.status = entry->provenance.status;
    v.extractor = entry->provenance.extractor;
    v.confidence = entry->provenance.confidence;
  }
  bool pending = v.status == store::Status::kPending;
  if (item.typing && item.entity_type) {
    std::string label(EntityUiLabel(*item.entity_type));
    if (!pending) {
      v.prompt = item.subject_surface + " est " + label;
    } else if (item.linked) {
      v.prompt = item.subject_surface + " est de type " + label + ".";
    } else {
      v.prompt = "Est-ce que " + item.subject_surface + " est: " + label + " ?";
    }
  } else {
    const PrefixTable& prefixes = registry().prefixes();
    v.prompt = item.subject_surface + " " + prefixes.Render(item.triple.predicate.iri()) +
               " " + item.object_surface;
  }
  for (const char* o : kDecisionOptions) v.options.push_back(o);
  return v;
}

std::vector<PendingItem> Service::PendingTriples(const std::string& document_id) const {
  std::shared_lock lock(mu_);
  const DocRecord& doc = DocOrThrow(document_id);
  std::vector<PendingItem> out;
  for (const Item& it : doc.items) {
    PendingItem v = ItemView(doc, it);
    if (v.status == store::Status::kPending) out.push_back(std::move(v));
  }
  return out;
}

std::vector<PendingItem> Service::ProcessedTriples(const std::string& document_id) const {
  std::shared_lock lock(mu_);
  const DocRecord& doc = DocOrThrow(document_id);
  std::vector<PendingItem> out;
  for (const Item& it : doc.items) {
    PendingItem v = ItemView(doc, it);
    if (v.status != store::Status::kPending) out.push_back(std::move(v));
  }
  return out;
}

QueueEntry Service::Decide(const std::string& triple_key, const DecisionRequest& req) {
  std::unique_lock lock(mu_);
  auto keyed = docs_by_key_.find(triple_key);
  if (keyed == docs_by_key_.end()) throw NotFound("unknown triple key '" + triple_key + "'");
  std::string doc_id = keyed->second.front();
  if (req.document_id) {
    const std::vector<std::string>& ids = keyed->second;
    if (std::find(ids.begin(), ids.end(), *req.document_id) == ids.end()) {
      throw NotFound("triple '" + triple_key + "' is not queued for " + *req.document_id);
    }
    doc_id = *req.document_id;
  }
  const DocRecord& doc = DocOrThrow(doc_id);
  const Item* item = nullptr;
  for (const Item& it : doc.items) {
    if (it.key == triple_key) item = &it;
  }
  if (!item) throw NotFound("unknown triple key '" + triple_key + "'");
  const Triple& t = item->triple;

  switch (req.kind) {
    case DecisionRequest::Kind::kAccept:
      dataset_.SetStatus(t, store::Decision::Accept());
      break;
    case DecisionRequest::Kind::kReject:
      dataset_.SetStatus(t, store::Decision::Reject());
      break;
    case DecisionRequest::Kind::kProposeOtherIri: {
      if (!req.subject && !req.object) throw Error("propose-other-IRI needs an IRI");
      Triple r = t;
      if (req.subject) r.subject = Term::Iri(*req.subject);
      if (req.object) {
        if (t.object.is_literal()) throw Error("cannot replace a literal object by an IRI");
        r.object = Term::Iri(*req.object);
      }
      if (r == t) {
        dataset_.SetStatus(t, store::Decision::Accept());
      } else {
        dataset_.SetStatus(t, store::Decision::Modify(r));
      }
      break;
    }
    case DecisionRequest::Kind::kCreateNewEntity: {
      bool on_object = req.role == "object";
      if (!on_object && req.role != "subject") throw Error("role must be subject or object");
      if (on_object && (item->typing || t.object.is_literal())) {
        throw Error("this triple has no entity object");
      }
      std::optional<EntityType> type = req.type;
      if (!type && item->typing && !on_object) type = item->entity_type;
      if (!type) throw UnknownType("create-new-entity needs an entity type");
      std::string label = req.label ? *req.label
                          : on_object ? item->object_surface
                                      : item->subject_surface;
      if (text::Trim(label).empty()) throw Error("create-new-entity needs a label");
      TermId iri = MintIri(label);
      Triple r = t;
      if (on_object) {
        r.object = Term::Iri(iri);
      } else {
        r.subject = Term::Iri(iri);
      }
      if (item->typing && !on_object) r.object = Term::Iri(EntityClass(*type));
      if (r == t) {
        dataset_.SetStatus(t, store::Decision::Accept());
      } else {
        dataset_.SetStatus(t, store::Decision::Modify(r));
      }
      store::Provenance p = ManualProvenance("create-new-entity");
      p.source_url = doc.source_url;
      p.document_id = doc.id;
      dataset_.Insert(Triple{Term::Iri(iri), Term::Iri(terms::RdfType()),
                             Term::Iri(EntityClass(*type))},
                      p, store::GraphSelector::Validated());
      dataset_.Insert(Triple{Term::Iri(iri), Term::Iri(terms::RdfsLabel()),
                             Term::Literal(std::string(text::Trim(label)))},
                      p, store::GraphSelector::Validated());
      break;
    }
  }
  return EntryFor(doc);
}

EntityIndex Service::Entities(std::string_view type_name,
                              std::optional<std::string> initial) const {
  EntityType type = EntityTypeOrThrow(type_name);
  if (type == EntityType::kPerson || type == EntityType::kComponent) {
    throw UnknownType("the entity index covers Groupes, Division, Marque, Gamme and Produit");
  }
  std::optional<std::string> bucket_filter;
  if (initial) {
    std::string i(text::Trim(*initial));
    if (i.empty()) throw UnknownType("empty initial");
    char b = text::InitialBucket(i);
    bucket_filter = std::string(1, i == "#" ? '#' : b);
  }
  std::shared_lock lock(mu_);
  std::vector<store::GraphSelector> graphs = ReadableGraphs();
  EntityIndex out;
  out.type = type;
  std::set<TermId> seen;
  for (const Triple& t : dataset_.Match(std::nullopt, Term::Iri(terms::RdfType()),
                                        Term::Iri(EntityClass(type)), graphs)) {
    TermId iri = t.subject.iri();
    if (!seen.insert(iri).second) continue;
    std::string label;
    for (const Triple& l :
         dataset_.Match(t.subject, Term::Iri(terms::RdfsLabel()), std::nullopt, graphs)) {
      if (l.object.is_literal() && (label.empty() || l.object.value() < label)) {
        label = l.object.value();
      }
    }
    if (label.empty()) label = DisplayName(iri);
    std::string bucket(1, text::InitialBucket(label));
    if (bucket_filter && bucket != *bucket_filter) continue;
    out.buckets[bucket].push_back({label, iri});
  }
  if (bucket_filter) out.buckets[*bucket_filter];
  for (auto& [b, items] : out.buckets) {
    std::sort(items.begin(), items.end(), [](const IndexedEntity& a, const IndexedEntity& b) {
      std::string fa = text::FoldForSort(a.label);
      std::string fb = text::FoldForSort(b.label);
      if (fa != fb) return fa < fb;
      if (a.label != b.label) return a.label < b.label;
      return a.iri < b.iri;
    });
  }
  return out;
}

namespace {

bool StructuralPredicate(const TermId& p) {
  return p == terms::RdfType() || p == terms::RdfsLabel() ||
         text::StartsWith(p.str(), ns::kKb);
}

}  // namespace

NeighborhoodGraph Service::Neighborhood(const TermId& center, int depth) const {
  NeighborhoodGraph g;
  g.center = center;
  g.depth = std::clamp(depth, 1, 2);
  if (g.depth != depth) {
    g.warnings.push_back("depth " + std::to_string(depth) + " clamped to " +
                         std::to_string(g.depth));
  }
  std::shared_lock lock(mu_);
  std::vector<store::GraphSelector> graphs = ReadableGraphs();
  Term c = Term::Iri(center);
  if (dataset_.Match(c, std::nullopt, std::nullopt, graphs).empty() &&
      dataset_.Match(std::nullopt, std::nullopt, c, graphs).empty()) {
    throw NotFound("unknown IRI " + center.str());
  }

  auto appears_in = [&](const Term& node, const store::GraphSelector& sel) {
    const store::Graph* graph = dataset_.graph(sel);
    return graph && (!graph->Match(node, std::nullopt, std::nullopt).empty() ||
                     !graph->Match(std::nullopt, std::nullopt, node).empty());
  };
  auto make_node = [&](const TermId& iri) {
    GraphNode n;
    n.iri = iri;
    Term t = Term::Iri(iri);
    for (const Triple& l :
         dataset_.Match(t, Term::Iri(terms::RdfsLabel()), std::nullopt, graphs)) {
      if (l.object.is_literal() && (n.label.empty() || l.object.value() < n.label)) {
        n.label = l.object.value();
      }
    }
    if (n.label.empty()) n.label = DisplayName(iri);
    for (const Triple& im :
         dataset_.Match(t, Term::Iri(TermId::In(ns::kKb, "image")), std::nullopt, graphs)) {
      n.image = im.object.value();
    }
    n.origin = "local";
    if (!appears_in(t, store::GraphSelector::Validated())) {
      for (const std::string& name : dataset_.SnapshotNames()) {
        if (appears_in(t, store::GraphSelector::Snapshot(name))) {
          n.origin = OriginName(name);
          break;
        }
      }
    }
    return n;
  };

  std::set<TermId> visited = {center};
  std::set<Triple> edge_set;
  g.nodes.push_back(make_node(center));
  std::vector<TermId> frontier = {center};
  for (int level = 0; level < g.depth; ++level) {
    std::vector<TermId> next;
    for (const TermId& node : frontier) {
      Term n = Term::Iri(node);
      std::vector<Triple> touching = dataset_.Match(n, std::nullopt, std::nullopt, graphs);
      std::vector<Triple> incoming = dataset_.Match(std::nullopt, std::nullopt, n, graphs);
      touching.insert(touching.end(), incoming.begin(), incoming.end());
      for (const Triple& t : touching) {
        if (!t.object.is_iri() || StructuralPredicate(t.predicate.iri())) continue;
        TermId other = t.subject.iri() == node ? t.object.iri() : t.subject.iri();
        if (edge_set.insert(t).second) g.edges.push_back(t);
        if (visited.insert(other).second) {
          g.nodes.push_back(make_node(other));
          next.push_back(other);
        }
      }
    }
    frontier = std::move(next);
  }
  return g;
}

QueryResult Service::Query(std::string_view sparql) const {
  query::ParseOptions opts;
  opts.registry = pipeline_.registry.get();
  opts.prefixes = registry().prefixes();
  query::SelectQuery q = query::ParseQuery(sparql, opts);
  std::shared_lock lock(mu_);
  return {query::Evaluate(q, dataset_, ReadableGraphs(), registry()), q.rewrites};
}

DocumentMentions Service::Mentions(const std::string& document_id) const {
  std::shared_lock lock(mu_);
  const DocRecord& doc = DocOrThrow(document_id);
  DocumentMentions m;
  m.document_id = doc.id;
  m.source_url = doc.source_url;
  m.date = doc.date;
  m.sentences = doc.sentences;
  m.mentions = doc.mentions;
  m.summary = ner::Summarize(doc.mentions);
  return m;
}

size_t Service::ImportTurtle(std::string_view turtle) {
  std::vector<Triple> triples = store::ParseTurtle(turtle, registry().prefixes());
  std::unique_lock lock(mu_);
  size_t added = 0;
  store::Provenance p;
  p.extractor = {store::ExtractorKind::kImport, "turtle"};
  p.status = store::Status::kAccepted;
  for (const Triple& t : triples) {
    if (dataset_.Insert(t, p, store::GraphSelector::Validated())) ++added;
  }
  return added;
}

std::string Service::ExportTurtle(const store::GraphSelector& graph) const {
  std::shared_lock lock(mu_);
  const store::Graph* g = dataset_.graph(graph);
  if (!g) throw NotFound("unknown graph " + graph.ToString());
  return store::SerializeTurtle(g->Triples(), registry().prefixes());
}

}  // namespace provkb::service
