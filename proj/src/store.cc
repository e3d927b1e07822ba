#include "provkb/store.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>

#include <json.hpp>

#include "provkb/errors.h"
#include "provkb/text.h"
#include "provkb/turtle.h"

namespace provkb::store {

using nlohmann::json;

CalendarDate CalendarDate::Parse(std::string_view text) {
  CalendarDate d;
  char tail = 0;
  std::string s(text::Trim(text));
  if (s.size() != 10 ||
      std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &d.year, &d.month, &d.day, &tail) != 3 ||
      d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
    throw Error("invalid date '" + s + "', expected YYYY-MM-DD");
  }
  return d;
}

std::string CalendarDate::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::string_view ExtractorKindName(ExtractorKind kind) {
  switch (kind) {
    case ExtractorKind::kLexSynRule: return "lexSynRule";
    case ExtractorKind::kLexicon: return "lexicon";
    case ExtractorKind::kNer: return "ner";
    case ExtractorKind::kManual: return "manual";
    case ExtractorKind::kImport: return "import";
  }
  return "manual";
}

std::string Extractor::ToString() const {
  std::string out(ExtractorKindName(kind));
  if (!id.empty()) out += ":" + id;
  return out;
}

Extractor Extractor::Parse(std::string_view text) {
  size_t colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  Extractor e;
  if (colon != std::string_view::npos) e.id = std::string(text.substr(colon + 1));
  for (ExtractorKind k : {ExtractorKind::kLexSynRule, ExtractorKind::kLexicon,
                          ExtractorKind::kNer, ExtractorKind::kManual,
                          ExtractorKind::kImport}) {
    if (ExtractorKindName(k) == name) {
      e.kind = k;
      return e;
    }
  }
  throw Error("unknown extractor '" + std::string(text) + "'");
}

std::string_view StatusName(Status status) {
  switch (status) {
    case Status::kPending: return "pending";
    case Status::kAccepted: return "accepted";
    case Status::kModified: return "modified";
    case Status::kRejected: return "rejected";
  }
  return "pending";
}

Status ParseStatus(std::string_view name) {
  for (Status s : {Status::kPending, Status::kAccepted, Status::kModified,
                   Status::kRejected}) {
    if (StatusName(s) == name) return s;
  }
  throw Error("unknown status '" + std::string(name) + "'");
}

std::string_view DecisionName(Decision::Kind kind) {
  switch (kind) {
    case Decision::Kind::kAccept: return "accept";
    case Decision::Kind::kReject: return "reject";
    case Decision::Kind::kModify: return "modify";
  }
  return "accept";
}

// ---------------------------------------------------------------------------
// Graph

bool Graph::Insert(const Triple& t, const Provenance& prov) {
  Attestation a{prov.source_url, prov.document_id, prov.sentence_id,
                prov.extractor};
  auto it = entries_.find(t);
  if (it != entries_.end()) {
    it->second.attestations.push_back(std::move(a));
    return false;
  }
  entries_.emplace(t, Entry{t, prov, {std::move(a)}});
  return true;
}

const Entry* Graph::Find(const Triple& t) const {
  auto it = entries_.find(t);
  return it == entries_.end() ? nullptr : &it->second;
}

Entry* Graph::FindMutable(const Triple& t) {
  auto it = entries_.find(t);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Triple> Graph::Triples() const {
  std::vector<Triple> out;
  out.reserve(entries_.size());
  for (const auto& [t, e] : entries_) out.push_back(t);
  return out;
}

std::vector<Triple> Graph::Match(const std::optional<Term>& s,
                                 const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto it = entries_.begin();
  if (s) it = entries_.lower_bound(Triple{*s, Term(), Term()});
  for (; it != entries_.end(); ++it) {
    const Triple& t = it->first;
    if (s && t.subject != *s) break;
    if (p && t.predicate != *p) continue;
    if (o && t.object != *o) continue;
    out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Selectors and journal records

std::string GraphSelector::ToString() const {
  switch (kind) {
    case Kind::kTemporary: return "temporary";
    case Kind::kValidated: return "validated";
    case Kind::kSnapshot: return "snapshot:" + name;
  }
  return "temporary";
}

GraphSelector GraphSelector::Parse(std::string_view text) {
  if (text == "temporary") return Temporary();
  if (text == "validated") return Validated();
  if (text::StartsWith(text, "snapshot:")) {
    return Snapshot(std::string(text.substr(9)));
  }
  throw Error("unknown graph '" + std::string(text) + "'");
}

namespace {

Triple ParseNTriple(const std::string& line) {
  std::vector<Triple> ts = ParseTurtle(line, PrefixTable());
  if (ts.size() != 1) throw Error("expected one triple in '" + line + "'");
  return ts[0];
}

json ProvenanceToJson(const Provenance& p) {
  json j;
  j["source"] = p.source_url;
  j["date"] = p.date ? json(p.date->ToString()) : json(nullptr);
  j["extractor"] = p.extractor.ToString();
  j["status"] = std::string(StatusName(p.status));
  j["confidence"] = p.confidence;
  j["replacement"] =
      p.replacement ? json(p.replacement->ToNTriples()) : json(nullptr);
  j["document"] = p.document_id;
  j["sentence"] = p.sentence_id;
  return j;
}

Provenance ProvenanceFromJson(const json& j) {
  Provenance p;
  p.source_url = j.value("source", "");
  if (j.contains("date") && !j["date"].is_null()) {
    p.date = CalendarDate::Parse(j["date"].get<std::string>());
  }
  p.extractor = Extractor::Parse(j.value("extractor", "manual"));
  p.status = ParseStatus(j.value("status", "pending"));
  p.confidence = j.value("confidence", 1.0);
  if (j.contains("replacement") && !j["replacement"].is_null()) {
    p.replacement = ParseNTriple(j["replacement"].get<std::string>());
  }
  p.document_id = j.value("document", "");
  p.sentence_id = j.value("sentence", "");
  return p;
}

}  // namespace

std::string ToJsonLine(const JournalRecord& r) {
  json j;
  j["ts"] = r.timestamp;
  switch (r.op) {
    case JournalRecord::Op::kInsert:
      j["op"] = "insert";
      j["graph"] = r.graph.ToString();
      j["triple"] = r.triple->ToNTriples();
      j["provenance"] = ProvenanceToJson(*r.provenance);
      break;
    case JournalRecord::Op::kDecide:
      j["op"] = "decide";
      j["triple"] = r.triple->ToNTriples();
      j["decision"] = std::string(DecisionName(r.decision->kind));
      if (r.decision->replacement) {
        j["replacement"] = r.decision->replacement->ToNTriples();
      }
      break;
    case JournalRecord::Op::kDocument:
      j["op"] = "document";
      j["payload"] = json::parse(r.payload.empty() ? "{}" : r.payload);
      break;
  }
  return j.dump();
}

JournalRecord ParseJsonLine(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed journal line: ") + e.what());
  }
  JournalRecord r;
  r.timestamp = j.value("ts", "");
  std::string op = j.value("op", "");
  if (op == "insert") {
    r.op = JournalRecord::Op::kInsert;
    r.graph = GraphSelector::Parse(j.value("graph", "temporary"));
    r.triple = ParseNTriple(j.at("triple").get<std::string>());
    r.provenance = ProvenanceFromJson(j.at("provenance"));
  } else if (op == "decide") {
    r.op = JournalRecord::Op::kDecide;
    r.triple = ParseNTriple(j.at("triple").get<std::string>());
    std::string kind = j.at("decision").get<std::string>();
    if (kind == "accept") {
      r.decision = Decision::Accept();
    } else if (kind == "reject") {
      r.decision = Decision::Reject();
    } else if (kind == "modify") {
      r.decision = Decision::Modify(ParseNTriple(j.at("replacement").get<std::string>()));
    } else {
      throw Error("unknown decision '" + kind + "'");
    }
  } else if (op == "document") {
    r.op = JournalRecord::Op::kDocument;
    r.payload = j.at("payload").dump();
  } else {
    throw Error("unknown journal op '" + op + "'");
  }
  return r;
}

std::vector<JournalRecord> ReadJournal(const std::filesystem::path& path) {
  std::vector<JournalRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (text::Trim(line).empty()) continue;
    out.push_back(ParseJsonLine(line));
  }
  return out;
}

std::string NowTimestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset() : clock_(NowTimestamp) {}

void Dataset::Journal(JournalRecord record) {
  if (replay_timestamp_) {
    record.timestamp = *replay_timestamp_;
  } else if (record.timestamp.empty()) {
    record.timestamp = clock_();
  }
  journal_.push_back(record);
  if (listener_ && !replay_timestamp_) listener_(journal_.back());
}

bool Dataset::InsertValidated(const Triple& t, Provenance prov) {
  if (prov.status == Status::kPending || prov.status == Status::kRejected) {
    prov.status = Status::kAccepted;
  }
  if (Entry* pending = temporary_.FindMutable(t);
      pending && pending->provenance.status == Status::kPending) {
    pending->provenance.status = Status::kAccepted;
  }
  return validated_.Insert(t, prov);
}

bool Dataset::Insert(const Triple& t, const Provenance& prov,
                     const GraphSelector& graph) {
  JournalRecord rec;
  rec.op = JournalRecord::Op::kInsert;
  rec.graph = graph;
  rec.triple = t;
  bool fresh = false;
  switch (graph.kind) {
    case GraphSelector::Kind::kSnapshot:
      throw RejectedReadOnly(graph.ToString());
    case GraphSelector::Kind::kTemporary: {
      if (validated_.Contains(t)) return false;
      Provenance p = prov;
      p.status = Status::kPending;
      p.replacement.reset();
      fresh = temporary_.Insert(t, p);
      rec.provenance = p;
      break;
    }
    case GraphSelector::Kind::kValidated: {
      Provenance p = prov;
      p.replacement.reset();
      fresh = InsertValidated(t, p);
      rec.provenance = p;
      break;
    }
  }
  Journal(std::move(rec));
  return fresh;
}

void Dataset::AddSnapshot(const std::string& name,
                          const std::vector<Triple>& triples) {
  Graph& g = snapshots_[name];
  Provenance p;
  p.extractor = {ExtractorKind::kImport, name};
  p.status = Status::kAccepted;
  for (const Triple& t : triples) g.Insert(t, p);
}

std::vector<std::string> Dataset::SnapshotNames() const {
  std::vector<std::string> out;
  for (const auto& [name, g] : snapshots_) out.push_back(name);
  return out;
}

const Graph* Dataset::snapshot(const std::string& name) const {
  auto it = snapshots_.find(name);
  return it == snapshots_.end() ? nullptr : &it->second;
}

const Graph* Dataset::graph(const GraphSelector& selector) const {
  switch (selector.kind) {
    case GraphSelector::Kind::kTemporary: return &temporary_;
    case GraphSelector::Kind::kValidated: return &validated_;
    case GraphSelector::Kind::kSnapshot: return snapshot(selector.name);
  }
  return nullptr;
}

std::vector<Triple> Dataset::Match(const std::optional<Term>& s,
                                   const std::optional<Term>& p,
                                   const std::optional<Term>& o,
                                   const std::vector<GraphSelector>& graphs) const {
  std::set<Triple> seen;
  for (const GraphSelector& sel : graphs) {
    const Graph* g = graph(sel);
    if (!g) continue;
    for (Triple& t : g->Match(s, p, o)) seen.insert(std::move(t));
  }
  return {seen.begin(), seen.end()};
}

Provenance Dataset::SetStatus(const Triple& key, const Decision& decision) {
  Entry* entry = temporary_.FindMutable(key);
  if (!entry) throw NotFound("no pending triple " + key.ToNTriples());
  if (entry->provenance.status != Status::kPending) {
    throw AlreadyDecided("triple already " +
                         std::string(StatusName(entry->provenance.status)) + ": " +
                         key.ToNTriples());
  }
  if (decision.kind == Decision::Kind::kModify && !decision.replacement) {
    throw Error("modify decision without a replacement triple");
  }
  Provenance& prov = entry->provenance;
  switch (decision.kind) {
    case Decision::Kind::kAccept: {
      prov.status = Status::kAccepted;
      InsertValidated(key, prov);
      break;
    }
    case Decision::Kind::kReject:
      prov.status = Status::kRejected;
      break;
    case Decision::Kind::kModify: {
      prov.status = Status::kModified;
      prov.replacement = decision.replacement;
      Provenance replacement_prov = prov;
      replacement_prov.replacement.reset();
      InsertValidated(*decision.replacement, replacement_prov);
      break;
    }
  }
  Provenance result = prov;
  JournalRecord rec;
  rec.op = JournalRecord::Op::kDecide;
  rec.triple = key;
  rec.decision = decision;
  Journal(std::move(rec));
  return result;
}

void Dataset::Record(JournalRecord record) { Journal(std::move(record)); }

void Dataset::Apply(const JournalRecord& record) {
  replay_timestamp_ = &record.timestamp;
  try {
    switch (record.op) {
      case JournalRecord::Op::kInsert:
        Insert(*record.triple, *record.provenance, record.graph);
        break;
      case JournalRecord::Op::kDecide:
        SetStatus(*record.triple, *record.decision);
        break;
      case JournalRecord::Op::kDocument:
        Journal(record);
        break;
    }
  } catch (...) {
    replay_timestamp_ = nullptr;
    throw;
  }
  replay_timestamp_ = nullptr;
}

Dataset Dataset::Replay(const std::vector<JournalRecord>& records) {
  Dataset ds;
  for (const JournalRecord& r : records) ds.Apply(r);
  return ds;
}

}  // namespace provkb::store
