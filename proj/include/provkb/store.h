#pragma once

// Provenance-tracked triple graphs: the temporary (pending) graph, the
// validated graph and named read-only snapshots, plus the append-only
// decision journal from which the validated graph can be rebuilt.
//
// Dataset is not internally synchronized. The service layer wraps it in a
// single-writer/multi-reader lock.

#include <compare>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "provkb/rdf.h"

namespace provkb::store {

struct CalendarDate {
  int year = 0;
  int month = 0;
  int day = 0;

  // "YYYY-MM-DD"; throws provkb::Error on anything else.
  static CalendarDate Parse(std::string_view text);
  std::string ToString() const;
  auto operator<=>(const CalendarDate&) const = default;
};

enum class ExtractorKind { kLexSynRule, kLexicon, kNer, kManual, kImport };

struct Extractor {
  ExtractorKind kind = ExtractorKind::kManual;
  std::string id;  // rule id, lexicon property, gazetteer, expert name...

  std::string ToString() const;  // "lexSynRule:hfc.obj.par"
  static Extractor Parse(std::string_view text);
  auto operator<=>(const Extractor&) const = default;
};

std::string_view ExtractorKindName(ExtractorKind kind);

enum class Status { kPending, kAccepted, kModified, kRejected };

std::string_view StatusName(Status status);
Status ParseStatus(std::string_view name);

struct Provenance {
  std::string source_url;
  std::optional<CalendarDate> date;
  Extractor extractor;
  Status status = Status::kPending;
  double confidence = 1.0;
  std::optional<Triple> replacement;  // set iff status == kModified
  std::string document_id;
  std::string sentence_id;
};

// One sighting of a triple; the first is the entry's own provenance.
struct Attestation {
  std::string source_url;
  std::string document_id;
  std::string sentence_id;
  Extractor extractor;
};

struct Entry {
  Triple triple;
  Provenance provenance;
  std::vector<Attestation> attestations;
};

class Graph {
 public:
  // False if the triple is already present; the attestation is appended
  // to the existing entry in that case.
  bool Insert(const Triple& t, const Provenance& prov);
  const Entry* Find(const Triple& t) const;
  Entry* FindMutable(const Triple& t);
  bool Contains(const Triple& t) const { return Find(t) != nullptr; }
  size_t size() const { return entries_.size(); }
  const std::map<Triple, Entry>& entries() const { return entries_; }
  std::vector<Triple> Triples() const;

  // Unset positions match anything.
  std::vector<Triple> Match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

 private:
  std::map<Triple, Entry> entries_;
};

struct GraphSelector {
  enum class Kind { kTemporary, kValidated, kSnapshot };
  Kind kind = Kind::kTemporary;
  std::string name;  // snapshot name

  static GraphSelector Temporary() { return {Kind::kTemporary, ""}; }
  static GraphSelector Validated() { return {Kind::kValidated, ""}; }
  static GraphSelector Snapshot(std::string name) {
    return {Kind::kSnapshot, std::move(name)};
  }
  // "temporary", "validated" or "snapshot:<name>".
  std::string ToString() const;
  static GraphSelector Parse(std::string_view text);
  auto operator<=>(const GraphSelector&) const = default;
};

struct Decision {
  enum class Kind { kAccept, kReject, kModify };
  Kind kind = Kind::kAccept;
  std::optional<Triple> replacement;

  static Decision Accept() { return {Kind::kAccept, std::nullopt}; }
  static Decision Reject() { return {Kind::kReject, std::nullopt}; }
  static Decision Modify(Triple t) { return {Kind::kModify, std::move(t)}; }
};

std::string_view DecisionName(Decision::Kind kind);

struct JournalRecord {
  enum class Op { kInsert, kDecide, kDocument };
  std::string timestamp;
  Op op = Op::kInsert;
  GraphSelector graph;                // insert
  std::optional<Triple> triple;       // insert, decide
  std::optional<Provenance> provenance;  // insert
  std::optional<Decision> decision;   // decide
  std::string payload;                // document: opaque JSON object text
};

// One JSON object per line.
std::string ToJsonLine(const JournalRecord& record);
// Throws provkb::Error on malformed lines.
JournalRecord ParseJsonLine(std::string_view line);
std::vector<JournalRecord> ReadJournal(const std::filesystem::path& path);

class Dataset {
 public:
  using Clock = std::function<std::string()>;
  using Listener = std::function<void(const JournalRecord&)>;

  Dataset();

  // Timestamp source for journal records (UTC ISO-8601 by default).
  void SetClock(Clock clock) { clock_ = std::move(clock); }
  // Called after each journaled mutation, e.g. to append to a file.
  void SetListener(Listener listener) { listener_ = std::move(listener); }

  // Temporary inserts are forced to pending and are suppressed (false, no
  // journal entry) when the triple is already validated. Validated inserts
  // default a pending status to accepted and settle a matching pending
  // temporary entry. Throws RejectedReadOnly for snapshots.
  bool Insert(const Triple& t, const Provenance& prov, const GraphSelector& graph);

  // Snapshots are loaded from files, never journaled.
  void AddSnapshot(const std::string& name, const std::vector<Triple>& triples);
  std::vector<std::string> SnapshotNames() const;

  // Distinct matches across the selected graphs, in triple order.
  std::vector<Triple> Match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o,
                            const std::vector<GraphSelector>& graphs) const;

  // Throws NotFound if the triple is not in the temporary graph and
  // AlreadyDecided if it is no longer pending.
  Provenance SetStatus(const Triple& key, const Decision& decision);

  // Appends an opaque record (used by the service for document metadata).
  void Record(JournalRecord record);

  // Re-applies journal records in order, keeping their timestamps.
  void Apply(const JournalRecord& record);
  static Dataset Replay(const std::vector<JournalRecord>& records);

  const Graph& temporary() const { return temporary_; }
  const Graph& validated() const { return validated_; }
  // Nullptr for unknown names.
  const Graph* snapshot(const std::string& name) const;
  const Graph* graph(const GraphSelector& selector) const;
  const std::vector<JournalRecord>& journal() const { return journal_; }

 private:
  bool InsertValidated(const Triple& t, Provenance prov);
  void Journal(JournalRecord record);

  Graph temporary_;
  Graph validated_;
  std::map<std::string, Graph> snapshots_;
  std::vector<JournalRecord> journal_;
  Clock clock_;
  Listener listener_;
  const std::string* replay_timestamp_ = nullptr;
};

// UTC "YYYY-MM-DDTHH:MM:SSZ".
std::string NowTimestamp();

}  // namespace provkb::store
