#pragma once

// Entity linking against a local KB snapshot: candidates by label, alias
// or close spelling, ranked by a weighted mix of string similarity, TF-IDF
// context similarity and connectivity to the other mentions' candidates.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "provkb/corpus.h"
#include "provkb/ner.h"
#include "provkb/rdf.h"

namespace provkb::linker {

struct KbEntity {
  TermId iri;
  std::string label;
  std::set<std::string> aliases;
  std::vector<std::string> description;  // lowercased lemma bag
  std::set<TermId> neighbors;
};

// Annotation properties read from snapshot files.
TermId AliasProperty();        // kb:alias
TermId DescriptionProperty();  // kb:description

class Snapshot {
 public:
  // Entities are the subjects carrying rdfs:label. Any triple linking two
  // entities makes them neighbors (in both directions).
  static Snapshot FromTriples(const std::vector<Triple>& triples);
  static Snapshot FromTurtle(std::string_view text);

  const std::map<TermId, KbEntity>& entities() const { return entities_; }
  const KbEntity* Find(const TermId& iri) const;
  size_t size() const { return entities_.size(); }

  // Inverse document frequency of a description lemma:
  // ln((1 + N) / (1 + df)) + 1.
  double Idf(const std::string& lemma) const;

 private:
  std::map<TermId, KbEntity> entities_;
  std::map<std::string, int> df_;
};

struct Weights {
  double string = 0.4;
  double context = 0.3;
  double connectivity = 0.3;

  // Throws WeightsInvalid on negative or non-finite weights or a sum that
  // is not 1.
  void Validate() const;
  // Scales non-negative weights to sum 1. Throws WeightsInvalid if all zero.
  static Weights Normalized(double string, double context, double connectivity);
  // "0.4,0.3,0.3".
  static Weights Parse(std::string_view text);
};

inline constexpr double kDefaultTau = 0.5;
inline constexpr double kFuzzyRatio = 0.8;

// 1 - levenshtein / max length, over code points of the normalized
// (lowercased, whitespace-collapsed) strings. Two empty strings give 1.
double EditRatio(std::string_view a, std::string_view b);

struct CandidateScore {
  TermId entity;
  double string_sim = 0;
  double context_sim = 0;
  double connectivity = 0;
  double total = 0;
};

struct LinkDecision {
  std::string sentence_id;
  corpus::Span span;
  std::string surface;
  std::optional<TermId> result;  // nullopt is NIL
  std::optional<CandidateScore> score;
  std::vector<CandidateScore> ranking;
};

// Exact normalized label or alias matches, plus entities whose label or an
// alias is within kFuzzyRatio of the surface. Sorted by IRI.
std::vector<const KbEntity*> GenerateCandidates(std::string_view surface,
                                                const Snapshot& snapshot);

// Cosine of TF-IDF vectors; 0 when either side is empty.
double ContextSimilarity(const std::vector<std::string>& context,
                         const std::vector<std::string>& description,
                         const Snapshot& snapshot);

// Ranked by total desc, then IRI asc. Throws WeightsInvalid.
std::vector<CandidateScore> ScoreCandidates(std::string_view surface,
                                            const std::vector<std::string>& context,
                                            const std::vector<const KbEntity*>& candidates,
                                            const std::set<TermId>& cohort,
                                            const Weights& weights,
                                            const Snapshot& snapshot);

// Lowercased lemmas of the document's word tokens.
std::vector<std::string> DocumentContext(const corpus::Document& doc);

// One decision per mention, in mention order. A mention's cohort is the
// union of every other mention's candidates.
std::vector<LinkDecision> LinkDocument(const corpus::Document& doc,
                                       const std::vector<ner::EntityMention>& mentions,
                                       const Snapshot& snapshot,
                                       const Weights& weights = {},
                                       double tau = kDefaultTau);

// Fills linked_iri of mentions that have none from non-NIL decisions.
void ApplyLinks(std::vector<ner::EntityMention>* mentions,
                const std::vector<LinkDecision>& decisions);

}  // namespace provkb::linker
