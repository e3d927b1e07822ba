#pragma once

// Two-stage relation extraction over dependency-parsed sentences. Stage A
// applies lexico-syntactic rules; stage B looks up per-property cue lemmas
// around co-occurring typed mentions, only where stage A found nothing for
// that (sentence, property).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "provkb/corpus.h"
#include "provkb/entity_type.h"
#include "provkb/ner.h"
#include "provkb/rdf.h"
#include "provkb/store.h"
#include "provkb/vocab.h"

namespace provkb::relex {

enum class Role { kSubjectOf, kObjectOf, kPair };

// Token selector inside a path constraint.
struct Selector {
  enum class Kind { kTrigger, kRoot, kBound, kNew };
  Kind kind = Kind::kBound;
  std::string name;              // kBound / kNew
  std::set<std::string> pos;     // kNew; empty = any
  std::set<std::string> lemmas;  // kNew; empty = any
};

// `governor -labels-> dependent`: the dependent's head is the governor and
// its label is one of `labels`.
struct PathConstraint {
  Selector governor;
  Selector dependent;
  std::set<std::string> labels;
};

struct LexSynRule {
  std::string id;
  TermId property;
  Role role = Role::kPair;
  std::set<std::string> trigger_lemmas;  // empty: no trigger token
  std::set<std::string> trigger_pos;     // empty: any
  std::vector<PathConstraint> path;
  std::map<std::string, std::set<EntityType>> netypes;
  std::string subject;  // variable name ("T" allowed)
  std::string object;
  std::string origin;   // free-form provenance note of the rule itself
};

struct RulePack {
  std::string labels;  // dependency label set the rules are written for
  std::vector<LexSynRule> rules;

  std::map<TermId, int> CountsByProperty() const;
};

struct RelationLexicon {
  TermId property;
  std::set<std::string> lemmas;
  EntityType domain_type;
  EntityType range_type;
};

struct CandidateTriple {
  Triple triple;
  store::Provenance provenance;
  std::string sentence_id;
  std::vector<int> evidence;  // token indices
  std::string subject_surface;
  std::string object_surface;
  std::vector<store::Attestation> attestations;
};

// Blocks of `key = value` lines separated by blank lines; '#' starts a
// comment. A block without `id` carries pack settings (labels). Throws
// ParseError or UnknownProperty.
RulePack LoadRulePack(std::string_view text, const vocab::VocabRegistry& registry);
// Tab-separated: property, domain type, range type, lemmas joined by '|'.
std::vector<RelationLexicon> LoadLexicons(std::string_view text,
                                          const vocab::VocabRegistry& registry);

struct ExtractOptions {
  int window = 3;
  double rule_confidence = 0.8;
  double lexicon_confidence = 0.5;
};

// Subject/object IRIs come from the covering mention's linked IRI, else a
// minted ex: IRI of its surface.
std::vector<CandidateTriple> ApplyRules(const corpus::Document& doc,
                                        const std::vector<ner::EntityMention>& mentions,
                                        const std::vector<LexSynRule>& rules,
                                        const ExtractOptions& options = {});
std::vector<CandidateTriple> ApplyLexicon(const corpus::Document& doc,
                                          const std::vector<ner::EntityMention>& mentions,
                                          const std::vector<RelationLexicon>& lexicons,
                                          const ExtractOptions& options = {});

// Stage A plus gated stage B, one candidate per (sentence, s, p, o).
std::vector<CandidateTriple> ExtractPerSentence(
    const corpus::Document& doc, const std::vector<ner::EntityMention>& mentions,
    const std::vector<LexSynRule>& rules, const std::vector<RelationLexicon>& lexicons,
    const ExtractOptions& options = {});
// As above, merged on (s, p, o) with one attestation per sighting.
std::vector<CandidateTriple> Extract(const corpus::Document& doc,
                                     const std::vector<ner::EntityMention>& mentions,
                                     const std::vector<LexSynRule>& rules,
                                     const std::vector<RelationLexicon>& lexicons,
                                     const ExtractOptions& options = {});
std::vector<CandidateTriple> Deduplicate(std::vector<CandidateTriple> candidates);

}  // namespace provkb::relex
