#pragma once

// Gazetteer longest-match entity recognition with left/right/internal
// context cues, and the per-type mention summary.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "provkb/corpus.h"
#include "provkb/entity_type.h"
#include "provkb/rdf.h"

namespace provkb::ner {

struct GazetteerEntry {
  std::string surface;
  EntityType type;
  std::optional<TermId> iri;
};

enum class CueSide { kLeft, kRight, kInternal };

struct ContextRule {
  std::string id;
  CueSide side = CueSide::kLeft;
  std::set<std::string> lemmas;  // lowercased
  EntityType type;
  int priority = 0;
  // Right cues only: the cue token must be followed by a gazetteer match
  // of this type ("Nina de Nina Ricci").
  std::optional<EntityType> followed_by;
};

struct EntityMention {
  std::string sentence_id;
  corpus::Span span;
  std::string surface;
  EntityType type;
  std::optional<TermId> linked_iri;
  std::string context_rule;  // id of the deciding cue, empty if none
};

// Tab-separated: surface, type, optional IRI (prefixed name or <iri>).
// Throws ParseError.
std::vector<GazetteerEntry> LoadGazetteer(std::string_view text,
                                          const PrefixTable& prefixes);
// Tab-separated: id, side (left|right|internal), lemmas joined by '|',
// type, priority, optional "followedBy=<type>". Throws ParseError.
std::vector<ContextRule> LoadContextRules(std::string_view text);

// Cue lemmas are looked up this many tokens away from the mention.
inline constexpr int kCueWindow = 2;

// Non-overlapping mentions in document order. Overlaps are settled by span
// length, then cue priority, then the fixed type order.
std::vector<EntityMention> Recognize(const corpus::Document& doc,
                                     const std::vector<GazetteerEntry>& gazetteer,
                                     const std::vector<ContextRule>& rules);

struct SummaryItem {
  std::string surface;
  int count = 0;
  bool operator==(const SummaryItem&) const = default;
};

// Every type is present (possibly empty). Surfaces are merged
// case-insensitively; items are ordered by count desc, then surface.
using Summary = std::map<EntityType, std::vector<SummaryItem>>;
Summary Summarize(const std::vector<EntityMention>& mentions);

// ENT records for the mentions, reusable by the gold tooling.
corpus::GoldAnnotation MentionsAsGold(const std::vector<EntityMention>& mentions);

}  // namespace provkb::ner
