#include "provkb/ner.h"

#include <algorithm>
#include <charconv>
#include <map>

#include "provkb/errors.h"
#include "provkb/text.h"

namespace provkb::ner {

namespace {

TermId ParseIriField(const std::string& field, const PrefixTable& prefixes, int line) {
  try {
    if (field.size() > 2 && field.front() == '<' && field.back() == '>') {
      return TermId(field.substr(1, field.size() - 2));
    }
    return prefixes.Resolve(field);
  } catch (const Error& e) {
    throw ParseError(e.what(), line);
  }
}

struct CompiledEntry {
  const GazetteerEntry* entry;
  std::vector<std::string> tokens;  // lowercased
};

bool TokenMatches(const corpus::Token& t, const std::string& lowered) {
  return text::Lower(t.form) == lowered || text::Lower(t.lemma) == lowered;
}

struct Candidate {
  corpus::Span span;
  const GazetteerEntry* entry;
  int priority = 0;
  std::string rule;
};

class Matcher {
 public:
  explicit Matcher(const std::vector<GazetteerEntry>& gazetteer) {
    for (const GazetteerEntry& e : gazetteer) {
      CompiledEntry c{&e, {}};
      for (const std::string& tok : text::Tokenize(e.surface, /*split_punct=*/false)) {
        c.tokens.push_back(text::Lower(tok));
      }
      if (c.tokens.empty()) continue;
      by_first_[c.tokens[0]].push_back(std::move(c));
    }
  }

  // Every gazetteer match starting at token `start` (1-based).
  std::vector<std::pair<corpus::Span, const GazetteerEntry*>> At(
      const corpus::Sentence& s, int start) const {
    std::vector<std::pair<corpus::Span, const GazetteerEntry*>> out;
    const corpus::Token& first = s.at(start);
    std::set<std::string> keys = {text::Lower(first.form), text::Lower(first.lemma)};
    std::set<const GazetteerEntry*> seen;
    for (const std::string& key : keys) {
      auto it = by_first_.find(key);
      if (it == by_first_.end()) continue;
      for (const CompiledEntry& c : it->second) {
        int end = start + static_cast<int>(c.tokens.size()) - 1;
        if (end > s.size()) continue;
        bool ok = true;
        for (size_t k = 0; k < c.tokens.size() && ok; ++k) {
          ok = TokenMatches(s.at(start + static_cast<int>(k)), c.tokens[k]);
        }
        if (ok && seen.insert(c.entry).second) {
          out.push_back({corpus::Span{start, end}, c.entry});
        }
      }
    }
    return out;
  }

  bool StartsType(const corpus::Sentence& s, int start, EntityType type) const {
    if (start < 1 || start > s.size()) return false;
    for (const auto& [span, entry] : At(s, start)) {
      if (entry->type == type) return true;
    }
    return false;
  }

 private:
  std::map<std::string, std::vector<CompiledEntry>> by_first_;
};

std::string CueLemma(const corpus::Token& t) { return text::Lower(t.lemma); }

bool RuleApplies(const ContextRule& rule, const corpus::Sentence& s,
                 const corpus::Span& span, const Matcher& matcher) {
  switch (rule.side) {
    case CueSide::kInternal:
      for (int i = span.start; i <= span.end; ++i) {
        if (rule.lemmas.count(CueLemma(s.at(i)))) return true;
      }
      return false;
    case CueSide::kLeft:
      for (int i = span.start - 1; i >= std::max(1, span.start - kCueWindow); --i) {
        if (rule.lemmas.count(CueLemma(s.at(i))) ||
            rule.lemmas.count(text::Lower(s.at(i).form))) {
          return true;
        }
      }
      return false;
    case CueSide::kRight:
      for (int i = span.end + 1; i <= std::min(s.size(), span.end + kCueWindow); ++i) {
        if (!rule.lemmas.count(CueLemma(s.at(i))) &&
            !rule.lemmas.count(text::Lower(s.at(i).form))) {
          continue;
        }
        if (!rule.followed_by || matcher.StartsType(s, i + 1, *rule.followed_by)) {
          return true;
        }
      }
      return false;
  }
  return false;
}

CueSide ParseSide(const std::string& s, int line) {
  if (s == "left") return CueSide::kLeft;
  if (s == "right") return CueSide::kRight;
  if (s == "internal") return CueSide::kInternal;
  throw ParseError("cue side must be left, right or internal", line);
}

}  // namespace

std::vector<GazetteerEntry> LoadGazetteer(std::string_view input,
                                          const PrefixTable& prefixes) {
  std::vector<GazetteerEntry> out;
  int line_no = 0;
  for (const std::string& raw : text::Split(input, '\n')) {
    ++line_no;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = text::Split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw ParseError("gazetteer lines need surface, type and optional IRI", line_no);
    }
    GazetteerEntry e;
    e.surface = std::string(text::Trim(cols[0]));
    if (e.surface.empty()) throw ParseError("empty surface", line_no);
    auto type = ParseEntityType(cols[1]);
    if (!type) throw ParseError("unknown entity type '" + cols[1] + "'", line_no);
    e.type = *type;
    if (cols.size() == 3 && !text::Trim(cols[2]).empty()) {
      e.iri = ParseIriField(std::string(text::Trim(cols[2])), prefixes, line_no);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ContextRule> LoadContextRules(std::string_view input) {
  std::vector<ContextRule> out;
  int line_no = 0;
  for (const std::string& raw : text::Split(input, '\n')) {
    ++line_no;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = text::Split(line, '\t');
    if (cols.size() < 5 || cols.size() > 6) {
      throw ParseError("context rules need id, side, lemmas, type, priority", line_no);
    }
    ContextRule r;
    r.id = cols[0];
    r.side = ParseSide(cols[1], line_no);
    for (const std::string& l : text::Split(cols[2], '|')) {
      if (!text::Trim(l).empty()) r.lemmas.insert(text::Lower(text::Trim(l)));
    }
    if (r.lemmas.empty()) throw ParseError("empty cue lemma set", line_no);
    auto type = ParseEntityType(cols[3]);
    if (!type) throw ParseError("unknown entity type '" + cols[3] + "'", line_no);
    r.type = *type;
    auto [ptr, ec] = std::from_chars(cols[4].data(), cols[4].data() + cols[4].size(),
                                     r.priority);
    if (ec != std::errc()) throw ParseError("bad priority '" + cols[4] + "'", line_no);
    if (cols.size() == 6) {
      std::string_view f = text::Trim(cols[5]);
      if (!text::StartsWith(f, "followedBy=")) {
        throw ParseError("sixth field must be followedBy=<type>", line_no);
      }
      auto ft = ParseEntityType(f.substr(11));
      if (!ft) throw ParseError("unknown entity type in followedBy", line_no);
      if (r.side != CueSide::kRight) throw ParseError("followedBy needs a right cue", line_no);
      r.followed_by = *ft;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<EntityMention> Recognize(const corpus::Document& doc,
                                     const std::vector<GazetteerEntry>& gazetteer,
                                     const std::vector<ContextRule>& rules) {
  Matcher matcher(gazetteer);
  std::vector<EntityMention> out;
  for (const corpus::Sentence& s : doc.sentences) {
    std::vector<Candidate> cands;
    for (int i = 1; i <= s.size(); ++i) {
      for (const auto& [span, entry] : matcher.At(s, i)) {
        Candidate c{span, entry, 0, ""};
        // Rules are scanned in id order so equal priorities resolve the same
        // way whatever the file order.
        for (const ContextRule& r : rules) {
          if (r.type != entry->type || !RuleApplies(r, s, span, matcher)) continue;
          if (c.rule.empty() || r.priority > c.priority ||
              (r.priority == c.priority && r.id < c.rule)) {
            c.priority = r.priority;
            c.rule = r.id;
          }
        }
        cands.push_back(std::move(c));
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.span.length() != b.span.length()) return a.span.length() > b.span.length();
      if (a.priority != b.priority) return a.priority > b.priority;
      int ra = EntityTieRank(a.entry->type);
      int rb = EntityTieRank(b.entry->type);
      if (ra != rb) return ra < rb;
      if (a.span.start != b.span.start) return a.span.start < b.span.start;
      return a.entry->surface < b.entry->surface;
    });
    std::vector<EntityMention> chosen;
    for (const Candidate& c : cands) {
      bool overlaps = std::any_of(chosen.begin(), chosen.end(), [&](const EntityMention& m) {
        return m.span.Overlaps(c.span);
      });
      if (overlaps) continue;
      chosen.push_back(EntityMention{s.id, c.span, s.SpanText(c.span.start, c.span.end),
                                     c.entry->type, c.entry->iri, c.rule});
    }
    std::sort(chosen.begin(), chosen.end(), [](const EntityMention& a, const EntityMention& b) {
      return a.span.start < b.span.start;
    });
    out.insert(out.end(), chosen.begin(), chosen.end());
  }
  return out;
}

Summary Summarize(const std::vector<EntityMention>& mentions) {
  // type -> normalized surface -> (casing -> count)
  std::map<EntityType, std::map<std::string, std::map<std::string, int>>> groups;
  for (const EntityMention& m : mentions) {
    ++groups[m.type][text::NormalizeSurface(m.surface)][m.surface];
  }
  Summary out;
  for (EntityType t : kAllEntityTypes) out[t];
  for (const auto& [type, by_norm] : groups) {
    std::vector<SummaryItem>& items = out[type];
    for (const auto& [norm, casings] : by_norm) {
      SummaryItem item;
      int best = -1;
      for (const auto& [surface, count] : casings) {
        item.count += count;
        if (count > best) {
          best = count;
          item.surface = surface;
        }
      }
      items.push_back(std::move(item));
    }
    std::sort(items.begin(), items.end(), [](const SummaryItem& a, const SummaryItem& b) {
      if (a.count != b.count) return a.count > b.count;
      std::string fa = text::FoldForSort(a.surface);
      std::string fb = text::FoldForSort(b.surface);
      if (fa != fb) return fa < fb;
      return a.surface < b.surface;
    });
  }
  return out;
}

corpus::GoldAnnotation MentionsAsGold(const std::vector<EntityMention>& mentions) {
  corpus::GoldAnnotation gold;
  for (const EntityMention& m : mentions) {
    gold.entities.push_back({m.sentence_id, m.span, m.type});
  }
  return gold;
}

}  // namespace provkb::ner
