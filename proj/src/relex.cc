#include "provkb/relex.h"

#include <algorithm>
#include <functional>
#include <regex>

#include "provkb/errors.h"
#include "provkb/text.h"

namespace provkb::relex {

namespace {

std::set<std::string> SplitSet(std::string_view s, bool lower) {
  std::set<std::string> out;
  for (const std::string& part : text::Split(s, '|')) {
    std::string_view t = text::Trim(part);
    if (t.empty()) continue;
    out.insert(lower ? text::Lower(t) : std::string(t));
  }
  return out;
}

Selector ParseSelector(const std::string& raw, const std::set<std::string>& bound,
                       int line) {
  Selector sel;
  if (raw == "T") {
    sel.kind = Selector::Kind::kTrigger;
    return sel;
  }
  if (raw == "ROOT") {
    sel.kind = Selector::Kind::kRoot;
    return sel;
  }
  size_t colon = raw.find(':');
  if (colon == std::string::npos) {
    if (!bound.count(raw)) throw ParseError("selector '" + raw + "' is not bound yet", line);
    sel.kind = Selector::Kind::kBound;
    sel.name = raw;
    return sel;
  }
  sel.kind = Selector::Kind::kNew;
  sel.name = raw.substr(0, colon);
  if (sel.name.empty() || sel.name == "T" || sel.name == "ROOT") {
    throw ParseError("bad selector name in '" + raw + "'", line);
  }
  if (bound.count(sel.name)) throw ParseError("selector '" + sel.name + "' bound twice", line);
  std::string rest = raw.substr(colon + 1);
  size_t brace = rest.find('{');
  std::string pos = rest.substr(0, brace);
  if (brace != std::string::npos) {
    if (rest.back() != '}') throw ParseError("unclosed '{' in '" + raw + "'", line);
    sel.lemmas = SplitSet(rest.substr(brace + 1, rest.size() - brace - 2), true);
  }
  if (pos != "*") sel.pos = SplitSet(pos, false);
  return sel;
}

Role ParseRole(const std::string& s, int line) {
  if (s == "subjectOf") return Role::kSubjectOf;
  if (s == "objectOf") return Role::kObjectOf;
  if (s == "pair") return Role::kPair;
  throw ParseError("role must be subjectOf, objectOf or pair", line);
}

LexSynRule BuildRule(const std::map<std::string, std::pair<std::string, int>>& fields,
                     const vocab::VocabRegistry& registry, int block_line) {
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &it->second.first;
  };
  auto line_of = [&](const std::string& key) {
    auto it = fields.find(key);
    return it == fields.end() ? block_line : it->second.second;
  };
  for (const char* required : {"id", "property", "role", "path"}) {
    if (!get(required)) {
      throw ParseError(std::string("rule is missing '") + required + "'", block_line);
    }
  }
  LexSynRule r;
  r.id = *get("id");
  TermId prop;
  try {
    prop = registry.Resolve(*get("property"));
  } catch (const Error&) {
    throw UnknownProperty("rule " + r.id + ": unknown property " + *get("property"));
  }
  auto np = registry.NormalizeProperty(prop);
  if (!np.known) throw UnknownProperty("rule " + r.id + ": unknown property " + prop.str());
  r.property = np.id;
  r.role = ParseRole(*get("role"), line_of("role"));
  if (const std::string* v = get("lemmas")) r.trigger_lemmas = SplitSet(*v, true);
  if (const std::string* v = get("trigger_pos")) r.trigger_pos = SplitSet(*v, false);
  if (const std::string* v = get("origin")) r.origin = *v;

  static const std::regex kConstraint(R"(^\s*(\S+)\s+-(\S+?)->\s+(\S+)\s*$)");
  std::set<std::string> bound;
  for (const std::string& part : text::Split(*get("path"), ';')) {
    if (text::Trim(part).empty()) continue;
    std::smatch m;
    if (!std::regex_match(part, m, kConstraint)) {
      throw ParseError("rule " + r.id + ": cannot read path step '" + part + "'",
                       line_of("path"));
    }
    PathConstraint c;
    c.governor = ParseSelector(m[1].str(), bound, line_of("path"));
    if (c.governor.kind == Selector::Kind::kNew) bound.insert(c.governor.name);
    c.dependent = ParseSelector(m[3].str(), bound, line_of("path"));
    if (c.dependent.kind == Selector::Kind::kNew) bound.insert(c.dependent.name);
    if (c.dependent.kind == Selector::Kind::kRoot) {
      throw ParseError("rule " + r.id + ": ROOT cannot be a dependent", line_of("path"));
    }
    c.labels = SplitSet(m[2].str(), false);
    for (const Selector* s : {&c.governor, &c.dependent}) {
      if (s->kind == Selector::Kind::kTrigger && r.trigger_lemmas.empty()) {
        throw ParseError("rule " + r.id + ": T used without trigger lemmas",
                         line_of("path"));
      }
    }
    r.path.push_back(std::move(c));
  }
  if (r.path.empty()) throw ParseError("rule " + r.id + ": empty path", line_of("path"));

  auto check_var = [&](const std::string& v, const std::string& key) {
    if (v == "T" ? r.trigger_lemmas.empty() : !bound.count(v)) {
      throw ParseError("rule " + r.id + ": " + key + " '" + v + "' is not bound",
                       line_of(key));
    }
  };
  if (const std::string* v = get("subject")) r.subject = *v;
  if (const std::string* v = get("object")) r.object = *v;
  bool needs_subject = r.role != Role::kObjectOf;
  bool needs_object = r.role != Role::kSubjectOf;
  if (needs_subject) {
    if (r.subject.empty()) throw ParseError("rule " + r.id + ": subject missing", block_line);
    check_var(r.subject, "subject");
  }
  if (needs_object) {
    if (r.object.empty()) throw ParseError("rule " + r.id + ": object missing", block_line);
    check_var(r.object, "object");
  }
  if (const std::string* v = get("netypes")) {
    for (const std::string& item : text::Split(*v, ',')) {
      std::string_view it = text::Trim(item);
      if (it.empty()) continue;
      size_t eq = it.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("rule " + r.id + ": netypes entries are VAR=Type|Type",
                         line_of("netypes"));
      }
      std::string var(text::Trim(it.substr(0, eq)));
      check_var(var, "netypes");
      for (const std::string& t : SplitSet(it.substr(eq + 1), false)) {
        auto type = ParseEntityType(t);
        if (!type) {
          throw ParseError("rule " + r.id + ": unknown entity type '" + t + "'",
                           line_of("netypes"));
        }
        r.netypes[var].insert(*type);
      }
    }
  }
  return r;
}

// --- matching ------------------------------------------------------------

struct Entity {
  std::string surface;
  TermId iri;
  corpus::Span span;
};

class SentenceView {
 public:
  SentenceView(const corpus::Sentence& s, const std::vector<ner::EntityMention>& mentions)
      : s_(s), cover_(static_cast<size_t>(s.size()) + 1, -1) {
    for (size_t i = 0; i < mentions.size(); ++i) {
      if (mentions[i].sentence_id != s.id) continue;
      mentions_.push_back(&mentions[i]);
      for (int t = mentions[i].span.start; t <= mentions[i].span.end && t <= s.size(); ++t) {
        cover_[static_cast<size_t>(t)] = static_cast<int>(mentions_.size() - 1);
      }
    }
  }

  const corpus::Sentence& sentence() const { return s_; }
  const std::vector<const ner::EntityMention*>& mentions() const { return mentions_; }

  const ner::EntityMention* MentionAt(int token) const {
    if (token < 1 || token > s_.size()) return nullptr;
    int m = cover_[static_cast<size_t>(token)];
    return m < 0 ? nullptr : mentions_[static_cast<size_t>(m)];
  }

  Entity EntityAt(int token) const {
    if (const ner::EntityMention* m = MentionAt(token)) {
      return {m->surface, m->linked_iri ? *m->linked_iri : MintIri(m->surface), m->span};
    }
    const std::string& form = s_.at(token).form;
    return {form, MintIri(form), corpus::Span{token, token}};
  }

 private:
  const corpus::Sentence& s_;
  std::vector<const ner::EntityMention*> mentions_;
  std::vector<int> cover_;
};

bool PosMatches(const std::set<std::string>& pos, const corpus::Token& t) {
  return pos.empty() || pos.count(t.xpos) || pos.count(t.upos);
}

bool LemmaMatches(const std::set<std::string>& lemmas, const corpus::Token& t) {
  return lemmas.empty() || lemmas.count(text::Lower(t.lemma));
}

struct Binding {
  int trigger = -1;
  std::map<std::string, int> vars;

  int Get(const std::string& name) const {
    if (name == "T") return trigger;
    auto it = vars.find(name);
    return it == vars.end() ? -1 : it->second;
  }
  bool Uses(int token) const {
    if (token == trigger) return true;
    for (const auto& [n, t] : vars) {
      if (t == token) return true;
    }
    return false;
  }
};

void MatchPath(const corpus::Sentence& s, const LexSynRule& rule, size_t step,
               Binding* b, const std::function<void(const Binding&)>& emit) {
  if (step == rule.path.size()) {
    emit(*b);
    return;
  }
  const PathConstraint& c = rule.path[step];
  auto resolve = [&](const Selector& sel) -> int {
    switch (sel.kind) {
      case Selector::Kind::kTrigger: return b->trigger;
      case Selector::Kind::kRoot: return 0;
      case Selector::Kind::kBound: return b->Get(sel.name);
      case Selector::Kind::kNew: return -1;
    }
    return -1;
  };
  auto fits = [&](const Selector& sel, int token) {
    if (token < 1 || token > s.size()) return false;
    const corpus::Token& t = s.at(token);
    return PosMatches(sel.pos, t) && LemmaMatches(sel.lemmas, t) && !b->Uses(token);
  };
  auto edge = [&](int gov, int dep) {
    const corpus::Token& d = s.at(dep);
    return d.head == gov && c.labels.count(d.deprel) > 0;
  };
  int gov = resolve(c.governor);
  int dep = resolve(c.dependent);
  bool gov_new = c.governor.kind == Selector::Kind::kNew;
  bool dep_new = c.dependent.kind == Selector::Kind::kNew;

  auto recurse_with = [&](const Selector* g, int gt, const Selector* d, int dt) {
    if (g) b->vars[g->name] = gt;
    if (d) b->vars[d->name] = dt;
    MatchPath(s, rule, step + 1, b, emit);
    if (g) b->vars.erase(g->name);
    if (d) b->vars.erase(d->name);
  };

  if (!gov_new && !dep_new) {
    if (gov >= 0 && dep >= 1 && edge(gov, dep)) MatchPath(s, rule, step + 1, b, emit);
    return;
  }
  if (!gov_new && dep_new) {
    if (gov < 0) return;
    for (int d = 1; d <= s.size(); ++d) {
      if (edge(gov, d) && fits(c.dependent, d)) recurse_with(nullptr, 0, &c.dependent, d);
    }
    return;
  }
  if (gov_new && !dep_new) {
    if (dep < 1) return;
    int g = s.at(dep).head;
    if (g >= 1 && edge(g, dep) && fits(c.governor, g)) {
      recurse_with(&c.governor, g, nullptr, 0);
    }
    return;
  }
  for (int d = 1; d <= s.size(); ++d) {
    int g = s.at(d).head;
    if (g < 1 || g == d || !edge(g, d) || !fits(c.dependent, d)) continue;
    if (!fits(c.governor, g)) continue;
    b->vars[c.governor.name] = g;
    b->vars[c.dependent.name] = d;
    MatchPath(s, rule, step + 1, b, emit);
    b->vars.erase(c.dependent.name);
    b->vars.erase(c.governor.name);
  }
}

bool NeTypesHold(const LexSynRule& rule, const Binding& b, const SentenceView& view) {
  for (const auto& [var, types] : rule.netypes) {
    const ner::EntityMention* m = view.MentionAt(b.Get(var));
    if (!m || !types.count(m->type)) return false;
  }
  return true;
}

int AnchorOf(const LexSynRule& rule, const Binding& b) {
  if (!rule.trigger_lemmas.empty()) return b.trigger;
  for (const PathConstraint& c : rule.path) {
    for (const Selector* s : {&c.governor, &c.dependent}) {
      if (s->kind == Selector::Kind::kNew) return b.Get(s->name);
    }
  }
  return 0;
}

struct Half {
  std::string rule_id;
  int token;
  std::vector<int> evidence;
};

std::vector<int> EvidenceOf(const Binding& b) {
  std::set<int> toks;
  if (b.trigger > 0) toks.insert(b.trigger);
  for (const auto& [n, t] : b.vars) toks.insert(t);
  return {toks.begin(), toks.end()};
}

store::Provenance BaseProvenance(const corpus::Document& doc, const std::string& sentence_id,
                                 store::Extractor extractor, double confidence) {
  store::Provenance p;
  p.source_url = doc.source_url;
  p.date = doc.date;
  p.extractor = std::move(extractor);
  p.status = store::Status::kPending;
  p.confidence = confidence;
  p.document_id = doc.id;
  p.sentence_id = sentence_id;
  return p;
}

CandidateTriple MakeCandidate(const corpus::Document& doc, const std::string& sentence_id,
                              const TermId& property, const Entity& subject,
                              const Entity& object, store::Extractor extractor,
                              double confidence, std::vector<int> evidence) {
  CandidateTriple c;
  c.triple = Triple{Term::Iri(subject.iri), Term::Iri(property), Term::Iri(object.iri)};
  c.provenance = BaseProvenance(doc, sentence_id, std::move(extractor), confidence);
  c.sentence_id = sentence_id;
  std::sort(evidence.begin(), evidence.end());
  evidence.erase(std::unique(evidence.begin(), evidence.end()), evidence.end());
  c.evidence = std::move(evidence);
  c.subject_surface = subject.surface;
  c.object_surface = object.surface;
  c.attestations.push_back({doc.source_url, doc.id, sentence_id, c.provenance.extractor});
  return c;
}

// Keeps the first candidate per (sentence, triple).
std::vector<CandidateTriple> UniquePerSentence(std::vector<CandidateTriple> in) {
  std::set<std::pair<std::string, Triple>> seen;
  std::vector<CandidateTriple> out;
  for (CandidateTriple& c : in) {
    if (seen.insert({c.sentence_id, c.triple}).second) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::map<TermId, int> RulePack::CountsByProperty() const {
  std::map<TermId, int> counts;
  for (const LexSynRule& r : rules) ++counts[r.property];
  return counts;
}

RulePack LoadRulePack(std::string_view input, const vocab::VocabRegistry& registry) {
  RulePack pack;
  std::map<std::string, std::pair<std::string, int>> fields;
  int block_line = 0;
  int line_no = 0;
  std::set<std::string> ids;
  auto flush = [&]() {
    if (fields.empty()) return;
    if (!fields.count("id")) {
      if (auto it = fields.find("labels"); it != fields.end()) pack.labels = it->second.first;
    } else {
      LexSynRule r = BuildRule(fields, registry, block_line);
      if (!ids.insert(r.id).second) throw ParseError("duplicate rule id " + r.id, block_line);
      pack.rules.push_back(std::move(r));
    }
    fields.clear();
  };
  for (const std::string& raw : text::Split(input, '\n')) {
    ++line_no;
    std::string_view line = text::Trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    std::string key(text::Trim(line.substr(0, eq)));
    std::string value(text::Trim(line.substr(eq + 1)));
    if (fields.empty()) block_line = line_no;
    if (key == "path" && fields.count("path")) {
      // Continuation lines extend the path.
      fields["path"].first += " ; " + value;
      continue;
    }
    if (fields.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
    fields[key] = {value, line_no};
  }
  flush();
  std::sort(pack.rules.begin(), pack.rules.end(),
            [](const LexSynRule& a, const LexSynRule& b) { return a.id < b.id; });
  return pack;
}

std::vector<RelationLexicon> LoadLexicons(std::string_view input,
                                          const vocab::VocabRegistry& registry) {
  std::vector<RelationLexicon> out;
  int line_no = 0;
  for (const std::string& raw : text::Split(input, '\n')) {
    ++line_no;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = text::Split(line, '\t');
    if (cols.size() != 4) {
      throw ParseError("lexicon lines need property, domain, range, lemmas", line_no);
    }
    RelationLexicon lex;
    TermId prop;
    try {
      prop = registry.Resolve(text::Trim(cols[0]));
    } catch (const Error&) {
      throw UnknownProperty("unknown property '" + cols[0] + "'");
    }
    auto np = registry.NormalizeProperty(prop);
    if (!np.known) throw UnknownProperty("unknown property '" + cols[0] + "'");
    lex.property = np.id;
    auto d = ParseEntityType(cols[1]);
    auto r = ParseEntityType(cols[2]);
    if (!d || !r) throw ParseError("unknown entity type", line_no);
    lex.domain_type = *d;
    lex.range_type = *r;
    lex.lemmas = SplitSet(cols[3], true);
    if (lex.lemmas.empty()) throw ParseError("empty lemma set", line_no);
    out.push_back(std::move(lex));
  }
  return out;
}

std::vector<CandidateTriple> ApplyRules(const corpus::Document& doc,
                                        const std::vector<ner::EntityMention>& mentions,
                                        const std::vector<LexSynRule>& rules_in,
                                        const ExtractOptions& options) {
  std::vector<const LexSynRule*> rules;
  for (const LexSynRule& r : rules_in) rules.push_back(&r);
  std::sort(rules.begin(), rules.end(),
            [](const LexSynRule* a, const LexSynRule* b) { return a->id < b->id; });

  std::vector<CandidateTriple> out;
  for (const corpus::Sentence& s : doc.sentences) {
    if (!s.parsed) continue;
    SentenceView view(s, mentions);
    // (property, anchor) -> halves
    std::map<std::pair<TermId, int>, std::vector<Half>> subjects;
    std::map<std::pair<TermId, int>, std::vector<Half>> objects;
    std::vector<CandidateTriple> sentence_out;

    for (const LexSynRule* rule : rules) {
      auto on_match = [&](const Binding& b) {
        if (!NeTypesHold(*rule, b, view)) return;
        std::vector<int> evidence = EvidenceOf(b);
        int anchor = AnchorOf(*rule, b);
        switch (rule->role) {
          case Role::kSubjectOf:
            subjects[{rule->property, anchor}].push_back({rule->id, b.Get(rule->subject), evidence});
            break;
          case Role::kObjectOf:
            objects[{rule->property, anchor}].push_back({rule->id, b.Get(rule->object), evidence});
            break;
          case Role::kPair: {
            Entity subj = view.EntityAt(b.Get(rule->subject));
            Entity obj = view.EntityAt(b.Get(rule->object));
            if (subj.iri == obj.iri) break;
            sentence_out.push_back(MakeCandidate(
                doc, s.id, rule->property, subj, obj,
                {store::ExtractorKind::kLexSynRule, rule->id}, options.rule_confidence,
                evidence));
            break;
          }
        }
      };
      Binding b;
      if (rule->trigger_lemmas.empty()) {
        MatchPath(s, *rule, 0, &b, on_match);
        continue;
      }
      for (int t = 1; t <= s.size(); ++t) {
        const corpus::Token& tok = s.at(t);
        if (!rule->trigger_lemmas.count(text::Lower(tok.lemma)) ||
            !PosMatches(rule->trigger_pos, tok)) {
          continue;
        }
        b.trigger = t;
        MatchPath(s, *rule, 0, &b, on_match);
        b.trigger = -1;
      }
    }

    for (const auto& [key, subj_halves] : subjects) {
      auto it = objects.find(key);
      if (it == objects.end()) continue;
      for (const Half& sh : subj_halves) {
        for (const Half& oh : it->second) {
          Entity subj = view.EntityAt(sh.token);
          Entity obj = view.EntityAt(oh.token);
          if (subj.iri == obj.iri || subj.span.Overlaps(obj.span)) continue;
          std::vector<int> evidence = sh.evidence;
          evidence.insert(evidence.end(), oh.evidence.begin(), oh.evidence.end());
          sentence_out.push_back(MakeCandidate(
              doc, s.id, key.first, subj, obj,
              {store::ExtractorKind::kLexSynRule, sh.rule_id + "+" + oh.rule_id},
              options.rule_confidence, evidence));
        }
      }
    }
    std::stable_sort(sentence_out.begin(), sentence_out.end(),
                     [](const CandidateTriple& a, const CandidateTriple& b) {
                       if (a.triple != b.triple) return a.triple < b.triple;
                       return a.provenance.extractor.id < b.provenance.extractor.id;
                     });
    for (CandidateTriple& c : UniquePerSentence(std::move(sentence_out))) {
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<CandidateTriple> ApplyLexicon(const corpus::Document& doc,
                                          const std::vector<ner::EntityMention>& mentions,
                                          const std::vector<RelationLexicon>& lexicons,
                                          const ExtractOptions& options) {
  std::vector<CandidateTriple> out;
  for (const corpus::Sentence& s : doc.sentences) {
    SentenceView view(s, mentions);
    std::vector<CandidateTriple> sentence_out;
    for (const RelationLexicon& lex : lexicons) {
      for (const ner::EntityMention* d : view.mentions()) {
        if (d->type != lex.domain_type) continue;
        for (const ner::EntityMention* r : view.mentions()) {
          if (r == d || r->type != lex.range_type) continue;
          int lo = std::max(1, std::min(d->span.start, r->span.start) - options.window);
          int hi = std::min(s.size(), std::max(d->span.end, r->span.end) + options.window);
          int hit = -1;
          for (int t = lo; t <= hi && hit < 0; ++t) {
            if ((t >= d->span.start && t <= d->span.end) ||
                (t >= r->span.start && t <= r->span.end)) {
              continue;
            }
            const corpus::Token& tok = s.at(t);
            if (lex.lemmas.count(text::Lower(tok.lemma)) ||
                lex.lemmas.count(text::Lower(tok.form))) {
              hit = t;
            }
          }
          if (hit < 0) continue;
          Entity subj = view.EntityAt(d->span.start);
          Entity obj = view.EntityAt(r->span.start);
          if (subj.iri == obj.iri) continue;
          std::vector<int> evidence = {hit};
          for (int t = d->span.start; t <= d->span.end; ++t) evidence.push_back(t);
          for (int t = r->span.start; t <= r->span.end; ++t) evidence.push_back(t);
          std::string lemma = text::Lower(s.at(hit).lemma);
          sentence_out.push_back(MakeCandidate(
              doc, s.id, lex.property, subj, obj,
              {store::ExtractorKind::kLexicon, lex.property.str() + "#" + lemma},
              options.lexicon_confidence, evidence));
        }
      }
    }
    std::stable_sort(sentence_out.begin(), sentence_out.end(),
                     [](const CandidateTriple& a, const CandidateTriple& b) {
                       return a.triple < b.triple;
                     });
    for (CandidateTriple& c : UniquePerSentence(std::move(sentence_out))) {
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<CandidateTriple> ExtractPerSentence(
    const corpus::Document& doc, const std::vector<ner::EntityMention>& mentions,
    const std::vector<LexSynRule>& rules, const std::vector<RelationLexicon>& lexicons,
    const ExtractOptions& options) {
  std::vector<CandidateTriple> stage_a = ApplyRules(doc, mentions, rules, options);
  std::set<std::pair<std::string, TermId>> covered;
  for (const CandidateTriple& c : stage_a) {
    covered.insert({c.sentence_id, c.triple.predicate.iri()});
  }
  std::vector<CandidateTriple> merged = stage_a;
  for (CandidateTriple& c : ApplyLexicon(doc, mentions, lexicons, options)) {
    if (covered.count({c.sentence_id, c.triple.predicate.iri()})) continue;
    merged.push_back(std::move(c));
  }
  // Document order of sentences, stage A before stage B within a sentence.
  std::map<std::string, size_t> order;
  for (size_t i = 0; i < doc.sentences.size(); ++i) order[doc.sentences[i].id] = i;
  std::stable_sort(merged.begin(), merged.end(),
                   [&](const CandidateTriple& a, const CandidateTriple& b) {
                     return order[a.sentence_id] < order[b.sentence_id];
                   });
  return UniquePerSentence(std::move(merged));
}

std::vector<CandidateTriple> Deduplicate(std::vector<CandidateTriple> candidates) {
  std::vector<CandidateTriple> out;
  std::map<Triple, size_t> index;
  for (CandidateTriple& c : candidates) {
    auto it = index.find(c.triple);
    if (it == index.end()) {
      index.emplace(c.triple, out.size());
      out.push_back(std::move(c));
      continue;
    }
    CandidateTriple& kept = out[it->second];
    kept.attestations.insert(kept.attestations.end(), c.attestations.begin(),
                             c.attestations.end());
  }
  return out;
}

std::vector<CandidateTriple> Extract(const corpus::Document& doc,
                                     const std::vector<ner::EntityMention>& mentions,
                                     const std::vector<LexSynRule>& rules,
                                     const std::vector<RelationLexicon>& lexicons,
                                     const ExtractOptions& options) {
  return Deduplicate(ExtractPerSentence(doc, mentions, rules, lexicons, options));
}

}  // namespace provkb::relex
