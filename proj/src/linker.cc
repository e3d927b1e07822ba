#include "provkb/linker.h"

#include <algorithm>
#include <cmath>
#include <cctype>

#include "provkb/errors.h"
#include "provkb/text.h"
#include "provkb/turtle.h"

namespace provkb::linker {

namespace {

bool HasWordChar(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80 || std::isalnum(c)) return true;
  }
  return false;
}

std::vector<std::string> LemmaBag(std::string_view description) {
  std::vector<std::string> out;
  for (const std::string& tok : text::Tokenize(description, /*split_punct=*/true)) {
    if (HasWordChar(tok)) out.push_back(text::Lower(tok));
  }
  return out;
}

std::map<std::string, double> TfIdf(const std::vector<std::string>& bag,
                                    const Snapshot& snapshot) {
  std::map<std::string, double> v;
  for (const std::string& w : bag) v[w] += 1.0;
  for (auto& [w, tf] : v) tf *= snapshot.Idf(w);
  return v;
}

}  // namespace

TermId AliasProperty() { return TermId::In(ns::kKb, "alias"); }
TermId DescriptionProperty() { return TermId::In(ns::kKb, "description"); }

Snapshot Snapshot::FromTriples(const std::vector<Triple>& triples) {
  Snapshot snap;
  for (const Triple& t : triples) {
    if (t.predicate.iri() == terms::RdfsLabel() && t.object.is_literal()) {
      KbEntity& e = snap.entities_[t.subject.iri()];
      e.iri = t.subject.iri();
      // Several labels: the smallest is the display label, the rest aliases.
      if (e.label.empty() || t.object.value() < e.label) {
        if (!e.label.empty()) e.aliases.insert(e.label);
        e.label = t.object.value();
      } else {
        e.aliases.insert(t.object.value());
      }
    }
  }
  for (const Triple& t : triples) {
    auto it = snap.entities_.find(t.subject.iri());
    if (it == snap.entities_.end()) continue;
    KbEntity& e = it->second;
    TermId p = t.predicate.iri();
    if (p == AliasProperty() && t.object.is_literal()) {
      e.aliases.insert(t.object.value());
    } else if (p == DescriptionProperty() && t.object.is_literal()) {
      for (std::string& w : LemmaBag(t.object.value())) e.description.push_back(std::move(w));
    } else if (t.object.is_iri() && p != terms::RdfType()) {
      auto other = snap.entities_.find(t.object.iri());
      if (other != snap.entities_.end() && other->first != e.iri) {
        e.neighbors.insert(other->first);
        other->second.neighbors.insert(e.iri);
      }
    }
  }
  for (const auto& [iri, e] : snap.entities_) {
    std::set<std::string> distinct(e.description.begin(), e.description.end());
    for (const std::string& w : distinct) ++snap.df_[w];
  }
  return snap;
}

Snapshot Snapshot::FromTurtle(std::string_view input) {
  return FromTriples(store::ParseTurtle(input, PrefixTable::Defaults()));
}

const KbEntity* Snapshot::Find(const TermId& iri) const {
  auto it = entities_.find(iri);
  return it == entities_.end() ? nullptr : &it->second;
}

double Snapshot::Idf(const std::string& lemma) const {
  auto it = df_.find(lemma);
  double df = it == df_.end() ? 0.0 : it->second;
  return std::log((1.0 + static_cast<double>(entities_.size())) / (1.0 + df)) + 1.0;
}

void Weights::Validate() const {
  for (double w : {string, context, connectivity}) {
    if (!std::isfinite(w) || w < 0) throw WeightsInvalid("weights must be finite and >= 0");
  }
  if (std::fabs(string + context + connectivity - 1.0) > 1e-6) {
    throw WeightsInvalid("weights must sum to 1");
  }
}

Weights Weights::Normalized(double s, double c, double n) {
  for (double w : {s, c, n}) {
    if (!std::isfinite(w) || w < 0) throw WeightsInvalid("weights must be finite and >= 0");
  }
  double sum = s + c + n;
  if (sum <= 0) throw WeightsInvalid("weights are all zero");
  return Weights{s / sum, c / sum, n / sum};
}

Weights Weights::Parse(std::string_view input) {
  std::vector<std::string> parts = text::Split(input, ',');
  if (parts.size() != 3) throw WeightsInvalid("expected three comma-separated weights");
  double v[3];
  for (int i = 0; i < 3; ++i) {
    try {
      size_t used = 0;
      std::string p(text::Trim(parts[static_cast<size_t>(i)]));
      v[i] = std::stod(p, &used);
      if (used != p.size()) throw WeightsInvalid("bad weight '" + p + "'");
    } catch (const std::logic_error&) {
      throw WeightsInvalid("bad weight '" + parts[static_cast<size_t>(i)] + "'");
    }
  }
  Weights w{v[0], v[1], v[2]};
  w.Validate();
  return w;
}

double EditRatio(std::string_view a, std::string_view b) {
  std::u32string x = text::Decode(text::NormalizeSurface(a));
  std::u32string y = text::Decode(text::NormalizeSurface(b));
  size_t longest = std::max(x.size(), y.size());
  if (longest == 0) return 1.0;
  std::vector<size_t> row(y.size() + 1);
  for (size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= x.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= y.size(); ++j) {
      size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (x[i - 1] == y[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return 1.0 - static_cast<double>(row[y.size()]) / static_cast<double>(longest);
}

namespace {

double BestStringSim(std::string_view surface, const KbEntity& e) {
  double best = EditRatio(surface, e.label);
  for (const std::string& a : e.aliases) best = std::max(best, EditRatio(surface, a));
  return best;
}

}  // namespace

std::vector<const KbEntity*> GenerateCandidates(std::string_view surface,
                                                const Snapshot& snapshot) {
  std::string norm = text::NormalizeSurface(surface);
  std::vector<const KbEntity*> out;
  if (norm.empty()) return out;
  for (const auto& [iri, e] : snapshot.entities()) {
    bool hit = text::NormalizeSurface(e.label) == norm;
    for (auto it = e.aliases.begin(); !hit && it != e.aliases.end(); ++it) {
      hit = text::NormalizeSurface(*it) == norm;
    }
    if (hit || BestStringSim(surface, e) >= kFuzzyRatio) out.push_back(&e);
  }
  return out;
}

double ContextSimilarity(const std::vector<std::string>& context,
                         const std::vector<std::string>& description,
                         const Snapshot& snapshot) {
  if (context.empty() || description.empty()) return 0.0;
  std::map<std::string, double> q = TfIdf(context, snapshot);
  std::map<std::string, double> d = TfIdf(description, snapshot);
  double dot = 0, nq = 0, nd = 0;
  for (const auto& [w, v] : q) {
    nq += v * v;
    auto it = d.find(w);
    if (it != d.end()) dot += v * it->second;
  }
  for (const auto& [w, v] : d) nd += v * v;
  if (nq == 0 || nd == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(nq) * std::sqrt(nd)), 0.0, 1.0);
}

std::vector<CandidateScore> ScoreCandidates(std::string_view surface,
                                            const std::vector<std::string>& context,
                                            const std::vector<const KbEntity*>& candidates,
                                            const std::set<TermId>& cohort,
                                            const Weights& weights,
                                            const Snapshot& snapshot) {
  weights.Validate();
  std::vector<CandidateScore> out;
  double denom = std::max<double>(1.0, static_cast<double>(cohort.size()));
  for (const KbEntity* e : candidates) {
    CandidateScore s;
    s.entity = e->iri;
    s.string_sim = BestStringSim(surface, *e);
    s.context_sim = ContextSimilarity(context, e->description, snapshot);
    int shared = 0;
    for (const TermId& n : e->neighbors) shared += cohort.count(n) ? 1 : 0;
    s.connectivity = shared / denom;
    s.total = weights.string * s.string_sim + weights.context * s.context_sim +
              weights.connectivity * s.connectivity;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const CandidateScore& a, const CandidateScore& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.entity < b.entity;
  });
  return out;
}

std::vector<std::string> DocumentContext(const corpus::Document& doc) {
  std::vector<std::string> out;
  for (const corpus::Sentence& s : doc.sentences) {
    for (const corpus::Token& t : s.tokens) {
      if (t.upos == "PUNCT" || !HasWordChar(t.form)) continue;
      out.push_back(text::Lower(t.lemma.empty() ? t.form : t.lemma));
    }
  }
  return out;
}

std::vector<LinkDecision> LinkDocument(const corpus::Document& doc,
                                       const std::vector<ner::EntityMention>& mentions,
                                       const Snapshot& snapshot, const Weights& weights,
                                       double tau) {
  weights.Validate();
  std::vector<std::string> context = DocumentContext(doc);
  std::vector<std::vector<const KbEntity*>> candidates;
  candidates.reserve(mentions.size());
  for (const ner::EntityMention& m : mentions) {
    candidates.push_back(GenerateCandidates(m.surface, snapshot));
  }
  std::vector<LinkDecision> out;
  for (size_t i = 0; i < mentions.size(); ++i) {
    const ner::EntityMention& m = mentions[i];
    std::set<TermId> cohort;
    for (size_t j = 0; j < mentions.size(); ++j) {
      if (j == i) continue;
      for (const KbEntity* e : candidates[j]) cohort.insert(e->iri);
    }
    LinkDecision d;
    d.sentence_id = m.sentence_id;
    d.span = m.span;
    d.surface = m.surface;
    d.ranking = ScoreCandidates(m.surface, context, candidates[i], cohort, weights, snapshot);
    if (!d.ranking.empty() && d.ranking.front().total >= tau) {
      d.result = d.ranking.front().entity;
      d.score = d.ranking.front();
    }
    out.push_back(std::move(d));
  }
  return out;
}

void ApplyLinks(std::vector<ner::EntityMention>* mentions,
                const std::vector<LinkDecision>& decisions) {
  for (size_t i = 0; i < mentions->size() && i < decisions.size(); ++i) {
    ner::EntityMention& m = (*mentions)[i];
    if (!m.linked_iri && decisions[i].result) m.linked_iri = decisions[i].result;
  }
}

}  // namespace provkb::linker
