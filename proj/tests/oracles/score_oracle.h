#pragma once

// Brute-force pairwise matcher for precision/recall.

#include <optional>
#include <vector>

#include "provkb/eval.h"

namespace oracle {

struct ScoreResult {
  int tp = 0, fp = 0, fn = 0;
  std::optional<double> precision, recall;
};

inline bool SameInstance(const provkb::eval::RelationInstance& a,
                         const provkb::eval::RelationInstance& b) {
  return a.property.str() == b.property.str() && a.subject == b.subject &&
         a.object == b.object && a.sentence_id == b.sentence_id;
}

inline ScoreResult Score(const std::vector<provkb::eval::RelationInstance>& gold,
                         const std::vector<provkb::eval::RelationInstance>& predicted) {
  ScoreResult r;
  for (const auto& p : predicted) {
    bool hit = false;
    for (const auto& g : gold) hit = hit || SameInstance(p, g);
    hit ? ++r.tp : ++r.fp;
  }
  for (const auto& g : gold) {
    bool hit = false;
    for (const auto& p : predicted) hit = hit || SameInstance(p, g);
    if (!hit) ++r.fn;
  }
  if (!predicted.empty()) r.precision = double(r.tp) / double(predicted.size());
  if (!gold.empty()) r.recall = double(gold.size() - r.fn) / double(gold.size());
  return r;
}

}  // namespace oracle
