#pragma once

// Random graphs and queries in a tiny string-term model, plus a
// brute-force evaluator that tries every assignment of the variables over
// the term universe.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Terms are written "ex:n3", "ex:p1" or "\"v0\""; variables "?a".
using Slot = std::string;
using Row3 = std::array<std::string, 3>;

struct OPattern {
  Slot s, p, o;
};

struct OQuery {
  bool distinct = false;
  std::vector<std::string> projection;  // without '?'
  std::vector<OPattern> positive;
  std::vector<OPattern> block;  // NOT EXISTS; empty = none

  std::string ToSparql() const {
    std::string out = "PREFIX ex: <http://example.org#>\nSELECT ";
    if (distinct) out += "DISTINCT ";
    for (const auto& v : projection) out += "?" + v + " ";
    out += "WHERE {\n";
    for (const auto& t : positive) out += "  " + t.s + " " + t.p + " " + t.o + " .\n";
    if (!block.empty()) {
      out += "  FILTER NOT EXISTS {";
      for (const auto& t : block) out += " " + t.s + " " + t.p + " " + t.o + " .";
      out += " }\n";
    }
    return out + "}\n";
  }
};

struct OGraph {
  std::set<Row3> triples;
  std::vector<std::string> universe;

  std::string ToTurtle() const {
    std::string out = "@prefix ex: <http://example.org#> .\n";
    for (const auto& t : triples) out += t[0] + " " + t[1] + " " + t[2] + " .\n";
    return out;
  }
};

inline bool IsVar(const Slot& s) { return !s.empty() && s[0] == '?'; }

class QueryGen {
 public:
  explicit QueryGen(unsigned seed) : rng_(seed) {}

  OGraph Graph() {
    OGraph g;
    for (int i = 0; i < kNodes; ++i) g.universe.push_back(Node(i));
    for (int i = 0; i < kPreds; ++i) g.universe.push_back(Pred(i));
    for (int i = 0; i < kLits; ++i) g.universe.push_back(Lit(i));
    int n = Uniform(0, 200);
    for (int k = 0; k < n; ++k) {
      std::string o = Uniform(0, 4) == 0 ? Lit(Uniform(0, kLits - 1)) : Node(Uniform(0, kNodes - 1));
      g.triples.insert({Node(Uniform(0, kNodes - 1)), Pred(Uniform(0, kPreds - 1)), o});
    }
    return g;
  }

  OQuery Query() {
    OQuery q;
    q.distinct = Uniform(0, 2) == 0;
    int n = Uniform(1, 3);
    std::set<std::string> vars;
    for (int i = 0; i < n; ++i) {
      OPattern t{SubjectSlot({"a", "b", "c"}), PredicateSlot({"c"}), ObjectSlot({"a", "b", "c"})};
      for (const Slot* s : {&t.s, &t.p, &t.o}) {
        if (IsVar(*s)) vars.insert(s->substr(1));
      }
      q.positive.push_back(t);
    }
    if (vars.empty()) {
      q.positive[0].s = "?a";
      vars.insert("a");
    }
    if (Uniform(0, 1) == 1) {
      int m = Uniform(1, 2);
      for (int i = 0; i < m; ++i) {
        q.block.push_back({SubjectSlot({"a", "b", "z"}), PredicateSlot({}),
                           ObjectSlot({"a", "b", "c", "z"})});
      }
    }
    for (const auto& v : vars) {
      if (Uniform(0, 3) > 0) q.projection.push_back(v);
    }
    if (q.projection.empty()) q.projection.push_back(*vars.begin());
    return q;
  }

 private:
  static constexpr int kNodes = 8, kPreds = 4, kLits = 3;
  static std::string Node(int i) { return "ex:n" + std::to_string(i); }
  static std::string Pred(int i) { return "ex:p" + std::to_string(i); }
  static std::string Lit(int i) { return "\"v" + std::to_string(i) + "\""; }

  int Uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::string Var(const std::vector<std::string>& names) {
    return "?" + names[static_cast<size_t>(Uniform(0, static_cast<int>(names.size()) - 1))];
  }
  Slot SubjectSlot(const std::vector<std::string>& names) {
    return Uniform(0, 3) > 0 ? Var(names) : Node(Uniform(0, kNodes - 1));
  }
  Slot PredicateSlot(const std::vector<std::string>& names) {
    if (!names.empty() && Uniform(0, 9) == 0) return Var(names);
    return Pred(Uniform(0, kPreds - 1));
  }
  Slot ObjectSlot(const std::vector<std::string>& names) {
    int r = Uniform(0, 5);
    if (r == 0) return Node(Uniform(0, kNodes - 1));
    if (r == 1) return Lit(Uniform(0, kLits - 1));
    return Var(names);
  }

  std::mt19937 rng_;
};

using Assignment = std::map<std::string, std::string>;

inline std::string Bind(const Slot& s, const Assignment& a) {
  return IsVar(s) ? a.at(s.substr(1)) : s;
}

inline bool Holds(const std::vector<OPattern>& ps, const Assignment& a, const OGraph& g) {
  for (const auto& t : ps) {
    if (!g.triples.count({Bind(t.s, a), Bind(t.p, a), Bind(t.o, a)})) return false;
  }
  return true;
}

inline std::vector<std::string> VarsOf(const std::vector<OPattern>& ps) {
  std::set<std::string> out;
  for (const auto& t : ps) {
    for (const Slot* s : {&t.s, &t.p, &t.o}) {
      if (IsVar(*s)) out.insert(s->substr(1));
    }
  }
  return {out.begin(), out.end()};
}

// Calls f for every extension of `base` assigning `vars` over the universe.
template <typename F>
bool ForEachAssignment(const std::vector<std::string>& vars, size_t i, Assignment* a,
                       const OGraph& g, F&& f) {
  if (i == vars.size()) return f(*a);
  for (const auto& term : g.universe) {
    (*a)[vars[i]] = term;
    if (!ForEachAssignment(vars, i + 1, a, g, f)) return false;
  }
  a->erase(vars[i]);
  return true;
}

// Projected rows, sorted; duplicates kept unless DISTINCT.
inline std::vector<std::vector<std::string>> Evaluate(const OQuery& q, const OGraph& g) {
  std::vector<std::string> outer = VarsOf(q.positive);
  std::vector<std::string> local;
  for (const auto& v : VarsOf(q.block)) {
    if (std::find(outer.begin(), outer.end(), v) == outer.end()) local.push_back(v);
  }
  std::vector<std::vector<std::string>> rows;
  Assignment a;
  ForEachAssignment(outer, 0, &a, g, [&](const Assignment& m) {
    if (!Holds(q.positive, m, g)) return true;
    if (!q.block.empty()) {
      bool exists = false;
      Assignment ext = m;
      ForEachAssignment(local, 0, &ext, g, [&](const Assignment& x) {
        exists = Holds(q.block, x, g);
        return !exists;
      });
      if (exists) return true;
    }
    std::vector<std::string> row;
    for (const auto& v : q.projection) row.push_back(m.at(v));
    rows.push_back(row);
    return true;
  });
  std::sort(rows.begin(), rows.end());
  if (q.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

}  // namespace oracle
