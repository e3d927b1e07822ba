#include "provkb/query.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "lexer.h"
#include "provkb/errors.h"
#include "provkb/turtle.h"

namespace provkb::query {

namespace {

using internal::Lexer;
using internal::Token;
using internal::TokenKind;

std::string Upper(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

bool IsPunct(const Token& t, char c) {
  return t.kind == TokenKind::kPunct && t.text.size() == 1 && t.text[0] == c;
}

bool IsKeyword(const Token& t, std::string_view kw) {
  return t.kind == TokenKind::kName && Upper(t.text) == kw;
}

const std::set<std::string>& UnsupportedKeywords() {
  static const std::set<std::string> kw = {
      "OPTIONAL", "UNION", "MINUS", "BIND",  "VALUES", "GRAPH",
      "SERVICE",  "ORDER", "GROUP", "LIMIT", "OFFSET", "HAVING"};
  return kw;
}

void CollectVars(const PatternTerm& t, std::set<std::string>* out) {
  if (auto* v = std::get_if<Variable>(&t)) out->insert(v->name);
}

void CollectVars(const TriplePattern& p, std::set<std::string>* out) {
  CollectVars(p.s, out);
  CollectVars(p.p, out);
  CollectVars(p.o, out);
}

class QueryParser {
 public:
  QueryParser(std::string_view text, const ParseOptions& options)
      : lex_(text),
        registry_(options.registry ? *options.registry
                                   : vocab::VocabRegistry::Default()) {
    q_.prefixes = options.prefixes ? *options.prefixes : PrefixTable::Defaults();
  }

  SelectQuery Run() {
    Prologue();
    Token sel = lex_.Next();
    for (const char* form : {"ASK", "CONSTRUCT", "DESCRIBE"}) {
      if (IsKeyword(sel, form)) throw UnsupportedFeature(form);
    }
    if (!IsKeyword(sel, "SELECT")) Fail(sel, "expected SELECT");
    Projection();
    Token t = lex_.Next();
    if (IsKeyword(t, "FROM")) throw UnsupportedFeature("FROM");
    if (IsKeyword(t, "WHERE")) t = lex_.Next();
    if (!IsPunct(t, '{')) Fail(t, "expected '{'");
    GroupBody(/*inside_not_exists=*/false);
    Token end = lex_.Next();
    if (end.kind != TokenKind::kEnd) {
      if (end.kind == TokenKind::kName &&
          UnsupportedKeywords().count(Upper(end.text))) {
        throw UnsupportedFeature(Upper(end.text));
      }
      Fail(end, "unexpected text after the query");
    }
    Finish();
    return std::move(q_);
  }

  bool correlate = true;

 private:
  [[noreturn]] void Fail(const Token& at, const std::string& what) {
    throw SyntaxError(what, at.line, at.column);
  }

  void Prologue() {
    while (true) {
      Token t = lex_.Peek();
      if (IsKeyword(t, "BASE")) throw UnsupportedFeature("BASE");
      if (!IsKeyword(t, "PREFIX")) return;
      lex_.Next();
      Token label = lex_.Next();
      if (label.kind != TokenKind::kPrefixed ||
          label.text.find(':') != label.text.size() - 1) {
        Fail(label, "expected prefix label ending in ':'");
      }
      Token iri = lex_.Next();
      if (iri.kind != TokenKind::kIriRef || !IsAbsoluteIri(iri.text)) {
        Fail(iri, "expected <namespace IRI>");
      }
      q_.prefixes.Set(label.text.substr(0, label.text.size() - 1), iri.text);
    }
  }

  void Projection() {
    Token t = lex_.Peek();
    if (IsKeyword(t, "DISTINCT")) {
      lex_.Next();
      q_.distinct = true;
    } else if (IsKeyword(t, "REDUCED")) {
      throw UnsupportedFeature("REDUCED");
    }
    t = lex_.Peek();
    if (IsPunct(t, '*')) {
      lex_.Next();
      select_all_ = true;
      return;
    }
    while (true) {
      t = lex_.Peek();
      if (IsPunct(t, '(')) throw UnsupportedFeature("expressions in SELECT");
      if (t.kind != TokenKind::kVariable) break;
      lex_.Next();
      q_.projection.push_back(Variable{t.text});
      projection_tokens_.push_back(t);
    }
    if (q_.projection.empty()) Fail(t, "expected projection variables or '*'");
  }

  TermId ResolvePrefixed(const Token& t) {
    size_t colon = t.text.find(':');
    std::string label = t.text.substr(0, colon);
    if (label == "_") throw UnsupportedFeature("blank nodes");
    auto ns = q_.prefixes.Find(label);
    if (!ns) throw UnknownPrefix(label);
    std::string iri = *ns + internal::UnescapeLocal(t.text.substr(colon + 1));
    if (!IsAbsoluteIri(iri)) Fail(t, "IRI is not absolute");
    return TermId(iri);
  }

  bool StartsTerm(const Token& t) {
    return t.kind == TokenKind::kVariable || t.kind == TokenKind::kIriRef ||
           t.kind == TokenKind::kPrefixed || t.kind == TokenKind::kString ||
           t.kind == TokenKind::kNumber ||
           (t.kind == TokenKind::kName && (t.text == "true" || t.text == "false"));
  }

  PatternTerm NodeTerm(const Token& t) {
    switch (t.kind) {
      case TokenKind::kVariable:
        return Variable{t.text};
      case TokenKind::kIriRef:
        if (!IsAbsoluteIri(t.text)) Fail(t, "IRI is not absolute");
        return Term::Iri(TermId(t.text));
      case TokenKind::kPrefixed:
        return Term::Iri(ResolvePrefixed(t));
      case TokenKind::kString: {
        Token next = lex_.Peek();
        if (next.kind == TokenKind::kLangTag) {
          lex_.Next();
          return Term::LangLiteral(t.text, next.text);
        }
        if (next.kind == TokenKind::kDoubleCaret) {
          lex_.Next();
          Token dt = lex_.Next();
          if (dt.kind == TokenKind::kIriRef && IsAbsoluteIri(dt.text)) {
            return Term::Literal(t.text, TermId(dt.text));
          }
          if (dt.kind == TokenKind::kPrefixed) {
            return Term::Literal(t.text, ResolvePrefixed(dt));
          }
          Fail(dt, "expected datatype IRI");
        }
        return Term::Literal(t.text);
      }
      case TokenKind::kNumber: {
        std::string_view local = "integer";
        if (t.text.find_first_of("eE") != std::string::npos) {
          local = "double";
        } else if (t.text.find('.') != std::string::npos) {
          local = "decimal";
        }
        return Term::Literal(t.text, TermId::In(ns::kXsd, local));
      }
      case TokenKind::kName:
        if (t.text == "true" || t.text == "false") {
          return Term::Literal(t.text, TermId::In(ns::kXsd, "boolean"));
        }
        break;
      case TokenKind::kPunct:
        if (t.text == "[") throw UnsupportedFeature("blank nodes");
        if (t.text == "(") throw UnsupportedFeature("collections");
        break;
      default:
        break;
    }
    Fail(t, "expected a term");
  }

  PatternTerm PredicateTerm(const Token& t) {
    if (t.kind == TokenKind::kName && t.text == "a") {
      return Term::Iri(terms::RdfType());
    }
    if (t.kind == TokenKind::kPunct &&
        (t.text == "^" || t.text == "!" || t.text == "(")) {
      throw UnsupportedFeature("property paths");
    }
    if (t.kind == TokenKind::kVariable) return Variable{t.text};
    if (t.kind != TokenKind::kIriRef && t.kind != TokenKind::kPrefixed) {
      Fail(t, "expected a predicate");
    }
    PatternTerm p = NodeTerm(t);
    Token next = lex_.Peek();
    if (next.kind == TokenKind::kPunct &&
        (next.text == "/" || next.text == "|" || next.text == "*" ||
         next.text == "+" || next.text == "?" || next.text == "^")) {
      throw UnsupportedFeature("property paths");
    }
    TermId id = std::get<Term>(p).iri();
    return Term::Iri(registry_.NormalizeProperty(id).id);
  }

  // Parses "subject predicate object (; predicate object)* (, object)*".
  void TriplesSameSubject(const Token& first, std::vector<TriplePattern>* out) {
    PatternTerm subject = NodeTerm(first);
    while (true) {
      PatternTerm predicate = PredicateTerm(lex_.Next());
      while (true) {
        out->push_back(TriplePattern{subject, predicate, NodeTerm(lex_.Next())});
        if (!IsPunct(lex_.Peek(), ',')) break;
        lex_.Next();
      }
      if (!IsPunct(lex_.Peek(), ';')) return;
      while (IsPunct(lex_.Peek(), ';')) lex_.Next();
      Token next = lex_.Peek();
      if (IsPunct(next, '.') || IsPunct(next, '}')) return;
    }
  }

  // Consumes up to and including the closing '}'.
  void GroupBody(bool inside_not_exists) {
    std::vector<TriplePattern> block;
    while (true) {
      Token t = lex_.Next();
      if (t.kind == TokenKind::kEnd) Fail(t, "unterminated group, expected '}'");
      if (IsPunct(t, '}')) break;
      if (IsPunct(t, '.')) continue;
      if (IsPunct(t, '{')) throw UnsupportedFeature("nested groups");
      if (t.kind == TokenKind::kName && UnsupportedKeywords().count(Upper(t.text))) {
        throw UnsupportedFeature(Upper(t.text));
      }
      if (IsKeyword(t, "FILTER")) {
        Token n = lex_.Next();
        if (!IsKeyword(n, "NOT")) throw UnsupportedFeature("FILTER expressions");
        Token e = lex_.Next();
        if (!IsKeyword(e, "EXISTS")) Fail(e, "expected EXISTS after FILTER NOT");
        if (inside_not_exists) throw UnsupportedFeature("nested NOT EXISTS");
        Token open = lex_.Next();
        if (!IsPunct(open, '{')) Fail(open, "expected '{' after NOT EXISTS");
        size_t before = blocks_.size();
        GroupBody(/*inside_not_exists=*/true);
        if (blocks_.size() == before || blocks_.back().patterns.empty()) {
          Fail(open, "empty NOT EXISTS block");
        }
        q_.body.push_back(blocks_.back());
        continue;
      }
      if (t.kind == TokenKind::kName && t.text != "true" && t.text != "false") {
        Fail(t, "unexpected keyword '" + t.text + "'");
      }
      std::vector<TriplePattern> patterns;
      TriplesSameSubject(t, &patterns);
      Token after = lex_.Peek();
      // Statements may run together without '.' when a new subject starts.
      if (!IsPunct(after, '.') && !IsPunct(after, '}') && !StartsTerm(after) &&
          !IsKeyword(after, "FILTER")) {
        if (after.kind == TokenKind::kName &&
            UnsupportedKeywords().count(Upper(after.text))) {
          throw UnsupportedFeature(Upper(after.text));
        }
        Fail(after, "expected '.', '}' or a new triple pattern");
      }
      if (inside_not_exists) {
        block.insert(block.end(), patterns.begin(), patterns.end());
      } else {
        for (TriplePattern& p : patterns) q_.body.push_back(std::move(p));
      }
    }
    if (inside_not_exists) blocks_.push_back(NotExistsBlock{std::move(block)});
  }

  void Finish() {
    std::set<std::string> outer;
    for (const TriplePattern& p : q_.Positive()) CollectVars(p, &outer);
    if (select_all_) {
      // First-appearance order.
      std::set<std::string> seen;
      for (const TriplePattern& p : q_.Positive()) {
        for (const PatternTerm* pt : {&p.s, &p.p, &p.o}) {
          if (auto* v = std::get_if<Variable>(pt); v && seen.insert(v->name).second) {
            q_.projection.push_back(*v);
          }
        }
      }
    }
    for (size_t i = 0; i < projection_tokens_.size(); ++i) {
      if (!outer.count(q_.projection[i].name)) {
        Fail(projection_tokens_[i],
             "projected variable ?" + q_.projection[i].name +
                 " does not occur in a triple pattern");
      }
    }
    if (correlate) Correlate(outer);
  }

  void Correlate(const std::set<std::string>& outer) {
    const Term type = Term::Iri(terms::RdfType());
    for (BodyElement& el : q_.body) {
      auto* block = std::get_if<NotExistsBlock>(&el);
      if (!block) continue;
      std::set<std::string> inner;
      for (const TriplePattern& p : block->patterns) CollectVars(p, &inner);
      bool shares = std::any_of(inner.begin(), inner.end(),
                                [&](const std::string& v) { return outer.count(v) > 0; });
      if (shares) continue;
      for (const TriplePattern& bp : block->patterns) {
        auto* v = std::get_if<Variable>(&bp.s);
        auto* pred = std::get_if<Term>(&bp.p);
        auto* cls = std::get_if<Term>(&bp.o);
        if (!v || !pred || *pred != type || !cls) continue;
        std::vector<std::string> partners;
        for (const TriplePattern& op : q_.Positive()) {
          auto* w = std::get_if<Variable>(&op.s);
          auto* opred = std::get_if<Term>(&op.p);
          auto* ocls = std::get_if<Term>(&op.o);
          if (w && opred && *opred == type && ocls && *ocls == *cls &&
              !inner.count(w->name) &&
              std::find(partners.begin(), partners.end(), w->name) == partners.end()) {
            partners.push_back(w->name);
          }
        }
        if (partners.size() != 1) continue;
        std::string from = v->name;
        std::string to = partners[0];
        auto rename = [&](PatternTerm& t) {
          if (auto* var = std::get_if<Variable>(&t); var && var->name == from) {
            var->name = to;
          }
        };
        for (TriplePattern& p : block->patterns) {
          rename(p.s);
          rename(p.p);
          rename(p.o);
        }
        q_.rewrites.push_back("NOT EXISTS block correlated on ?" + to +
                              " (renamed ?" + from + ")");
        break;
      }
    }
  }

  Lexer lex_;
  const vocab::VocabRegistry& registry_;
  SelectQuery q_;
  bool select_all_ = false;
  std::vector<Token> projection_tokens_;
  std::vector<NotExistsBlock> blocks_;
};

// ---------------------------------------------------------------------------
// Evaluation

using Row = std::map<std::string, Term>;

std::optional<Term> Resolve(const PatternTerm& t, const Row& row) {
  if (auto* term = std::get_if<Term>(&t)) return *term;
  auto it = row.find(std::get<Variable>(t).name);
  if (it == row.end()) return std::nullopt;
  return it->second;
}

// Binds the pattern's variables to the triple's terms; false on conflict.
bool Unify(const TriplePattern& p, const Triple& t, Row* row,
           std::vector<std::string>* added) {
  const std::pair<const PatternTerm*, const Term*> pairs[] = {
      {&p.s, &t.subject}, {&p.p, &t.predicate}, {&p.o, &t.object}};
  for (auto [pt, term] : pairs) {
    if (auto* c = std::get_if<Term>(pt)) {
      if (*c != *term) return false;
      continue;
    }
    const std::string& name = std::get<Variable>(*pt).name;
    auto it = row->find(name);
    if (it == row->end()) {
      row->emplace(name, *term);
      added->push_back(name);
    } else if (it->second != *term) {
      return false;
    }
  }
  return true;
}

int BoundCount(const TriplePattern& p, const std::set<std::string>& bound) {
  int n = 0;
  for (const PatternTerm* pt : {&p.s, &p.p, &p.o}) {
    if (std::holds_alternative<Term>(*pt) ||
        bound.count(std::get<Variable>(*pt).name)) {
      ++n;
    }
  }
  return n;
}

// Greedy reordering: most bound positions first, original order on ties.
std::vector<TriplePattern> Reorder(std::vector<TriplePattern> patterns,
                                   std::set<std::string> bound) {
  std::vector<TriplePattern> out;
  while (!patterns.empty()) {
    size_t best = 0;
    int best_count = -1;
    for (size_t i = 0; i < patterns.size(); ++i) {
      int c = BoundCount(patterns[i], bound);
      if (c > best_count) {
        best = i;
        best_count = c;
      }
    }
    CollectVars(patterns[best], &bound);
    out.push_back(std::move(patterns[best]));
    patterns.erase(patterns.begin() + static_cast<long>(best));
  }
  return out;
}

// Enumerates extensions of `row` satisfying patterns[i..]. The callback
// returns false to stop the search.
bool Join(const EntailedGraph& g, const std::vector<TriplePattern>& patterns,
          size_t i, Row* row, const std::function<bool(const Row&)>& emit) {
  if (i == patterns.size()) return emit(*row);
  const TriplePattern& p = patterns[i];
  for (const Triple* t : g.Match(Resolve(p.s, *row), Resolve(p.p, *row),
                                 Resolve(p.o, *row))) {
    std::vector<std::string> added;
    if (Unify(p, *t, row, &added)) {
      if (!Join(g, patterns, i + 1, row, emit)) {
        for (const std::string& v : added) row->erase(v);
        return false;
      }
    }
    for (const std::string& v : added) row->erase(v);
  }
  return true;
}

}  // namespace

std::vector<TriplePattern> SelectQuery::Positive() const {
  std::vector<TriplePattern> out;
  for (const BodyElement& el : body) {
    if (auto* p = std::get_if<TriplePattern>(&el)) out.push_back(*p);
  }
  return out;
}

std::vector<NotExistsBlock> SelectQuery::NotExists() const {
  std::vector<NotExistsBlock> out;
  for (const BodyElement& el : body) {
    if (auto* b = std::get_if<NotExistsBlock>(&el)) out.push_back(*b);
  }
  return out;
}

SelectQuery ParseQuery(std::string_view text, const ParseOptions& options) {
  QueryParser parser(text, options);
  parser.correlate = options.correlate_not_exists;
  return parser.Run();
}

EntailedGraph::EntailedGraph(const std::vector<Triple>& base,
                             const vocab::VocabRegistry& registry) {
  std::set<Triple> all;
  const Term type = Term::Iri(terms::RdfType());
  std::map<TermId, std::set<TermId>> closure_cache;
  std::map<TermId, std::set<TermId>> super_cache;
  for (const Triple& raw : base) {
    TermId pid = registry.NormalizeProperty(raw.predicate.iri()).id;
    Triple t{raw.subject, Term::Iri(pid), raw.object};
    all.insert(t);
    auto sp = super_cache.find(pid);
    if (sp == super_cache.end()) {
      sp = super_cache.emplace(pid, registry.SuperProperties(pid)).first;
    }
    for (const TermId& super : sp->second) {
      all.insert(Triple{t.subject, Term::Iri(super), t.object});
    }
  }
  std::vector<Triple> typed;
  for (const Triple& t : all) {
    if (t.predicate != type || !t.object.is_iri()) continue;
    TermId cls = t.object.iri();
    auto it = closure_cache.find(cls);
    if (it == closure_cache.end()) {
      it = closure_cache.emplace(cls, registry.TypeClosure({cls})).first;
    }
    for (const TermId& c : it->second) typed.push_back(Triple{t.subject, type, Term::Iri(c)});
  }
  all.insert(typed.begin(), typed.end());
  triples_.assign(all.begin(), all.end());
  for (size_t i = 0; i < triples_.size(); ++i) {
    by_s_[triples_[i].subject].push_back(i);
    by_p_[triples_[i].predicate].push_back(i);
    by_o_[triples_[i].object].push_back(i);
  }
}

std::vector<const Triple*> EntailedGraph::Match(const std::optional<Term>& s,
                                                const std::optional<Term>& p,
                                                const std::optional<Term>& o) const {
  static const std::vector<size_t> kEmpty;
  const std::vector<size_t>* candidates = nullptr;
  auto narrow = [&](const std::optional<Term>& key,
                    const std::map<Term, std::vector<size_t>>& index) {
    if (!key) return;
    auto it = index.find(*key);
    const std::vector<size_t>* list = it == index.end() ? &kEmpty : &it->second;
    if (!candidates || list->size() < candidates->size()) candidates = list;
  };
  narrow(s, by_s_);
  narrow(p, by_p_);
  narrow(o, by_o_);
  std::vector<const Triple*> out;
  auto keep = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) &&
           (!o || t.object == *o);
  };
  if (candidates) {
    for (size_t i : *candidates) {
      if (keep(triples_[i])) out.push_back(&triples_[i]);
    }
  } else {
    for (const Triple& t : triples_) out.push_back(&t);
  }
  return out;
}

std::vector<Binding> ResultTable::Bindings() const {
  std::vector<Binding> out;
  for (const auto& row : rows) {
    Binding b;
    for (size_t i = 0; i < variables.size(); ++i) b.emplace(variables[i], row[i]);
    out.push_back(std::move(b));
  }
  return out;
}

std::string ResultTable::ToTsv(const PrefixTable& prefixes) const {
  std::string out;
  for (size_t i = 0; i < variables.size(); ++i) {
    if (i) out += '\t';
    out += variables[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += store::RenderTerm(row[i], prefixes);
    }
    out += '\n';
  }
  return out;
}

ResultTable Evaluate(const SelectQuery& q, const EntailedGraph& graph) {
  ResultTable table;
  for (const Variable& v : q.projection) table.variables.push_back(v.name);

  std::vector<TriplePattern> positive = Reorder(q.Positive(), {});
  std::set<std::string> outer;
  for (const TriplePattern& p : positive) CollectVars(p, &outer);
  std::vector<std::vector<TriplePattern>> blocks;
  for (const NotExistsBlock& b : q.NotExists()) {
    blocks.push_back(Reorder(b.patterns, outer));
  }

  Row row;
  Join(graph, positive, 0, &row, [&](const Row& solution) {
    for (const auto& block : blocks) {
      Row extended = solution;
      bool found = false;
      Join(graph, block, 0, &extended, [&](const Row&) {
        found = true;
        return false;
      });
      if (found) return true;
    }
    std::vector<Term> projected;
    for (const Variable& v : q.projection) projected.push_back(solution.at(v.name));
    table.rows.push_back(std::move(projected));
    return true;
  });

  std::sort(table.rows.begin(), table.rows.end());
  if (q.distinct) {
    table.rows.erase(std::unique(table.rows.begin(), table.rows.end()),
                     table.rows.end());
  }
  return table;
}

ResultTable Evaluate(const SelectQuery& q, const std::vector<Triple>& triples,
                     const vocab::VocabRegistry& registry) {
  return Evaluate(q, EntailedGraph(triples, registry));
}

ResultTable Evaluate(const SelectQuery& q, const store::Dataset& ds,
                     const std::vector<store::GraphSelector>& graphs,
                     const vocab::VocabRegistry& registry) {
  return Evaluate(q, ds.Match(std::nullopt, std::nullopt, std::nullopt, graphs),
                  registry);
}

}  // namespace provkb::query
