#pragma once

// SELECT queries made of basic graph patterns and FILTER NOT EXISTS
// blocks, evaluated over a graph saturated with subclass and subproperty
// entailments.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "provkb/rdf.h"
#include "provkb/store.h"
#include "provkb/vocab.h"

namespace provkb::query {

struct Variable {
  std::string name;  // without '?'
  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm s;
  PatternTerm p;
  PatternTerm o;
};

struct NotExistsBlock {
  std::vector<TriplePattern> patterns;
};

using BodyElement = std::variant<TriplePattern, NotExistsBlock>;

struct SelectQuery {
  PrefixTable prefixes;
  bool distinct = false;
  std::vector<Variable> projection;  // SELECT * is expanded at parse time
  std::vector<BodyElement> body;
  // Human-readable notes on rewrites applied while parsing.
  std::vector<std::string> rewrites;

  std::vector<TriplePattern> Positive() const;
  std::vector<NotExistsBlock> NotExists() const;
};

struct ParseOptions {
  // Defaults to VocabRegistry::Default().
  const vocab::VocabRegistry* registry = nullptr;
  // Prefixes available without PREFIX declarations.
  std::optional<PrefixTable> prefixes;
  // A NOT EXISTS block sharing no variable with the outer patterns is a
  // constant filter. When it types a block-local ?v with a class that
  // exactly one outer variable ?w is also typed with (and ?w does not occur
  // in the block), ?v is renamed to ?w so the filter applies per ?w.
  bool correlate_not_exists = true;
};

// Throws SyntaxError, UnsupportedFeature or UnknownPrefix. Predicates are
// alias-normalized through the registry.
SelectQuery ParseQuery(std::string_view text, const ParseOptions& options = {});

// Triples plus every rdf:type superclass and subproperty consequence, with
// predicates alias-normalized. Indexed for pattern lookup.
class EntailedGraph {
 public:
  EntailedGraph(const std::vector<Triple>& base, const vocab::VocabRegistry& registry);

  const std::vector<Triple>& triples() const { return triples_; }
  std::vector<const Triple*> Match(const std::optional<Term>& s,
                                   const std::optional<Term>& p,
                                   const std::optional<Term>& o) const;

 private:
  std::vector<Triple> triples_;  // sorted, distinct
  std::map<Term, std::vector<size_t>> by_s_;
  std::map<Term, std::vector<size_t>> by_p_;
  std::map<Term, std::vector<size_t>> by_o_;
};

using Binding = std::map<std::string, Term>;

struct ResultTable {
  std::vector<std::string> variables;
  std::vector<std::vector<Term>> rows;

  std::vector<Binding> Bindings() const;
  // Header of variable names, then one line per row.
  std::string ToTsv(const PrefixTable& prefixes) const;
};

ResultTable Evaluate(const SelectQuery& q, const EntailedGraph& graph);
ResultTable Evaluate(const SelectQuery& q, const std::vector<Triple>& triples,
                     const vocab::VocabRegistry& registry);
ResultTable Evaluate(const SelectQuery& q, const store::Dataset& ds,
                     const std::vector<store::GraphSelector>& graphs,
                     const vocab::VocabRegistry& registry);

}  // namespace provkb::query
