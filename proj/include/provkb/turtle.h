#pragma once

// Reader and writer for the Turtle subset used by vocabulary, KB and
// snapshot files: @prefix/PREFIX directives, IRIs, prefixed names, "a",
// plain/typed/language-tagged literals, numbers, booleans, ';' and ','.
// Blank nodes and collections are rejected.

#include <string>
#include <string_view>
#include <vector>

#include "provkb/rdf.h"

namespace provkb::store {

struct TurtleDocument {
  std::vector<Triple> triples;  // document order
  PrefixTable prefixes;         // supplied table extended by the directives
};

// Throws SyntaxError (with line/column) or UnknownPrefix.
TurtleDocument ParseTurtleDocument(std::string_view text,
                                   const PrefixTable& prefixes);
std::vector<Triple> ParseTurtle(std::string_view text,
                                const PrefixTable& prefixes);

// Deterministic output: one directive per prefix, then subjects in IRI
// order with predicates grouped by ';' and objects by ','. Duplicate
// triples are written once.
std::string SerializeTurtle(const std::vector<Triple>& triples,
                            const PrefixTable& prefixes);

// Turtle rendering of one term ("<iri>", "ex:x", "\"v\"@fr", ...).
std::string RenderTerm(const Term& term, const PrefixTable& prefixes);

}  // namespace provkb::store
