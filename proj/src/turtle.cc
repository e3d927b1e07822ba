#include "provkb/turtle.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>

#include "lexer.h"
#include "provkb/errors.h"

namespace provkb::store {

namespace {

using internal::Lexer;
using internal::Token;
using internal::TokenKind;

bool IsPunct(const Token& t, char c) {
  return t.kind == TokenKind::kPunct && t.text.size() == 1 && t.text[0] == c;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

class TurtleParser {
 public:
  TurtleParser(std::string_view text, const PrefixTable& prefixes)
      : lex_(text) {
    doc_.prefixes = prefixes;
  }

  TurtleDocument Run() {
    while (lex_.Peek().kind != TokenKind::kEnd) Statement();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void Fail(const Token& at, const std::string& what) {
    throw SyntaxError(what, at.line, at.column);
  }

  TermId MakeIri(const Token& at, std::string iri) {
    if (!IsAbsoluteIri(iri)) Fail(at, "IRI is not absolute: <" + iri + ">");
    return TermId(std::move(iri));
  }

  TermId ResolvePrefixed(const Token& t) {
    size_t colon = t.text.find(':');
    std::string label = t.text.substr(0, colon);
    if (label == "_") Fail(t, "blank nodes are not supported");
    auto ns = doc_.prefixes.Find(label);
    if (!ns) throw UnknownPrefix(label);
    return MakeIri(t, *ns + internal::UnescapeLocal(t.text.substr(colon + 1)));
  }

  void Statement() {
    Token t = lex_.Next();
    if (t.kind == TokenKind::kLangTag && t.text == "prefix") {
      PrefixDirective(true);
      return;
    }
    if (t.kind == TokenKind::kName && EqualsIgnoreCase(t.text, "PREFIX")) {
      PrefixDirective(false);
      return;
    }
    if ((t.kind == TokenKind::kLangTag && t.text == "base") ||
        (t.kind == TokenKind::kName && EqualsIgnoreCase(t.text, "BASE"))) {
      Fail(t, "base directives are not supported");
    }
    Term subject = Term::Iri(Subject(t));
    PredicateObjectList(subject);
    Token end = lex_.Next();
    if (!IsPunct(end, '.')) Fail(end, "expected '.' at end of statement");
  }

  void PrefixDirective(bool at_form) {
    Token label = lex_.Next();
    if (label.kind != TokenKind::kPrefixed || label.text.back() != ':' ||
        label.text.find(':') != label.text.size() - 1) {
      Fail(label, "expected prefix label ending in ':'");
    }
    Token iri = lex_.Next();
    if (iri.kind != TokenKind::kIriRef) Fail(iri, "expected <namespace IRI>");
    MakeIri(iri, iri.text);
    doc_.prefixes.Set(label.text.substr(0, label.text.size() - 1), iri.text);
    // Printed listings often omit the closing '.' of @prefix lines.
    if (at_form && IsPunct(lex_.Peek(), '.')) lex_.Next();
  }

  TermId Subject(const Token& t) {
    switch (t.kind) {
      case TokenKind::kIriRef:
        return MakeIri(t, t.text);
      case TokenKind::kPrefixed:
        return ResolvePrefixed(t);
      case TokenKind::kPunct:
        if (t.text == "[" || t.text == "(") {
          Fail(t, "blank nodes and collections are not supported");
        }
        break;
      default:
        break;
    }
    Fail(t, "expected subject IRI");
  }

  void PredicateObjectList(const Term& subject) {
    while (true) {
      Token pt = lex_.Next();
      Term predicate;
      if (pt.kind == TokenKind::kName && pt.text == "a") {
        predicate = Term::Iri(terms::RdfType());
      } else if (pt.kind == TokenKind::kIriRef) {
        predicate = Term::Iri(MakeIri(pt, pt.text));
      } else if (pt.kind == TokenKind::kPrefixed) {
        predicate = Term::Iri(ResolvePrefixed(pt));
      } else {
        Fail(pt, "expected predicate");
      }
      while (true) {
        doc_.triples.push_back(Triple{subject, predicate, Object()});
        if (!IsPunct(lex_.Peek(), ',')) break;
        lex_.Next();
      }
      if (!IsPunct(lex_.Peek(), ';')) return;
      while (IsPunct(lex_.Peek(), ';')) lex_.Next();
      // A trailing ';' before '.' is legal.
      if (IsPunct(lex_.Peek(), '.')) return;
    }
  }

  Term Object() {
    Token t = lex_.Next();
    switch (t.kind) {
      case TokenKind::kIriRef:
        return Term::Iri(MakeIri(t, t.text));
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
          if (dt.kind == TokenKind::kIriRef) {
            return Term::Literal(t.text, MakeIri(dt, dt.text));
          }
          if (dt.kind == TokenKind::kPrefixed) {
            return Term::Literal(t.text, ResolvePrefixed(dt));
          }
          Fail(dt, "expected datatype IRI after '^^'");
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
        if (t.text == "[" || t.text == "(") {
          Fail(t, "blank nodes and collections are not supported");
        }
        break;
      default:
        break;
    }
    Fail(t, "expected object term");
  }

  Lexer lex_;
  TurtleDocument doc_;
};

void AppendEscaped(std::string_view s, std::string* out) {
  for (char c : s) {
    switch (c) {
      case '"': *out += "\\\""; break;
      case '\\': *out += "\\\\"; break;
      case '\n': *out += "\\n"; break;
      case '\r': *out += "\\r"; break;
      case '\t': *out += "\\t"; break;
      case '\b': *out += "\\b"; break;
      case '\f': *out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          *out += buf;
        } else {
          out->push_back(c);
        }
    }
  }
}

}  // namespace

TurtleDocument ParseTurtleDocument(std::string_view text,
                                   const PrefixTable& prefixes) {
  return TurtleParser(text, prefixes).Run();
}

std::vector<Triple> ParseTurtle(std::string_view text,
                                const PrefixTable& prefixes) {
  return ParseTurtleDocument(text, prefixes).triples;
}

std::string RenderTerm(const Term& term, const PrefixTable& prefixes) {
  if (term.is_iri()) return prefixes.Render(TermId(term.value()));
  std::string out = "\"";
  AppendEscaped(term.value(), &out);
  out.push_back('"');
  if (!term.lang().empty()) {
    out += "@" + term.lang();
  } else if (term.datatype() != terms::XsdString()) {
    out += "^^" + prefixes.Render(term.datatype());
  }
  return out;
}

std::string SerializeTurtle(const std::vector<Triple>& triples,
                            const PrefixTable& prefixes) {
  std::string out;
  for (const auto& [label, ns] : prefixes.entries()) {
    out += "@prefix " + label + ": <" + ns + "> .\n";
  }
  // subject -> predicate -> objects, all ordered by their IRI / term order.
  std::map<std::string, std::map<std::string, std::set<Term>>> grouped;
  for (const Triple& t : triples) {
    grouped[t.subject.value()][t.predicate.value()].insert(t.object);
  }
  const std::string rdf_type = terms::RdfType().str();
  for (const auto& [subject, predicates] : grouped) {
    out += "\n" + prefixes.Render(TermId(subject));
    bool first_predicate = true;
    for (const auto& [predicate, objects] : predicates) {
      out += first_predicate ? " " : " ;\n    ";
      first_predicate = false;
      out += predicate == rdf_type ? "a" : prefixes.Render(TermId(predicate));
      bool first_object = true;
      for (const Term& object : objects) {
        out += first_object ? " " : ", ";
        first_object = false;
        out += RenderTerm(object, prefixes);
      }
    }
    out += " .\n";
  }
  return out;
}

}  // namespace provkb::store
