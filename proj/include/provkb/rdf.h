#pragma once

// RDF terms, triples and prefix tables shared by every module.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace provkb {

namespace ns {
inline constexpr std::string_view kProvoc = "http://ns.inria.fr/provoc#";
inline constexpr std::string_view kGr = "http://purl.org/goodrelations/v1#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kEx = "http://example.org#";
inline constexpr std::string_view kDbo = "http://dbpedia.org/ontology/";
inline constexpr std::string_view kDbp = "http://dbpedia.org/page/";
inline constexpr std::string_view kDbr = "http://dbpedia.org/resource/";
// Annotation properties of this toolkit (aliases, descriptions, images).
inline constexpr std::string_view kKb = "http://provkb.org/ns#";
}  // namespace ns

// An absolute IRI. Two TermIds are equal iff their strings are equal.
class TermId {
 public:
  TermId() = default;
  // Throws provkb::Error if the string is empty or lacks a scheme.
  explicit TermId(std::string iri);
  static TermId In(std::string_view ns, std::string_view local);

  const std::string& str() const { return iri_; }
  bool empty() const { return iri_.empty(); }

  auto operator<=>(const TermId&) const = default;

 private:
  std::string iri_;
};

bool IsAbsoluteIri(std::string_view iri);

class Term {
 public:
  enum class Kind { kIri, kLiteral };

  Term() = default;
  static Term Iri(TermId id);
  static Term Iri(std::string iri) { return Iri(TermId(std::move(iri))); }
  // Typed literal; an empty datatype means xsd:string.
  static Term Literal(std::string lexical, TermId datatype = {});
  static Term LangLiteral(std::string lexical, std::string lang);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::kIri; }
  bool is_literal() const { return kind_ == Kind::kLiteral; }

  // IRI string for IRIs, lexical form for literals.
  const std::string& value() const { return value_; }
  TermId iri() const;
  const TermId& datatype() const { return datatype_; }
  const std::string& lang() const { return lang_; }

  // N-Triples rendering, used for keys and diagnostics.
  std::string ToNTriples() const;

  auto operator<=>(const Term&) const = default;

 private:
  Kind kind_ = Kind::kIri;
  std::string value_;
  TermId datatype_;
  std::string lang_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  // Throws provkb::Error unless subject and predicate are IRIs.
  static Triple Make(Term s, Term p, Term o);
  std::string ToNTriples() const;

  auto operator<=>(const Triple&) const = default;
};

namespace terms {
TermId RdfType();
TermId RdfsLabel();
TermId RdfsSubClassOf();
TermId XsdString();
TermId RdfLangString();
TermId Pv(std::string_view local);
TermId Gr(std::string_view local);
TermId Ex(std::string_view local);
}  // namespace terms

// Prefix label -> namespace IRI.
class PrefixTable {
 public:
  // pv, gr, foaf, rdf, rdfs, xsd, owl, ex, dbo, dbp, dbr and kb.
  static PrefixTable Defaults();

  void Set(const std::string& label, const std::string& ns);
  std::optional<std::string> Find(const std::string& label) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  // "label:local" -> namespace + local. Throws UnknownPrefix.
  TermId Resolve(std::string_view qname) const;
  // Shortest qname whose local part is safe to write unescaped.
  std::optional<std::string> Compact(const TermId& iri) const;
  // Compact form if one exists, otherwise <iri>.
  std::string Render(const TermId& iri) const;

 private:
  std::map<std::string, std::string> entries_;
};

// True if `local` can be written after "prefix:" without escapes.
bool IsSafeLocalName(std::string_view local);

// Builds ex:<surface> for an entity without a KB entry: spaces become '_'
// and characters outside the IRI grammar are percent-encoded.
TermId MintIri(std::string_view surface);

// Local part after the last '#' or '/', with '_' shown as spaces.
std::string DisplayName(const TermId& iri);

}  // namespace provkb
