#include "provkb/rdf.h"

#include <cctype>
#include <cstdio>

#include "provkb/errors.h"

namespace provkb {

bool IsAbsoluteIri(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) {
    return false;
  }
  for (size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  return false;
}

TermId::TermId(std::string iri) : iri_(std::move(iri)) {
  if (!IsAbsoluteIri(iri_)) throw Error("not an absolute IRI: '" + iri_ + "'");
}

TermId TermId::In(std::string_view ns, std::string_view local) {
  std::string iri(ns);
  iri += local;
  return TermId(std::move(iri));
}

Term Term::Iri(TermId id) {
  if (id.empty()) throw Error("empty IRI term");
  Term t;
  t.kind_ = Kind::kIri;
  t.value_ = id.str();
  return t;
}

Term Term::Literal(std::string lexical, TermId datatype) {
  Term t;
  t.kind_ = Kind::kLiteral;
  t.value_ = std::move(lexical);
  t.datatype_ = datatype.empty() ? terms::XsdString() : std::move(datatype);
  return t;
}

Term Term::LangLiteral(std::string lexical, std::string lang) {
  Term t;
  t.kind_ = Kind::kLiteral;
  t.value_ = std::move(lexical);
  t.datatype_ = terms::RdfLangString();
  std::string lowered;
  for (char c : lang) {
    lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  t.lang_ = std::move(lowered);
  return t;
}

TermId Term::iri() const {
  if (!is_iri()) throw Error("literal used where an IRI is required: " + value_);
  return TermId(value_);
}

namespace {

void EscapeString(std::string_view s, std::string* out) {
  for (char c : s) {
    switch (c) {
      case '"': *out += "\\\""; break;
      case '\\': *out += "\\\\"; break;
      case '\n': *out += "\\n"; break;
      case '\r': *out += "\\r"; break;
      case '\t': *out += "\\t"; break;
      default: out->push_back(c);
    }
  }
}

void EscapeIri(std::string_view s, std::string* out) {
  for (unsigned char c : s) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04X", c);
      *out += buf;
    } else {
      out->push_back(static_cast<char>(c));
    }
  }
}

}  // namespace

std::string Term::ToNTriples() const {
  std::string out;
  if (is_iri()) {
    out.push_back('<');
    EscapeIri(value_, &out);
    out.push_back('>');
    return out;
  }
  out.push_back('"');
  EscapeString(value_, &out);
  out.push_back('"');
  if (!lang_.empty()) {
    out += "@" + lang_;
  } else if (datatype_ != terms::XsdString()) {
    out += "^^<" + datatype_.str() + ">";
  }
  return out;
}

Triple Triple::Make(Term s, Term p, Term o) {
  if (!s.is_iri()) throw Error("triple subject must be an IRI");
  if (!p.is_iri()) throw Error("triple predicate must be an IRI");
  return Triple{std::move(s), std::move(p), std::move(o)};
}

std::string Triple::ToNTriples() const {
  return subject.ToNTriples() + " " + predicate.ToNTriples() + " " +
         object.ToNTriples() + " .";
}

namespace terms {
TermId RdfType() { return TermId::In(ns::kRdf, "type"); }
TermId RdfsLabel() { return TermId::In(ns::kRdfs, "label"); }
TermId RdfsSubClassOf() { return TermId::In(ns::kRdfs, "subClassOf"); }
TermId XsdString() { return TermId::In(ns::kXsd, "string"); }
TermId RdfLangString() { return TermId::In(ns::kRdf, "langString"); }
TermId Pv(std::string_view local) { return TermId::In(ns::kProvoc, local); }
TermId Gr(std::string_view local) { return TermId::In(ns::kGr, local); }
TermId Ex(std::string_view local) { return TermId::In(ns::kEx, local); }
}  // namespace terms

PrefixTable PrefixTable::Defaults() {
  PrefixTable t;
  t.Set("pv", std::string(ns::kProvoc));
  t.Set("gr", std::string(ns::kGr));
  t.Set("foaf", std::string(ns::kFoaf));
  t.Set("rdf", std::string(ns::kRdf));
  t.Set("rdfs", std::string(ns::kRdfs));
  t.Set("xsd", std::string(ns::kXsd));
  t.Set("owl", std::string(ns::kOwl));
  t.Set("ex", std::string(ns::kEx));
  t.Set("dbo", std::string(ns::kDbo));
  t.Set("dbp", std::string(ns::kDbp));
  t.Set("dbr", std::string(ns::kDbr));
  t.Set("kb", std::string(ns::kKb));
  return t;
}

void PrefixTable::Set(const std::string& label, const std::string& ns) {
  entries_[label] = ns;
}

std::optional<std::string> PrefixTable::Find(const std::string& label) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

TermId PrefixTable::Resolve(std::string_view qname) const {
  size_t colon = qname.find(':');
  if (colon == std::string_view::npos) {
    throw Error("not a prefixed name: '" + std::string(qname) + "'");
  }
  std::string label(qname.substr(0, colon));
  auto ns = Find(label);
  if (!ns) throw UnknownPrefix(label);
  return TermId(*ns + std::string(qname.substr(colon + 1)));
}

bool IsSafeLocalName(std::string_view local) {
  if (local.empty()) return false;
  for (size_t i = 0; i < local.size(); ++i) {
    unsigned char c = local[i];
    bool ok = std::isalnum(c) || c == '_' || c >= 0x80 ||
              ((c == '-' || c == '.' || c == ':') && i > 0);
    if (!ok) return false;
  }
  return local.back() != '.';
}

std::optional<std::string> PrefixTable::Compact(const TermId& iri) const {
  std::optional<std::string> best;
  for (const auto& [label, ns] : entries_) {
    if (ns.empty() || iri.str().size() <= ns.size() ||
        iri.str().compare(0, ns.size(), ns) != 0) {
      continue;
    }
    std::string_view local = std::string_view(iri.str()).substr(ns.size());
    if (!IsSafeLocalName(local)) continue;
    std::string candidate = label + ":" + std::string(local);
    if (!best || candidate.size() < best->size() ||
        (candidate.size() == best->size() && candidate < *best)) {
      best = std::move(candidate);
    }
  }
  return best;
}

std::string PrefixTable::Render(const TermId& iri) const {
  if (auto q = Compact(iri)) return *q;
  return Term::Iri(iri).ToNTriples();
}

TermId MintIri(std::string_view surface) {
  std::string local;
  bool pending_space = false;
  for (unsigned char c : surface) {
    if (std::isspace(c)) {
      pending_space = !local.empty();
      continue;
    }
    if (pending_space) {
      local.push_back('_');
      pending_space = false;
    }
    if (c < 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\' || c == '#' || c == '%') {
      char buf[4];
      std::snprintf(buf, sizeof(buf), "%%%02X", c);
      local += buf;
    } else {
      local.push_back(static_cast<char>(c));
    }
  }
  if (local.empty()) throw Error("cannot mint an IRI from an empty surface");
  return terms::Ex(local);
}

std::string DisplayName(const TermId& iri) {
  const std::string& s = iri.str();
  size_t cut = s.find_last_of("#/");
  std::string local = cut == std::string::npos ? s : s.substr(cut + 1);
  for (char& c : local) {
    if (c == '_') c = ' ';
  }
  return local;
}

}  // namespace provkb
