#include "provkb/vocab.h"

#include <deque>
#include <functional>

#include "provkb/errors.h"
#include "provkb/paths.h"
#include "provkb/turtle.h"

namespace provkb::vocab {

namespace {

TermId Rdfs(std::string_view local) { return TermId::In(ns::kRdfs, local); }
TermId Rdf(std::string_view local) { return TermId::In(ns::kRdf, local); }
TermId Owl(std::string_view local) { return TermId::In(ns::kOwl, local); }

bool IsClassType(const TermId& t) {
  return t == Rdfs("Class") || t == Owl("Class");
}

bool IsPropertyType(const TermId& t) {
  return t == Rdf("Property") || t == Owl("ObjectProperty") ||
         t == Owl("DatatypeProperty") || t == Owl("AnnotationProperty");
}

}  // namespace

TermId Resolve(std::string_view qname, const PrefixTable& prefixes) {
  return prefixes.Resolve(qname);
}

VocabRegistry VocabRegistry::FromTurtle(std::string_view text) {
  store::TurtleDocument doc =
      store::ParseTurtleDocument(text, PrefixTable::Defaults());
  VocabRegistry reg;
  reg.prefixes_ = doc.prefixes;

  const TermId type = terms::RdfType();
  for (const Triple& t : doc.triples) {
    if (t.predicate.iri() != type || !t.object.is_iri()) continue;
    TermId subject = t.subject.iri();
    TermId cls = t.object.iri();
    if (IsClassType(cls)) {
      reg.classes_[subject].id = subject;
    } else if (IsPropertyType(cls)) {
      reg.properties_[subject].id = subject;
    }
  }

  const TermId label = terms::RdfsLabel();
  const TermId alias = TermId::In(ns::kKb, "alias");
  for (const Triple& t : doc.triples) {
    TermId subject = t.subject.iri();
    TermId pred = t.predicate.iri();
    auto cls = reg.classes_.find(subject);
    auto prop = reg.properties_.find(subject);
    if (pred == label) {
      if (cls != reg.classes_.end()) cls->second.label = t.object.value();
      if (prop != reg.properties_.end()) prop->second.label = t.object.value();
      continue;
    }
    if (pred == terms::RdfsSubClassOf()) {
      if (cls == reg.classes_.end()) {
        throw VocabError("subClassOf on undeclared class " + subject.str());
      }
      cls->second.super_classes.insert(t.object.iri());
      continue;
    }
    if (pred == type) continue;
    if (prop == reg.properties_.end()) continue;
    if (pred == Rdfs("domain")) {
      prop->second.domain.insert(t.object.iri());
    } else if (pred == Rdfs("range")) {
      if (!prop->second.range.empty()) {
        throw VocabError("property " + subject.str() + " has several ranges");
      }
      prop->second.range = t.object.iri();
    } else if (pred == Rdfs("subPropertyOf")) {
      prop->second.super_properties.insert(t.object.iri());
    } else if (pred == alias) {
      prop->second.aliases.insert(t.object.iri());
    }
  }

  for (auto& [id, prop] : reg.properties_) {
    if (prop.domain.empty()) prop.domain.insert(Rdfs("Resource"));
    if (prop.range.empty()) prop.range = Rdfs("Resource");
    for (const TermId& a : prop.aliases) {
      if (reg.properties_.count(a)) {
        throw VocabError("alias " + a.str() + " is also a canonical property");
      }
      auto [it, fresh] = reg.alias_to_canonical_.emplace(a, id);
      if (!fresh) {
        throw VocabError("alias " + a.str() + " claimed by " + it->second.str() +
                         " and " + id.str());
      }
    }
  }
  reg.CheckClosed();
  return reg;
}

VocabRegistry VocabRegistry::FromFile(const std::filesystem::path& path) {
  return FromTurtle(ReadFile(path));
}

const VocabRegistry& VocabRegistry::Default() {
  static const VocabRegistry reg = FromFile(DataPath("vocab/provoc.ttl"));
  return reg;
}

void VocabRegistry::CheckClosed() const {
  auto need_class = [&](const TermId& c, const std::string& context) {
    if (!classes_.count(c)) {
      throw VocabError(context + " references unregistered class " + c.str());
    }
  };
  for (const auto& [id, cls] : classes_) {
    for (const TermId& s : cls.super_classes) need_class(s, id.str());
  }
  for (const auto& [id, prop] : properties_) {
    for (const TermId& d : prop.domain) need_class(d, id.str());
    need_class(prop.range, id.str());
    for (const TermId& s : prop.super_properties) {
      if (!properties_.count(s)) {
        throw VocabError(id.str() + " has unregistered superproperty " + s.str());
      }
    }
  }
  // Cycle check by depth-first search with colors.
  std::map<TermId, int> color;
  std::function<void(const TermId&)> visit = [&](const TermId& c) {
    color[c] = 1;
    for (const TermId& s : classes_.at(c).super_classes) {
      if (color[s] == 1) throw VocabError("subclass cycle through " + s.str());
      if (color[s] == 0) visit(s);
    }
    color[c] = 2;
  };
  for (const auto& [id, cls] : classes_) {
    if (color[id] == 0) visit(id);
  }
}

const ClassDef* VocabRegistry::FindClass(const TermId& id) const {
  auto it = classes_.find(id);
  return it == classes_.end() ? nullptr : &it->second;
}

const PropertyDef* VocabRegistry::FindProperty(const TermId& id) const {
  auto it = properties_.find(id);
  return it == properties_.end() ? nullptr : &it->second;
}

TermId VocabRegistry::Resolve(std::string_view qname) const {
  return prefixes_.Resolve(qname);
}

NormalizedProperty VocabRegistry::NormalizeProperty(const TermId& id) const {
  if (properties_.count(id)) return {id, true};
  auto it = alias_to_canonical_.find(id);
  if (it != alias_to_canonical_.end()) return {it->second, true};
  return {id, false};
}

std::set<TermId> VocabRegistry::TypeClosure(const std::set<TermId>& types) const {
  std::set<TermId> out = types;
  std::deque<TermId> queue(types.begin(), types.end());
  while (!queue.empty()) {
    TermId c = queue.front();
    queue.pop_front();
    const ClassDef* def = FindClass(c);
    if (!def) continue;
    for (const TermId& s : def->super_classes) {
      if (out.insert(s).second) queue.push_back(s);
    }
  }
  return out;
}

std::set<TermId> VocabRegistry::SuperProperties(const TermId& property) const {
  std::set<TermId> out;
  std::deque<TermId> queue{property};
  while (!queue.empty()) {
    TermId p = queue.front();
    queue.pop_front();
    const PropertyDef* def = FindProperty(p);
    if (!def) continue;
    for (const TermId& s : def->super_properties) {
      if (s != property && out.insert(s).second) queue.push_back(s);
    }
  }
  return out;
}

std::vector<Violation> VocabRegistry::ValidateTriple(const Triple& t,
                                                     const TypeMap& types) const {
  std::vector<Violation> out;
  NormalizedProperty np = NormalizeProperty(t.predicate.iri());
  const PropertyDef* prop = FindProperty(np.id);
  if (!prop) {
    out.push_back({ViolationKind::kUnknownProperty, Severity::kWarning,
                   "unknown property " + np.id.str()});
    return out;
  }
  const TermId resource = Rdfs("Resource");
  const TermId literal = Rdfs("Literal");

  auto types_of = [&](const TermId& e) {
    auto it = types.find(e);
    return it == types.end() ? std::set<TermId>{} : TypeClosure(it->second);
  };

  if (!prop->domain.count(resource)) {
    std::set<TermId> st = types_of(t.subject.iri());
    if (st.empty()) {
      out.push_back({ViolationKind::kUntypedSubject, Severity::kWarning,
                     "subject " + t.subject.value() + " has no type"});
    } else {
      bool ok = false;
      for (const TermId& d : prop->domain) ok = ok || st.count(d);
      if (!ok) {
        out.push_back({ViolationKind::kDomain, Severity::kError,
                       "subject " + t.subject.value() + " is outside the domain of " +
                           prop->id.str()});
      }
    }
  }

  if (np.id == terms::RdfType()) {
    if (!t.object.is_iri() || !IsClass(t.object.iri())) {
      out.push_back({ViolationKind::kRange, Severity::kError,
                     "rdf:type object " + t.object.value() +
                         " is not a registered class"});
    }
    return out;
  }
  if (prop->range == resource) return out;
  if (t.object.is_literal()) {
    if (prop->range != literal) {
      out.push_back({ViolationKind::kRange, Severity::kError,
                     "literal object for " + prop->id.str()});
    }
    return out;
  }
  if (prop->range == literal) {
    out.push_back({ViolationKind::kRange, Severity::kError,
                   prop->id.str() + " expects a literal object"});
    return out;
  }
  std::set<TermId> ot = types_of(t.object.iri());
  if (ot.empty()) {
    out.push_back({ViolationKind::kUntypedObject, Severity::kWarning,
                   "object " + t.object.value() + " has no type"});
  } else if (!ot.count(prop->range)) {
    out.push_back({ViolationKind::kRange, Severity::kError,
                   "object " + t.object.value() + " is outside the range of " +
                       prop->id.str()});
  }
  return out;
}

}  // namespace provkb::vocab
