#pragma once

// Class and property definitions of the product vocabulary: term
// resolution, alias normalization, subclass/subproperty closure and
// domain/range checks.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "provkb/rdf.h"

namespace provkb::vocab {

struct ClassDef {
  TermId id;
  std::set<TermId> super_classes;  // direct
  std::string label;
};

struct PropertyDef {
  TermId id;
  std::set<TermId> domain;  // subject must belong to one of these
  TermId range;
  std::set<TermId> aliases;
  std::set<TermId> super_properties;  // direct
  std::string label;
};

struct NormalizedProperty {
  TermId id;
  bool known = false;
};

enum class ViolationKind {
  kDomain,
  kRange,
  kUntypedSubject,
  kUntypedObject,
  kUnknownProperty,
};
enum class Severity { kError, kWarning };

struct Violation {
  ViolationKind kind;
  Severity severity;
  std::string message;
};

// Entity -> asserted classes.
using TypeMap = std::map<TermId, std::set<TermId>>;

class VocabRegistry {
 public:
  // Builds the registry from a vocabulary document. Throws VocabError when
  // a referenced class is missing, the subclass graph has a cycle, or an
  // alias is claimed twice.
  static VocabRegistry FromTurtle(std::string_view text);
  static VocabRegistry FromFile(const std::filesystem::path& path);
  // The shipped vocabulary, loaded once.
  static const VocabRegistry& Default();

  const PrefixTable& prefixes() const { return prefixes_; }
  const std::map<TermId, ClassDef>& classes() const { return classes_; }
  const std::map<TermId, PropertyDef>& properties() const { return properties_; }

  const ClassDef* FindClass(const TermId& id) const;
  const PropertyDef* FindProperty(const TermId& id) const;
  bool IsClass(const TermId& id) const { return FindClass(id) != nullptr; }

  TermId Resolve(std::string_view qname) const;
  // Canonical id for a canonical name or alias; unknown ids are returned
  // unchanged with known=false.
  NormalizedProperty NormalizeProperty(const TermId& id) const;
  // Input plus every transitive superclass.
  std::set<TermId> TypeClosure(const std::set<TermId>& types) const;
  // Transitive superproperties, excluding the property itself.
  std::set<TermId> SuperProperties(const TermId& property) const;

  std::vector<Violation> ValidateTriple(const Triple& t,
                                        const TypeMap& types) const;

 private:
  void CheckClosed() const;

  PrefixTable prefixes_;
  std::map<TermId, ClassDef> classes_;
  std::map<TermId, PropertyDef> properties_;
  std::map<TermId, TermId> alias_to_canonical_;
};

// "label:local" -> IRI. Throws UnknownPrefix.
TermId Resolve(std::string_view qname, const PrefixTable& prefixes);

}  // namespace provkb::vocab
