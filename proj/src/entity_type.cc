#include "provkb/entity_type.h"

#include "provkb/errors.h"
#include "provkb/text.h"

namespace provkb {

std::string_view EntityTypeName(EntityType type) {
  switch (type) {
    case EntityType::kGroup: return "Group";
    case EntityType::kDivision: return "Division";
    case EntityType::kBrand: return "Brand";
    case EntityType::kRange: return "Range";
    case EntityType::kProduct: return "Product";
    case EntityType::kPerson: return "Person";
    case EntityType::kComponent: return "Component";
  }
  return "Product";
}

std::string_view EntityUiLabel(EntityType type) {
  switch (type) {
    case EntityType::kGroup: return "Groupes";
    case EntityType::kDivision: return "Division";
    case EntityType::kBrand: return "Marque";
    case EntityType::kRange: return "Gamme";
    case EntityType::kProduct: return "Produit";
    case EntityType::kPerson: return "Personne";
    case EntityType::kComponent: return "Composant";
  }
  return "Produit";
}

std::optional<EntityType> ParseEntityType(std::string_view name) {
  std::string lowered = text::Lower(text::Trim(name));
  for (EntityType t : kAllEntityTypes) {
    if (lowered == text::Lower(EntityTypeName(t)) ||
        lowered == text::Lower(EntityUiLabel(t))) {
      return t;
    }
  }
  if (lowered == "groupe") return EntityType::kGroup;
  return std::nullopt;
}

EntityType EntityTypeOrThrow(std::string_view name) {
  auto t = ParseEntityType(name);
  if (!t) throw UnknownType("unknown entity type '" + std::string(name) + "'");
  return *t;
}

TermId EntityClass(EntityType type) {
  switch (type) {
    case EntityType::kGroup: return TermId::In(ns::kGr, "BusinessEntity");
    case EntityType::kDivision: return TermId::In(ns::kProvoc, "Division");
    case EntityType::kBrand: return TermId::In(ns::kGr, "Brand");
    case EntityType::kRange: return TermId::In(ns::kProvoc, "ProductOrServiceRange");
    case EntityType::kProduct: return TermId::In(ns::kGr, "ProductOrService");
    case EntityType::kPerson: return TermId::In(ns::kFoaf, "Person");
    case EntityType::kComponent: return TermId::In(ns::kProvoc, "Component");
  }
  return TermId::In(ns::kGr, "ProductOrService");
}

std::optional<EntityType> EntityTypeOfClass(const TermId& cls) {
  for (EntityType t : kAllEntityTypes) {
    if (EntityClass(t) == cls) return t;
  }
  return std::nullopt;
}

std::string_view EntityColor(EntityType type) {
  switch (type) {
    case EntityType::kGroup: return "brown";
    case EntityType::kDivision: return "blue";
    case EntityType::kBrand: return "red";
    case EntityType::kRange: return "purple";
    case EntityType::kProduct: return "green";
    case EntityType::kPerson: return "orange";
    case EntityType::kComponent: return "teal";
  }
  return "green";
}

int EntityTieRank(EntityType type) {
  switch (type) {
    case EntityType::kProduct: return 0;
    case EntityType::kRange: return 1;
    case EntityType::kBrand: return 2;
    case EntityType::kDivision: return 3;
    case EntityType::kGroup: return 4;
    case EntityType::kComponent: return 5;
    case EntityType::kPerson: return 6;
  }
  return 7;
}

}  // namespace provkb
