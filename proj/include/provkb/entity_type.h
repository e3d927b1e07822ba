#pragma once

// The seven entity types recognized in text, with their vocabulary class,
// UI label, highlight color and tie-break rank.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "provkb/rdf.h"

namespace provkb {

enum class EntityType { kGroup, kDivision, kBrand, kRange, kProduct, kPerson, kComponent };

inline constexpr std::array<EntityType, 7> kAllEntityTypes = {
    EntityType::kGroup,   EntityType::kDivision, EntityType::kBrand,
    EntityType::kRange,   EntityType::kProduct,  EntityType::kPerson,
    EntityType::kComponent};

// "Group", "Brand", ...
std::string_view EntityTypeName(EntityType type);
// Accepts the English names and the UI labels, case-insensitively.
std::optional<EntityType> ParseEntityType(std::string_view name);
// Throws UnknownType.
EntityType EntityTypeOrThrow(std::string_view name);

TermId EntityClass(EntityType type);
// Type whose class is exactly `cls`, if any.
std::optional<EntityType> EntityTypeOfClass(const TermId& cls);
// French UI label ("Groupes", "Division", "Marque", "Gamme", "Produit",
// "Personne", "Composant").
std::string_view EntityUiLabel(EntityType type);
// CSS color name used for highlighting.
std::string_view EntityColor(EntityType type);
// Lower rank wins ties: Product, Range, Brand, Division, Group, Component,
// Person.
int EntityTieRank(EntityType type);

}  // namespace provkb
