#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fincat/nat.hpp"
#include "fincat/strata.hpp"

namespace fincat {

using json = nlohmann::json;

// File formats. Categories:
//   {"objects": [...],
//    "morphisms": [{"id":..., "dom":..., "cod":...}, ...],
//    "composition": [{"g":..., "f":..., "result":...}, ...]}
// with identity morphisms and identity compositions omitted and inferred.
// Functors, against a given base category:
//   {"variance": "contravariant" | "covariant",
//    "on_objects": {"X": ["x1", ...], ...},
//    "on_morphisms": {"f": {"y1": "x1", ...}, ...}}
// where each table is keyed by the action-source set dictated by the variance;
// identity tables may be omitted.

// Parsed value plus any law violations found by the validators. `value` is
// absent exactly when laws are violated; schema and structural problems throw
// Error(schema) instead.
template <typename T>
struct Loaded {
  std::optional<T> value;
  ValidationReport report;
};

Loaded<FiniteCategory> category_from_json(const json& j);
Loaded<FiniteCategory> load_category_file(const std::string& path);

Loaded<SetValuedFunctor> functor_from_json(const json& j, CategoryPtr base);
Loaded<SetValuedFunctor> load_functor_file(const std::string& path, CategoryPtr base);

json category_to_json(const FiniteCategory& cat);
json functor_to_json(const SetValuedFunctor& F);
json transformation_to_json(const NaturalTransformation& tau);
json report_to_json(const ValidationReport& report);
json proset_to_json(const Proset& p);
json topology_to_json(const FiniteTopology& t);

// Canonical serialization: sorted keys (via nlohmann's ordered maps), two-space
// indent, trailing newline. All reports go through this.
std::string canonical_dump(const json& j);

}  // namespace fincat
