#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fincat/error.hpp"
#include "fincat/validation.hpp"

namespace fincat {

using ObjectId = std::string;
using MorphismId = std::string;
using ElementId = std::string;

// Composition orientation, used everywhere in this library: the table entry
// keyed by (g, f) denotes g∘f, i.e. "apply f first". It is defined exactly
// when cod(f) = dom(g), and then dom(g∘f) = dom(f), cod(g∘f) = cod(g).

struct MorphismSpec {
  MorphismId id;
  ObjectId dom;
  ObjectId cod;
};

struct CompositionEntry {
  MorphismId g;
  MorphismId f;
  MorphismId result;
};

// Raw description of a category before index resolution. Builders and the JSON
// loader produce these; FiniteCategory::build turns one into a usable value.
//
// If `identities` is empty, an identity morphism "id_<object>" is generated per
// object and declared morphism ids with that prefix are rejected. Compositions
// with an identity on either side are inferred when absent; explicitly given
// entries are kept verbatim so that broken tables stay representable for
// validate_category to report on.
struct CategorySpec {
  std::vector<ObjectId> objects;
  std::vector<MorphismSpec> morphisms;
  std::map<ObjectId, MorphismId> identities;
  std::vector<CompositionEntry> composition;
};

// Reserved prefix for auto-generated identity morphisms.
inline constexpr std::string_view kIdentityPrefix = "id_";

// Hard cap on category size; keeps every enumeration in this library tractable.
inline constexpr int kMaxMorphisms = 10000;

class FiniteCategory {
 public:
  struct Morphism {
    MorphismId id;
    int dom = -1;
    int cod = -1;
  };

  // Resolves names to indices and freezes the tables. Throws Error(schema) on
  // duplicate/dangling/reserved ids or conflicting entries, Error(guard) when
  // the morphism count exceeds kMaxMorphisms. Law checking is separate; see
  // validate_category.
  static FiniteCategory build(const CategorySpec& spec);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }

  const ObjectId& object_id(int i) const { return objects_[i]; }
  const Morphism& morphism(int i) const { return morphisms_[i]; }

  std::optional<int> object_index(std::string_view id) const;
  std::optional<int> morphism_index(std::string_view id) const;

  // Same lookups, but a miss is the caller's input error.
  int require_object(std::string_view id) const;
  int require_morphism(std::string_view id) const;

  int identity_of(int object) const { return identity_[object]; }
  bool is_identity(int mor) const { return is_identity_[mor] != 0; }

  bool composable(int g, int f) const {
    return morphisms_[f].cod == morphisms_[g].dom;
  }
  // Index of the table entry for g∘f, or -1 when no entry is present.
  int compose(int g, int f) const;

  // Hom-set [from, to] as ascending morphism indices. Morphisms are stored in
  // lexicographic id order, so this is the canonical order.
  std::vector<int> hom(int from, int to) const;

  // All composition entries as (g, f, result) index triples, sorted.
  const std::vector<std::array<int, 3>>& entries() const { return entries_; }

  bool operator==(const FiniteCategory& other) const;

 private:
  std::vector<ObjectId> objects_;   // sorted lexicographically
  std::vector<Morphism> morphisms_; // sorted lexicographically by id
  std::vector<int> identity_;       // per object
  std::vector<char> is_identity_;   // per morphism
  std::vector<std::array<int, 3>> entries_;
  std::unordered_map<std::uint64_t, int> table_;  // (g<<32 | f) -> result
  std::map<ObjectId, int, std::less<>> object_index_;
  std::map<MorphismId, int, std::less<>> morphism_index_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

// Checks every category law and reports all violations; an empty report means
// the value is a category. Structural section: missing entries on composable
// pairs and entries on non-composable pairs. Law section: identity dom/cod,
// dom/cod of composites, unit laws, associativity.
ValidationReport validate_category(const FiniteCategory& cat);

// C^op: same ids, dom/cod swapped, entry (g,f) = input entry (f,g).
// Involution: opposite(opposite(c)) == c.
FiniteCategory opposite(const FiniteCategory& cat);

// Builders. Each output passes validate_category with an empty report.
FiniteCategory discrete_category(const std::vector<ObjectId>& objects);

// One morphism x→y per pair with x ≤ y in the reflexive-transitive closure of
// relation_pairs; rejects antisymmetry failures with the offending pair.
// Non-identity morphisms are named "le(x,y)".
FiniteCategory poset_category(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& relation_pairs);

// Single object "•" whose endomorphisms are the monoid elements; composition is
// the monoid multiplication, table[a][b] = a·b with elements indexed in the
// given order. Rejects non-associative or non-unital tables with a witness.
FiniteCategory monoid_category(const std::vector<std::string>& elements,
                               const std::vector<std::vector<std::string>>& table,
                               const std::string& unit);

struct EdgeSpec {
  std::string id;
  std::string src;
  std::string dst;
};

// Morphisms are the directed paths of the DAG (empty paths are identities);
// composition is path concatenation. A path's id joins its edge ids with "."
// in traversal order. Rejects cyclic edge sets with the cycle as witness.
FiniteCategory free_category_on_dag(const std::vector<std::string>& vertices,
                                    const std::vector<EdgeSpec>& edges);

}  // namespace fincat
