#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fincat/category.hpp"

namespace fincat {

enum class Variance { covariant, contravariant };

inline const char* variance_name(Variance v) {
  return v == Variance::covariant ? "covariant" : "contravariant";
}

// A functor C → Set with finite value sets. For a morphism f: X→Y the stored
// action table maps F(X)→F(Y) when covariant and F(Y)→F(X) when contravariant;
// action_source/action_target name the two sides uniformly.
class SetValuedFunctor {
 public:
  struct Data {
    CategoryPtr base;
    Variance variance = Variance::contravariant;
    std::vector<std::vector<ElementId>> elements;  // per object index
    std::vector<std::vector<int>> action;          // per morphism index
  };

  // Sorts each element set, then checks shapes: one set per object, one total
  // table per morphism with values in range. Throws Error(schema) otherwise.
  static SetValuedFunctor build(Data data);

  const FiniteCategory& base() const { return *data_.base; }
  const CategoryPtr& base_ptr() const { return data_.base; }
  Variance variance() const { return data_.variance; }

  int set_size(int obj) const { return static_cast<int>(data_.elements[obj].size()); }
  const std::vector<ElementId>& elements(int obj) const { return data_.elements[obj]; }
  std::optional<int> element_index(int obj, std::string_view id) const;
  int require_element(int obj, std::string_view id) const;

  int action_source(int mor) const {
    const auto& m = base().morphism(mor);
    return data_.variance == Variance::covariant ? m.dom : m.cod;
  }
  int action_target(int mor) const {
    const auto& m = base().morphism(mor);
    return data_.variance == Variance::covariant ? m.cod : m.dom;
  }
  std::span<const int> table(int mor) const { return data_.action[mor]; }
  int apply(int mor, int elem) const { return data_.action[mor][elem]; }

  bool operator==(const SetValuedFunctor& other) const;

 private:
  Data data_;
};

using FunctorPtr = std::shared_ptr<const SetValuedFunctor>;

// Law check: F(id_X) = id and F(g∘f) equals the variance-appropriate chain of
// tables, for every entry of the base composition table. Empty report = functor.
ValidationReport validate_functor(const SetValuedFunctor& F);

// h^A = hom(−, A) (contravariant) or h_A = hom(A, −) (covariant). Elements are
// the morphism ids themselves; the action is (pre/post)-composition.
SetValuedFunctor hom_functor(CategoryPtr cat, const ObjectId& A, Variance variance);

// Functor with the same value sets on every object and identity actions.
SetValuedFunctor constant_functor(CategoryPtr cat, std::vector<ElementId> set,
                                  Variance variance);

// { F(m)(s) : s ∈ S } as sorted element indices of the action-target set.
std::vector<int> direct_image(const SetValuedFunctor& F, int mor, std::span<const int> subset);

// Id-level convenience; validates membership of each element in the
// action-source set of `mor`.
std::vector<ElementId> direct_image(const SetValuedFunctor& F, const MorphismId& mor,
                                    const std::vector<ElementId>& subset);

// Canonical name of a subset given its member ids in ascending order: "{a,b}".
std::string subset_id(std::span<const ElementId> members);

// All subsets of F(X), each as a sorted member list; family ordered by subset id.
struct SubsetFamily {
  ObjectId object;
  std::vector<std::vector<ElementId>> subsets;
};
inline constexpr int kPowersetCap = 12;
SubsetFamily powerset_family(const SetValuedFunctor& F, const ObjectId& X,
                             int cap = kPowersetCap);

// Sub F: X ↦ powerset of F(X) with the direct-image action; same variance as F.
// Throws Error(guard) naming the object when some |F(X)| exceeds the cap.
SetValuedFunctor sub_functor(const SetValuedFunctor& F, int cap = kPowersetCap);

// The same tables read as a functor of the opposite variance over op_base,
// which must equal opposite(F.base()). Passes validate_functor unchanged.
SetValuedFunctor reinterpret_over_opposite(const SetValuedFunctor& F, CategoryPtr op_base);

}  // namespace fincat
