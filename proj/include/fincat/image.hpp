#pragma once

#include <string>
#include <vector>

#include "fincat/nat.hpp"

namespace fincat {

// Im(f) for f: X→A and contravariant F: the image of F(f): F(A) → F(X), i.e.
// { F(f)(α) : α ∈ F(A) }, sorted canonically. This is the value the canonical
// transformation h^A ⇒ Sub F assigns to f.
std::vector<ElementId> image_of_morphism(const SetValuedFunctor& F, const MorphismId& f);

// The canonical natural transformation Im: h^A ⇒ Sub F, materialized. Requires
// sub_functor(F) to fit under the powerset cap; use im_naturality_check for the
// lazy route. The result passes check_naturality.
NaturalTransformation im_transformation(CategoryPtr cat, const ObjectId& A, FunctorPtr F,
                                        int cap = kPowersetCap);

// Lazy verification of the same naturality squares via direct images only:
// for every g: X→Y and every f ∈ [Y,A], direct_image(F, g, Im(f)) must equal
// Im(f∘g). Never materializes the powerset. Violations carry (g, f) witnesses.
ValidationReport im_naturality_check(CategoryPtr cat, const ObjectId& A,
                                     const SetValuedFunctor& F, int threads = 0);

// Brute-force route of Observation 2.1: enumerate every τ ∈ Nat(h^A, F) once
// and read off { τ(f) : τ } per morphism. Independent of image_of_morphism.
class ImOracle {
 public:
  ImOracle(CategoryPtr cat, const ObjectId& A, FunctorPtr F, const EnumOptions& opts = {});

  // Sorted set of images of f under all enumerated transformations.
  std::vector<ElementId> image_of(const MorphismId& f) const;
  long long transformation_count() const { return count_; }

 private:
  CategoryPtr cat_;
  FunctorPtr F_;
  int A_ = -1;
  long long count_ = 0;
  std::vector<std::vector<std::vector<int>>> values_;  // per object, per hom position
};

std::vector<ElementId> nat_image_oracle(CategoryPtr cat, const ObjectId& A, FunctorPtr F,
                                        const MorphismId& f, const EnumOptions& opts = {});

// Partition of [X,A] by equality of Im; blocks ordered by least member, members
// in canonical order.
std::vector<std::vector<MorphismId>> coarse_classes(CategoryPtr cat, const ObjectId& X,
                                                    const ObjectId& A,
                                                    const SetValuedFunctor& F);

// Dependence in the sense of Thom, restricted to the ambient finite category:
// β ∈ G(X) depends on f_α ∈ [X,A] when every f: X→Y through which f_α factors
// also pulls β back from G(Y).
struct DependenceQuery {
  ObjectId X;
  MorphismId f_alpha;
  FunctorPtr G;  // contravariant, on the same category
};

// Closed form: image_of_morphism(f_α, G).
std::vector<ElementId> depends_set(const DependenceQuery& q);

// Quantifier form: for every object Y and every f ∈ [X,Y] with
// f_α ∈ direct_image(h^A, f, [Y,A]), require β ∈ direct_image(G, f, G(Y)).
bool depends_oracle(const DependenceQuery& q, const ElementId& beta);

}  // namespace fincat
