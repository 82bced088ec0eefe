#pragma once

#include <string>
#include <vector>

#include "fincat/functor.hpp"

namespace fincat {

// τ: F ⇒ G between same-base, same-variance functors. components[X] maps the
// element indices of F(X) to element indices of G(X).
struct NaturalTransformation {
  FunctorPtr source;
  FunctorPtr target;
  std::vector<std::vector<int>> components;

  bool operator==(const NaturalTransformation& other) const {
    return components == other.components && *source == *other.source &&
           *target == *other.target;
  }
};

// Empty report iff every naturality square commutes: for each morphism f and
// each element e of the action-source set, τ(F(f)(e)) = G(f)(τ(e)). Violations
// carry (morphism, element) witnesses; shape mismatches go in the structural
// section.
ValidationReport check_naturality(const NaturalTransformation& tau);

inline constexpr long long kDefaultSearchGuard = 10'000'000;

struct EnumOptions {
  long long guard = kDefaultSearchGuard;  // cap on Π_X |G(X)|^|F(X)|
  int threads = 0;                        // 0 = all available; 1 = serial reference
  bool descending_objects = false;        // alternate slot order (result is order-insensitive)
};

// Every assignment of components that passes check_naturality, in lexicographic
// order of the flattened component tables. Deterministic and bit-identical
// across thread counts. Throws Error(guard) when the search space exceeds
// opts.guard, Error(invalid_input) on base/variance mismatch.
std::vector<NaturalTransformation> enumerate_nat_trans(FunctorPtr F, FunctorPtr G,
                                                       const EnumOptions& opts = {});

// The Yoneda map Y(τ) = τ_A(id_A). The source of τ must be structurally equal
// to a hom-functor h^A (or covariant h_A); A is recovered from it.
ElementId yoneda_forward(const NaturalTransformation& tau);

// The inverse: τ_α with components f ↦ F(f)(α). Satisfies
// yoneda_forward(yoneda_backward(α, A, F)) == α.
NaturalTransformation yoneda_backward(const ElementId& alpha, const ObjectId& A,
                                      FunctorPtr F);

struct BijectionCertificate {
  long long nat_count = 0;
  long long f_a_count = 0;
  bool counts_equal = false;
  bool injective = false;
  bool surjective = false;
  bool forward_after_backward_is_identity = false;
  bool backward_after_forward_is_identity = false;
  std::string counterexample;  // empty when ok()

  bool ok() const {
    return counts_equal && injective && surjective &&
           forward_after_backward_is_identity && backward_after_forward_is_identity;
  }
};

// Checks |Nat(h^A, F)| = |F(A)| together with both round trips by exhaustive
// enumeration. A failure here falsifies the implementation, not the theorem.
BijectionCertificate verify_yoneda_bijection(CategoryPtr cat, const ObjectId& A,
                                             FunctorPtr F, const EnumOptions& opts = {});

namespace detail {
// Exposed for the benchmark and the determinism tests.
std::vector<std::vector<int>> enumerate_assignments_serial(const SetValuedFunctor& F,
                                                           const SetValuedFunctor& G,
                                                           bool descending_objects);
std::vector<std::vector<int>> enumerate_assignments_parallel(const SetValuedFunctor& F,
                                                             const SetValuedFunctor& G,
                                                             bool descending_objects,
                                                             int threads);
}  // namespace detail

}  // namespace fincat
