#pragma once

#include <string>
#include <vector>

#include "fincat/strata.hpp"

namespace fincat {

// The bundled verification corpus: every chain category up to length 4,
// discrete categories up to 3 objects, the one-object categories for the
// monoids Z2, M2 and Z3, and the free category on the commutative-square DAG.
// Each (category, A, F) triple pairs an object with the hom-functor there,
// the two-element constant functor, the subset functor of a hom-functor, and a
// few degenerate functors (empty value sets, one-sided forks), in both
// variances.

struct CorpusCategory {
  std::string name;
  CategoryPtr category;
};

struct CorpusTriple {
  std::string category_name;
  CategoryPtr category;
  ObjectId A;
  std::string functor_name;
  FunctorPtr F;
};

const std::vector<CorpusCategory>& corpus_categories();
const std::vector<CorpusTriple>& corpus_triples();

// Every ≤_L preorder of every corpus hom-set with carrier within the bound,
// together with the quotient posets.
std::vector<Proset> corpus_prosets(int max_carrier);

}  // namespace fincat
