#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fincat/functor.hpp"

namespace fincat {

// Finite preordered set. The constructor checks reflexivity and transitivity
// and throws Error(invalid_input) with a witness; antisymmetry is not required.
class Proset {
 public:
  Proset(std::vector<std::string> carrier, const std::vector<char>& leq_matrix);

  static Proset from_pairs(std::vector<std::string> carrier,
                           const std::vector<std::pair<std::string, std::string>>& pairs);

  int size() const { return static_cast<int>(carrier_.size()); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  std::optional<int> index_of(std::string_view id) const;

  bool leq(int a, int b) const {
    return (rows_[static_cast<std::size_t>(a) * words_ + (b >> 6)] >>
            (b & 63)) & 1;
  }
  bool antisymmetric() const;
  // Witness of a failed antisymmetry check, if any: a pair of distinct
  // mutually comparable elements.
  std::optional<std::pair<int, int>> antisymmetry_witness() const;

  std::vector<std::pair<std::string, std::string>> relation_pairs() const;

  bool operator==(const Proset& other) const {
    return carrier_ == other.carrier_ && rows_ == other.rows_;
  }

 protected:
  std::vector<std::string> carrier_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;  // row-major bitset, rows_[a*words_ + w]
};

// A proset that is additionally antisymmetric (checked on construction).
class Poset : public Proset {
 public:
  explicit Poset(Proset p);
};

// Reflexive-transitive closure of an arbitrary relation matrix, for building
// prosets from raw pairs.
std::vector<char> reflexive_transitive_closure(int n, std::vector<char> matrix);

// The ≤_L preorder on [X,A]: f ≤_L g iff f = t∘g for some t ∈ [A,A]. Carrier is
// the hom-set in canonical order.
Proset build_L_preorder(CategoryPtr cat, const ObjectId& X, const ObjectId& A);

// Remark-4.1 quotient: strongly connected components of the relation digraph,
// ordered by representatives, with [a] ≤' [b] iff a ≤ b. The projection is
// monotone and surjective, and the result is antisymmetric. Class ids are
// "[m]" for the least member m.
struct PosetQuotient {
  Poset poset;
  std::vector<int> projection;  // source index → class index
};
PosetQuotient quotient_to_poset(const Proset& p);

inline constexpr int kAlexandroffCarrierGuard = 20;

// A carrier with a family of open subsets, each stored as a bitmask over the
// carrier order.
struct FiniteTopology {
  std::vector<std::string> carrier;
  std::vector<std::uint32_t> opens;  // ascending masks
};

// The Alexandroff topology of a proset: opens are the up-sets (U ∋ x and x ≤ y
// imply y ∈ U). Guarded at kAlexandroffCarrierGuard elements.
FiniteTopology alexandroff_opens(const Proset& p);

// Checks ∅ and the carrier are present and the family is closed under pairwise
// unions and intersections (which is arbitrary closure for a finite family).
ValidationReport validate_topology(const FiniteTopology& t);

bool is_monotone(std::span<const int> map, const Proset& P, const Proset& Q);
bool is_continuous(std::span<const int> map, const FiniteTopology& TP,
                   const FiniteTopology& TQ);

// Exhaustive agreement scan between is_monotone and is_continuous over all
// |Q|^|P| maps. The parallel path partitions the map index range; the result
// is identical for any thread count.
struct MapScanResult {
  long long maps_checked = 0;
  long long monotone_count = 0;
  long long mismatches = 0;
  long long first_mismatch = -1;  // lowest map index with a mismatch
};
MapScanResult scan_monotone_continuous(const Proset& P, const Proset& Q, int threads = 0);

namespace detail {
MapScanResult scan_monotone_continuous_serial(const Proset& P, const Proset& Q);
MapScanResult scan_monotone_continuous_parallel(const Proset& P, const Proset& Q,
                                                int threads);
}  // namespace detail

// Im as a monotone map from ([X,A], ≤_L) to (Sub F(X), ⊆): f ↦ Im(f).
struct StratificationMap {
  Proset source;
  Poset target;
  std::vector<int> map;  // source index → target index
};
StratificationMap stratification_map(CategoryPtr cat, const ObjectId& X, const ObjectId& A,
                                     const SetValuedFunctor& F, int cap = kPowersetCap);

// Monotonicity check with witnesses (a ≤ b with map(a) ≰ map(b)).
ValidationReport validate_stratification(const StratificationMap& s);

// DOT renderings: Hasse diagram of a poset (covering relations only) and a
// two-cluster drawing of a stratification map.
std::string dot_hasse(const Poset& p, std::string_view name = "hasse");
std::string dot_stratification(const StratificationMap& s);

}  // namespace fincat
