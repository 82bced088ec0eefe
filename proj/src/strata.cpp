#include "fincat/strata.hpp"

#include <algorithm>
#include <bit>

#include "fincat/image.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fincat {

namespace {

std::size_t words_for(int n) { return static_cast<std::size_t>((n + 63) / 64); }

}  // namespace

Proset::Proset(std::vector<std::string> carrier, const std::vector<char>& leq_matrix)
    : carrier_(std::move(carrier)) {
  const int n = size();
  if (leq_matrix.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorKind::invalid_input, "relation matrix shape does not match carrier");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (carrier_[i] == carrier_[j]) {
        throw Error(ErrorKind::invalid_input, "duplicate carrier id '" + carrier_[i] + "'");
      }
    }
  }

  words_ = words_for(n);
  rows_.assign(static_cast<std::size_t>(n) * words_, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (leq_matrix[static_cast<std::size_t>(a) * n + b]) {
        rows_[static_cast<std::size_t>(a) * words_ + (b >> 6)] |= std::uint64_t{1}
                                                                  << (b & 63);
      }
    }
  }

  for (int a = 0; a < n; ++a) {
    if (!leq(a, a)) {
      throw Error(ErrorKind::invalid_input,
                  "relation is not reflexive at '" + carrier_[a] + "'");
    }
  }
  // Transitive iff every related row is contained in the relating row.
  for (int a = 0; a < n; ++a) {
    const std::uint64_t* row_a = &rows_[static_cast<std::size_t>(a) * words_];
    for (int b = 0; b < n; ++b) {
      if (!leq(a, b)) continue;
      const std::uint64_t* row_b = &rows_[static_cast<std::size_t>(b) * words_];
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t missing = row_b[w] & ~row_a[w];
        if (missing) {
          int c = static_cast<int>(w * 64 + std::countr_zero(missing));
          throw Error(ErrorKind::invalid_input,
                      "relation is not transitive: '" + carrier_[a] + "' ≤ '" +
                          carrier_[b] + "' ≤ '" + carrier_[c] + "' but '" + carrier_[a] +
                          "' ≤ '" + carrier_[c] + "' is missing");
        }
      }
    }
  }
}

Proset Proset::from_pairs(std::vector<std::string> carrier,
                          const std::vector<std::pair<std::string, std::string>>& pairs) {
  const int n = static_cast<int>(carrier.size());
  std::vector<char> matrix(static_cast<std::size_t>(n) * n, 0);
  auto index = [&](const std::string& id) {
    auto it = std::find(carrier.begin(), carrier.end(), id);
    if (it == carrier.end()) {
      throw Error(ErrorKind::invalid_input, "relation pair references unknown id '" + id + "'");
    }
    return static_cast<int>(it - carrier.begin());
  };
  for (int i = 0; i < n; ++i) matrix[static_cast<std::size_t>(i) * n + i] = 1;
  for (const auto& [a, b] : pairs) {
    matrix[static_cast<std::size_t>(index(a)) * n + index(b)] = 1;
  }
  return Proset(std::move(carrier), matrix);
}

std::optional<int> Proset::index_of(std::string_view id) const {
  for (int i = 0; i < size(); ++i) {
    if (carrier_[i] == id) return i;
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> Proset::antisymmetry_witness() const {
  for (int a = 0; a < size(); ++a) {
    for (int b = a + 1; b < size(); ++b) {
      if (leq(a, b) && leq(b, a)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

bool Proset::antisymmetric() const { return !antisymmetry_witness().has_value(); }

std::vector<std::pair<std::string, std::string>> Proset::relation_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      if (leq(a, b)) out.emplace_back(carrier_[a], carrier_[b]);
    }
  }
  return out;
}

Poset::Poset(Proset p) : Proset(std::move(p)) {
  if (auto w = antisymmetry_witness()) {
    throw Error(ErrorKind::invalid_input,
                "relation is not antisymmetric: '" + carrier_[w->first] + "' and '" +
                    carrier_[w->second] + "' are mutually comparable");
  }
}

std::vector<char> reflexive_transitive_closure(int n, std::vector<char> matrix) {
  if (matrix.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorKind::invalid_input, "matrix shape mismatch");
  }
  for (int i = 0; i < n; ++i) matrix[static_cast<std::size_t>(i) * n + i] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!matrix[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (matrix[static_cast<std::size_t>(k) * n + j]) {
          matrix[static_cast<std::size_t>(i) * n + j] = 1;
        }
      }
    }
  }
  return matrix;
}

Proset build_L_preorder(CategoryPtr cat, const ObjectId& X, const ObjectId& A) {
  int x = cat->require_object(X);
  int a = cat->require_object(A);

  std::vector<int> hom_xa = cat->hom(x, a);
  std::vector<int> endos = cat->hom(a, a);
  const int n = static_cast<int>(hom_xa.size());

  std::vector<std::string> carrier;
  carrier.reserve(n);
  for (int m : hom_xa) carrier.push_back(cat->morphism(m).id);

  auto position = [&](int mor) {
    return static_cast<int>(
        std::lower_bound(hom_xa.begin(), hom_xa.end(), mor) - hom_xa.begin());
  };

  // f ≤_L g iff f = t∘g for some t ∈ [A,A]; walking all (t, g) pairs marks
  // exactly those.
  std::vector<char> matrix(static_cast<std::size_t>(n) * n, 0);
  for (int gi = 0; gi < n; ++gi) {
    for (int t : endos) {
      int f = cat->compose(t, hom_xa[gi]);
      if (f < 0) {
        throw Error(ErrorKind::invalid_input,
                    "base category is missing a composition entry; validate it first");
      }
      matrix[static_cast<std::size_t>(position(f)) * n + gi] = 1;
    }
  }
  return Proset(std::move(carrier), matrix);
}

PosetQuotient quotient_to_poset(const Proset& p) {
  const int n = p.size();

  // Tarjan over the relation digraph. The input is already transitive, but the
  // condensation is computed from raw edges all the same.
  std::vector<int> order(n, -1), low(n, 0), scc_of(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int counter = 0, scc_count = 0;
  auto strongconnect = [&](auto&& self, int v) -> void {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w = 0; w < n; ++w) {
      if (w == v || !p.leq(v, w)) continue;
      if (order[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        scc_of[w] = scc_count;
        if (w == v) break;
      }
      ++scc_count;
    }
  };
  for (int v = 0; v < n; ++v) {
    if (order[v] < 0) strongconnect(strongconnect, v);
  }

  // Name each class by its least member and sort classes by that name.
  std::vector<std::string> least(scc_count);
  for (int v = 0; v < n; ++v) {
    const std::string& id = p.carrier()[v];
    if (least[scc_of[v]].empty() || id < least[scc_of[v]]) least[scc_of[v]] = id;
  }
  std::vector<int> class_order(scc_count);
  for (int c = 0; c < scc_count; ++c) class_order[c] = c;
  std::sort(class_order.begin(), class_order.end(),
            [&](int a, int b) { return least[a] < least[b]; });
  std::vector<int> rank(scc_count);
  for (int r = 0; r < scc_count; ++r) rank[class_order[r]] = r;

  std::vector<std::string> carrier(scc_count);
  for (int c = 0; c < scc_count; ++c) carrier[rank[c]] = "[" + least[c] + "]";

  std::vector<int> projection(n);
  for (int v = 0; v < n; ++v) projection[v] = rank[scc_of[v]];

  // [a] ≤' [b] iff a ≤ b; well-defined because the input relation is
  // transitive and class members are mutually comparable.
  std::vector<char> matrix(static_cast<std::size_t>(scc_count) * scc_count, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (p.leq(a, b)) {
        matrix[static_cast<std::size_t>(projection[a]) * scc_count + projection[b]] = 1;
      }
    }
  }

  PosetQuotient q{Poset(Proset(std::move(carrier), matrix)), std::move(projection)};
  return q;
}

FiniteTopology alexandroff_opens(const Proset& p) {
  const int n = p.size();
  if (n > kAlexandroffCarrierGuard) {
    throw Error(ErrorKind::guard, "carrier of size " + std::to_string(n) +
                                      " exceeds the Alexandroff guard of " +
                                      std::to_string(kAlexandroffCarrierGuard));
  }
  std::vector<std::uint32_t> up(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (p.leq(a, b)) up[a] |= std::uint32_t{1} << b;
    }
  }
  FiniteTopology t;
  t.carrier = p.carrier();
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool open = true;
    for (int a = 0; a < n && open; ++a) {
      if (mask & (std::uint32_t{1} << a)) open = (up[a] & ~mask) == 0;
    }
    if (open) t.opens.push_back(mask);
  }
  return t;
}

ValidationReport validate_topology(const FiniteTopology& t) {
  ValidationReport report;
  const int n = static_cast<int>(t.carrier.size());
  if (n > 32) {
    report.add_structural("carrier-size", {}, "carrier too large for mask representation");
    return report;
  }
  const std::uint32_t full =
      n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;

  auto member = [&](std::uint32_t mask) {
    return std::binary_search(t.opens.begin(), t.opens.end(), mask);
  };
  auto subset_name = [&](std::uint32_t mask) {
    std::vector<ElementId> members;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) members.push_back(t.carrier[i]);
    }
    return subset_id(members);
  };

  if (!std::is_sorted(t.opens.begin(), t.opens.end())) {
    report.add_structural("opens-order", {}, "the family of opens must be sorted");
    return report;
  }
  if (!member(0)) report.add_law("topology", {subset_name(0)}, "∅ is not open");
  if (!member(full)) {
    report.add_law("topology", {subset_name(full)}, "the carrier is not open");
  }
  for (std::uint32_t u : t.opens) {
    for (std::uint32_t v : t.opens) {
      if (!member(u | v)) {
        report.add_law("union-closure", {subset_name(u), subset_name(v)},
                       subset_name(u) + " ∪ " + subset_name(v) + " is not open");
      }
      if (!member(u & v)) {
        report.add_law("intersection-closure", {subset_name(u), subset_name(v)},
                       subset_name(u) + " ∩ " + subset_name(v) + " is not open");
      }
    }
  }
  return report;
}

bool is_monotone(std::span<const int> map, const Proset& P, const Proset& Q) {
  if (static_cast<int>(map.size()) != P.size()) {
    throw Error(ErrorKind::invalid_input, "map is not total on the source carrier");
  }
  for (int v : map) {
    if (v < 0 || v >= Q.size()) {
      throw Error(ErrorKind::invalid_input, "map value outside the target carrier");
    }
  }
  for (int a = 0; a < P.size(); ++a) {
    for (int b = 0; b < P.size(); ++b) {
      if (P.leq(a, b) && !Q.leq(map[a], map[b])) return false;
    }
  }
  return true;
}

bool is_continuous(std::span<const int> map, const FiniteTopology& TP,
                   const FiniteTopology& TQ) {
  if (map.size() != TP.carrier.size()) {
    throw Error(ErrorKind::invalid_input, "map is not total on the source carrier");
  }
  for (int v : map) {
    if (v < 0 || v >= static_cast<int>(TQ.carrier.size())) {
      throw Error(ErrorKind::invalid_input, "map value outside the target carrier");
    }
  }
  for (std::uint32_t open : TQ.opens) {
    std::uint32_t preimage = 0;
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (open & (std::uint32_t{1} << map[i])) preimage |= std::uint32_t{1} << i;
    }
    if (!std::binary_search(TP.opens.begin(), TP.opens.end(), preimage)) return false;
  }
  return true;
}

namespace detail {

namespace {

struct ScanContext {
  const Proset& P;
  const Proset& Q;
  FiniteTopology TP;
  FiniteTopology TQ;
  long long total;

  ScanContext(const Proset& p, const Proset& q)
      : P(p), Q(q), TP(alexandroff_opens(p)), TQ(alexandroff_opens(q)) {
    total = 1;
    for (int i = 0; i < p.size(); ++i) {
      total *= q.size();
      if (total > 100'000'000ll) {
        throw Error(ErrorKind::guard, "map space too large to scan exhaustively");
      }
    }
    if (p.size() == 0) total = 1;
  }

  void decode(long long index, std::vector<int>& map) const {
    for (int i = 0; i < P.size(); ++i) {
      map[i] = static_cast<int>(index % Q.size());
      index /= Q.size();
    }
  }

  void accumulate(long long index, std::vector<int>& map, MapScanResult& r) const {
    decode(index, map);
    bool mono = is_monotone(map, P, Q);
    bool cont = is_continuous(map, TP, TQ);
    ++r.maps_checked;
    if (mono) ++r.monotone_count;
    if (mono != cont) {
      ++r.mismatches;
      if (r.first_mismatch < 0 || index < r.first_mismatch) r.first_mismatch = index;
    }
  }
};

}  // namespace

MapScanResult scan_monotone_continuous_serial(const Proset& P, const Proset& Q) {
  ScanContext ctx(P, Q);
  if (Q.size() == 0 && P.size() > 0) return {};  // no maps at all
  MapScanResult result;
  std::vector<int> map(P.size());
  for (long long index = 0; index < ctx.total; ++index) {
    ctx.accumulate(index, map, result);
  }
  return result;
}

MapScanResult scan_monotone_continuous_parallel(const Proset& P, const Proset& Q,
                                                int threads) {
  ScanContext ctx(P, Q);
  if (Q.size() == 0 && P.size() > 0) return {};
  const int workers =
#ifdef _OPENMP
      threads > 0 ? threads : omp_get_max_threads();
#else
      1;
  (void)threads;
#endif

  std::vector<MapScanResult> partial(workers);
#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
  {
    int w = omp_get_thread_num();
    std::vector<int> map(P.size());
#pragma omp for schedule(static)
    for (long long index = 0; index < ctx.total; ++index) {
      ctx.accumulate(index, map, partial[w]);
    }
  }
#else
  std::vector<int> map(P.size());
  for (long long index = 0; index < ctx.total; ++index) {
    ctx.accumulate(index, map, partial[0]);
  }
#endif

  MapScanResult result;
  for (const auto& p : partial) {
    result.maps_checked += p.maps_checked;
    result.monotone_count += p.monotone_count;
    result.mismatches += p.mismatches;
    if (p.first_mismatch >= 0 &&
        (result.first_mismatch < 0 || p.first_mismatch < result.first_mismatch)) {
      result.first_mismatch = p.first_mismatch;
    }
  }
  return result;
}

}  // namespace detail

MapScanResult scan_monotone_continuous(const Proset& P, const Proset& Q, int threads) {
#ifdef _OPENMP
  int workers = threads > 0 ? threads : omp_get_max_threads();
#else
  int workers = 1;
#endif
  return workers > 1 ? detail::scan_monotone_continuous_parallel(P, Q, workers)
                     : detail::scan_monotone_continuous_serial(P, Q);
}

StratificationMap stratification_map(CategoryPtr cat, const ObjectId& X, const ObjectId& A,
                                     const SetValuedFunctor& F, int cap) {
  if (F.variance() != Variance::contravariant) {
    throw Error(ErrorKind::invalid_input, "stratification_map requires a contravariant functor");
  }
  int x = cat->require_object(X);

  Proset source = build_L_preorder(cat, X, A);

  // Target: (Sub F(X), ⊆) with the same subset naming as sub_functor.
  SubsetFamily family = powerset_family(F, X, cap);
  const int m = static_cast<int>(family.subsets.size());
  std::vector<std::string> carrier(m);
  std::vector<std::uint64_t> masks(m, 0);
  for (int i = 0; i < m; ++i) {
    carrier[i] = subset_id(family.subsets[i]);
    for (const auto& member : family.subsets[i]) {
      masks[i] |= std::uint64_t{1} << F.require_element(x, member);
    }
  }
  std::vector<char> matrix(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if ((masks[i] & ~masks[j]) == 0) {
        matrix[static_cast<std::size_t>(i) * m + j] = 1;
      }
    }
  }
  Poset target{Proset(std::move(carrier), matrix)};

  std::vector<int> map;
  map.reserve(source.size());
  for (const std::string& f_id : source.carrier()) {
    std::vector<ElementId> img = image_of_morphism(F, f_id);
    auto pos = target.index_of(subset_id(img));
    map.push_back(*pos);
  }
  return {std::move(source), std::move(target), std::move(map)};
}

ValidationReport validate_stratification(const StratificationMap& s) {
  ValidationReport report;
  if (static_cast<int>(s.map.size()) != s.source.size()) {
    report.add_structural("shape", {}, "map is not total on the source carrier");
    return report;
  }
  for (int a = 0; a < s.source.size(); ++a) {
    for (int b = 0; b < s.source.size(); ++b) {
      if (s.source.leq(a, b) && !s.target.leq(s.map[a], s.map[b])) {
        report.add_law("monotone",
                       {s.source.carrier()[a], s.source.carrier()[b]},
                       "'" + s.source.carrier()[a] + "' ≤ '" + s.source.carrier()[b] +
                           "' but the images are not ordered");
      }
    }
  }
  return report;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// Covering relations of a poset: a < b with nothing strictly between.
std::vector<std::pair<int, int>> covers(const Poset& p) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < p.size(); ++b) {
      if (a == b || !p.leq(a, b)) continue;
      bool covered = true;
      for (int c = 0; c < p.size() && covered; ++c) {
        if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) covered = false;
      }
      if (covered) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace

std::string dot_hasse(const Poset& p, std::string_view name) {
  std::string out = "digraph " + std::string(name) + " {\n  rankdir=BT;\n";
  for (int i = 0; i < p.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=" + quote(p.carrier()[i]) + "];\n";
  }
  for (const auto& [a, b] : covers(p)) {
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string dot_stratification(const StratificationMap& s) {
  std::string out = "digraph stratification {\n  rankdir=BT;\n  compound=true;\n";
  out += "  subgraph cluster_source {\n    label=\"hom-set with ≤_L\";\n";
  for (int i = 0; i < s.source.size(); ++i) {
    out += "    s" + std::to_string(i) + " [label=" + quote(s.source.carrier()[i]) + "];\n";
  }
  for (int a = 0; a < s.source.size(); ++a) {
    for (int b = 0; b < s.source.size(); ++b) {
      if (a != b && s.source.leq(a, b)) {
        out += "    s" + std::to_string(a) + " -> s" + std::to_string(b) + ";\n";
      }
    }
  }
  out += "  }\n  subgraph cluster_target {\n    label=\"subsets with ⊆\";\n";
  for (int i = 0; i < s.target.size(); ++i) {
    out += "    t" + std::to_string(i) + " [label=" + quote(s.target.carrier()[i]) + "];\n";
  }
  for (const auto& [a, b] : covers(s.target)) {
    out += "    t" + std::to_string(a) + " -> t" + std::to_string(b) + ";\n";
  }
  out += "  }\n";
  for (int i = 0; i < s.source.size(); ++i) {
    out += "  s" + std::to_string(i) + " -> t" + std::to_string(s.map[i]) +
           " [style=dashed, color=gray];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace fincat
