#include "fincat/nat.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fincat {

namespace {

void require_parallel_pair(const SetValuedFunctor& F, const SetValuedFunctor& G) {
  if (F.variance() != G.variance()) {
    throw Error(ErrorKind::invalid_input, "functors have different variances");
  }
  if (!(F.base() == G.base())) {
    throw Error(ErrorKind::invalid_input, "functors have different base categories");
  }
}

// Search state shared by the serial and the OpenMP kernels. Slots are the
// (object, element) positions of the source functor in the chosen object
// order; every naturality equation becomes a constraint attached to the later
// of the two slots it mentions, so a partial assignment is checked as soon as
// the equation is decidable.
struct SearchSpace {
  struct Constraint {
    int source_pos;  // slot holding τ(e)
    int target_pos;  // slot holding τ(F(f)(e))
    const int* g_table;
  };

  std::vector<int> slot_object;       // per slot
  std::vector<int> slot_element;      // per slot
  std::vector<int> slot_choices;      // |G(object)| per slot
  std::vector<std::vector<Constraint>> checks_at;  // keyed by later slot

  static SearchSpace build(const SetValuedFunctor& F, const SetValuedFunctor& G,
                           bool descending_objects) {
    const FiniteCategory& cat = F.base();
    SearchSpace s;

    std::vector<int> object_order(cat.object_count());
    for (int i = 0; i < cat.object_count(); ++i) object_order[i] = i;
    if (descending_objects) std::reverse(object_order.begin(), object_order.end());

    std::vector<std::vector<int>> slot_of(cat.object_count());
    for (int obj : object_order) {
      slot_of[obj].resize(F.set_size(obj));
      for (int e = 0; e < F.set_size(obj); ++e) {
        slot_of[obj][e] = static_cast<int>(s.slot_object.size());
        s.slot_object.push_back(obj);
        s.slot_element.push_back(e);
        s.slot_choices.push_back(G.set_size(obj));
      }
    }

    s.checks_at.resize(s.slot_object.size());
    for (int m = 0; m < cat.morphism_count(); ++m) {
      int dom_obj = F.action_source(m);
      int cod_obj = F.action_target(m);
      const int* g_table = G.table(m).data();
      for (int e = 0; e < F.set_size(dom_obj); ++e) {
        Constraint c;
        c.source_pos = slot_of[dom_obj][e];
        c.target_pos = slot_of[cod_obj][F.apply(m, e)];
        c.g_table = g_table;
        s.checks_at[std::max(c.source_pos, c.target_pos)].push_back(c);
      }
    }
    return s;
  }

  bool consistent_at(int pos, const std::vector<int>& assign) const {
    for (const Constraint& c : checks_at[pos]) {
      if (assign[c.target_pos] != c.g_table[assign[c.source_pos]]) return false;
    }
    return true;
  }

  void run(std::vector<int>& assign, int depth,
           std::vector<std::vector<int>>& out) const {
    const int total = static_cast<int>(slot_choices.size());
    if (depth == total) {
      out.push_back(assign);
      return;
    }
    for (int v = 0; v < slot_choices[depth]; ++v) {
      assign[depth] = v;
      if (consistent_at(depth, assign)) run(assign, depth + 1, out);
    }
  }

  // Valid assignments of the first `depth` slots, in lexicographic order.
  std::vector<std::vector<int>> prefixes(int depth) const {
    std::vector<std::vector<int>> out;
    std::vector<int> assign(slot_choices.size(), -1);
    auto rec = [&](auto&& self, int d) -> void {
      if (d == depth) {
        out.emplace_back(assign.begin(), assign.begin() + depth);
        return;
      }
      for (int v = 0; v < slot_choices[d]; ++v) {
        assign[d] = v;
        if (consistent_at(d, assign)) self(self, d + 1);
      }
    };
    rec(rec, 0);
    return out;
  }
};

long long saturating_space(const SetValuedFunctor& F, const SetValuedFunctor& G) {
  const long long cap = std::numeric_limits<long long>::max() / 2;
  long long product = 1;
  for (int o = 0; o < F.base().object_count(); ++o) {
    long long factor = 1;
    for (int i = 0; i < F.set_size(o); ++i) {
      factor *= G.set_size(o);
      if (factor > cap || factor == 0) break;
    }
    if (F.set_size(o) > 0 && G.set_size(o) == 0) return 0;
    product *= std::min(factor, cap);
    if (product > cap) return cap;
    if (product == 0) return 0;
  }
  return product;
}

std::vector<NaturalTransformation> wrap(FunctorPtr F, FunctorPtr G,
                                        const SearchSpace& space,
                                        const std::vector<std::vector<int>>& raw) {
  std::vector<NaturalTransformation> out;
  out.reserve(raw.size());
  const int objects = F->base().object_count();
  for (const auto& assign : raw) {
    NaturalTransformation tau;
    tau.source = F;
    tau.target = G;
    tau.components.resize(objects);
    for (int o = 0; o < objects; ++o) tau.components[o].resize(F->set_size(o));
    for (std::size_t p = 0; p < assign.size(); ++p) {
      tau.components[space.slot_object[p]][space.slot_element[p]] = assign[p];
    }
    out.push_back(std::move(tau));
  }
  return out;
}

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

namespace detail {

std::vector<std::vector<int>> enumerate_assignments_serial(const SetValuedFunctor& F,
                                                           const SetValuedFunctor& G,
                                                           bool descending_objects) {
  SearchSpace space = SearchSpace::build(F, G, descending_objects);
  std::vector<std::vector<int>> out;
  std::vector<int> assign(space.slot_choices.size(), -1);
  space.run(assign, 0, out);
  return out;
}

std::vector<std::vector<int>> enumerate_assignments_parallel(const SetValuedFunctor& F,
                                                             const SetValuedFunctor& G,
                                                             bool descending_objects,
                                                             int threads) {
  SearchSpace space = SearchSpace::build(F, G, descending_objects);
  const int total = static_cast<int>(space.slot_choices.size());

  // Split the search at the shallowest depth that yields enough independent
  // subtrees; each prefix is completed serially and the buckets are
  // concatenated in prefix order, so the output matches the serial kernel
  // byte for byte.
  long long want = static_cast<long long>(threads) * 8;
  long long width = 1;
  int depth = 0;
  while (depth < total && width < want) {
    width *= std::max(space.slot_choices[depth], 1);
    ++depth;
  }
  std::vector<std::vector<int>> prefixes = space.prefixes(depth);
  std::vector<std::vector<std::vector<int>>> buckets(prefixes.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    std::vector<int> assign(space.slot_choices.size(), -1);
    std::copy(prefixes[i].begin(), prefixes[i].end(), assign.begin());
    space.run(assign, depth, buckets[i]);
  }

  std::vector<std::vector<int>> out;
  for (auto& bucket : buckets) {
    out.insert(out.end(), std::make_move_iterator(bucket.begin()),
               std::make_move_iterator(bucket.end()));
  }
  return out;
}

}  // namespace detail

std::vector<NaturalTransformation> enumerate_nat_trans(FunctorPtr F, FunctorPtr G,
                                                       const EnumOptions& opts) {
  require_parallel_pair(*F, *G);

  long long space_size = saturating_space(*F, *G);
  if (space_size > opts.guard) {
    throw Error(ErrorKind::guard,
                "search space " + std::to_string(space_size) +
                    " exceeds the guard of " + std::to_string(opts.guard) +
                    " (raise it with --guard or YONEDA_GUARD)");
  }

  SearchSpace space = SearchSpace::build(*F, *G, opts.descending_objects);
  int threads = resolve_threads(opts.threads);
  std::vector<std::vector<int>> raw =
      threads > 1
          ? detail::enumerate_assignments_parallel(*F, *G, opts.descending_objects, threads)
          : detail::enumerate_assignments_serial(*F, *G, opts.descending_objects);
  return wrap(std::move(F), std::move(G), space, raw);
}

ValidationReport check_naturality(const NaturalTransformation& tau) {
  ValidationReport report;
  if (!tau.source || !tau.target) {
    report.add_structural("shape", {}, "transformation is missing a source or target");
    return report;
  }
  const SetValuedFunctor& F = *tau.source;
  const SetValuedFunctor& G = *tau.target;
  if (F.variance() != G.variance()) {
    report.add_structural("shape", {}, "source and target have different variances");
    return report;
  }
  if (!(F.base() == G.base())) {
    report.add_structural("shape", {}, "source and target have different base categories");
    return report;
  }
  const FiniteCategory& cat = F.base();
  if (static_cast<int>(tau.components.size()) != cat.object_count()) {
    report.add_structural("shape", {}, "one component per object required");
    return report;
  }
  for (int o = 0; o < cat.object_count(); ++o) {
    if (static_cast<int>(tau.components[o].size()) != F.set_size(o)) {
      report.add_structural("shape", {cat.object_id(o)},
                            "component at '" + cat.object_id(o) +
                                "' is not total on F(" + cat.object_id(o) + ")");
      return report;
    }
    for (int v : tau.components[o]) {
      if (v < 0 || v >= G.set_size(o)) {
        report.add_structural("shape", {cat.object_id(o)},
                              "component at '" + cat.object_id(o) +
                                  "' maps outside G(" + cat.object_id(o) + ")");
        return report;
      }
    }
  }

  for (int m = 0; m < cat.morphism_count(); ++m) {
    int dom_obj = F.action_source(m);
    int cod_obj = F.action_target(m);
    for (int e = 0; e < F.set_size(dom_obj); ++e) {
      int through_f = tau.components[cod_obj][F.apply(m, e)];
      int through_g = G.apply(m, tau.components[dom_obj][e]);
      if (through_f != through_g) {
        report.add_law("naturality", {cat.morphism(m).id, F.elements(dom_obj)[e]},
                       "square for '" + cat.morphism(m).id + "' fails at element '" +
                           F.elements(dom_obj)[e] + "': τ(F(f)(e)) = '" +
                           G.elements(cod_obj)[through_f] + "' but G(f)(τ(e)) = '" +
                           G.elements(cod_obj)[through_g] + "'");
      }
    }
  }
  return report;
}

namespace {

// Recovers A with source == h^A (or h_A); nullopt when the source is not a
// hom-functor of any object.
std::optional<int> representing_object(const SetValuedFunctor& source) {
  CategoryPtr base = source.base_ptr();
  for (int a = 0; a < base->object_count(); ++a) {
    SetValuedFunctor h = hom_functor(base, base->object_id(a), source.variance());
    if (h == source) return a;
  }
  return std::nullopt;
}

}  // namespace

ElementId yoneda_forward(const NaturalTransformation& tau) {
  if (!tau.source || !tau.target) {
    throw Error(ErrorKind::invalid_input, "transformation is missing a source or target");
  }
  auto a = representing_object(*tau.source);
  if (!a) {
    throw Error(ErrorKind::invalid_input,
                "the source of the transformation is not a hom-functor");
  }
  const FiniteCategory& cat = tau.source->base();
  const MorphismId& id_a = cat.morphism(cat.identity_of(*a)).id;
  int pos = tau.source->require_element(*a, id_a);
  return tau.target->elements(*a)[tau.components[*a][pos]];
}

NaturalTransformation yoneda_backward(const ElementId& alpha, const ObjectId& A,
                                      FunctorPtr F) {
  const FiniteCategory& cat = F->base();
  int a = cat.require_object(A);
  int alpha_idx = F->require_element(a, alpha);

  auto h = std::make_shared<const SetValuedFunctor>(
      hom_functor(F->base_ptr(), A, F->variance()));

  NaturalTransformation tau;
  tau.source = h;
  tau.target = F;
  tau.components.resize(cat.object_count());
  for (int x = 0; x < cat.object_count(); ++x) {
    for (const MorphismId& f_id : h->elements(x)) {
      int f = cat.require_morphism(f_id);
      tau.components[x].push_back(F->apply(f, alpha_idx));
    }
  }
  return tau;
}

BijectionCertificate verify_yoneda_bijection(CategoryPtr cat, const ObjectId& A,
                                             FunctorPtr F, const EnumOptions& opts) {
  BijectionCertificate cert;
  int a = cat->require_object(A);

  auto h = std::make_shared<const SetValuedFunctor>(
      hom_functor(cat, A, F->variance()));
  std::vector<NaturalTransformation> all = enumerate_nat_trans(h, F, opts);

  cert.nat_count = static_cast<long long>(all.size());
  cert.f_a_count = F->set_size(a);
  cert.counts_equal = cert.nat_count == cert.f_a_count;
  if (!cert.counts_equal) {
    cert.counterexample = "|Nat(h^" + A + ", F)| = " + std::to_string(cert.nat_count) +
                          " but |F(" + A + ")| = " + std::to_string(cert.f_a_count);
  }

  std::vector<ElementId> images;
  for (const auto& tau : all) images.push_back(yoneda_forward(tau));
  std::vector<ElementId> unique_images = images;
  std::sort(unique_images.begin(), unique_images.end());
  unique_images.erase(std::unique(unique_images.begin(), unique_images.end()),
                      unique_images.end());
  cert.injective = unique_images.size() == images.size();
  cert.surjective = unique_images == F->elements(a);
  if (!cert.injective && cert.counterexample.empty()) {
    cert.counterexample = "yoneda_forward is not injective on the enumeration";
  }
  if (!cert.surjective && cert.counterexample.empty()) {
    cert.counterexample = "yoneda_forward does not cover F(" + A + ")";
  }

  cert.forward_after_backward_is_identity = true;
  for (const ElementId& alpha : F->elements(a)) {
    if (yoneda_forward(yoneda_backward(alpha, A, F)) != alpha) {
      cert.forward_after_backward_is_identity = false;
      if (cert.counterexample.empty()) {
        cert.counterexample = "round trip through yoneda_backward moves '" + alpha + "'";
      }
      break;
    }
  }

  cert.backward_after_forward_is_identity = true;
  for (const auto& tau : all) {
    NaturalTransformation back = yoneda_backward(yoneda_forward(tau), A, F);
    if (back.components != tau.components) {
      cert.backward_after_forward_is_identity = false;
      if (cert.counterexample.empty()) {
        cert.counterexample = "round trip through yoneda_forward changes a transformation";
      }
      break;
    }
  }
  return cert;
}

}  // namespace fincat
