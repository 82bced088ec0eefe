#include <doctest.h>

#include <algorithm>

#include "fincat/corpus.hpp"
#include "fincat/nat.hpp"

using namespace fincat;

namespace {

CategoryPtr find_category(const std::string& name) {
  for (const auto& c : corpus_categories()) {
    if (c.name == name) return c.category;
  }
  REQUIRE_MESSAGE(false, "missing corpus category");
  return nullptr;
}

// Independent oracle: walk the whole space of component assignments with an
// odometer (no pruning, no sharing with the search engine) and keep the ones
// check_naturality accepts. Output order matches the canonical order.
std::vector<NaturalTransformation> brute_force_nat(FunctorPtr F, FunctorPtr G) {
  const FiniteCategory& cat = F->base();
  std::vector<std::pair<int, int>> slots;
  for (int o = 0; o < cat.object_count(); ++o) {
    for (int e = 0; e < F->set_size(o); ++e) slots.emplace_back(o, e);
  }
  for (int o = 0; o < cat.object_count(); ++o) {
    if (F->set_size(o) > 0 && G->set_size(o) == 0) return {};
  }

  std::vector<NaturalTransformation> out;
  std::vector<int> assign(slots.size(), 0);
  while (true) {
    NaturalTransformation tau;
    tau.source = F;
    tau.target = G;
    tau.components.resize(cat.object_count());
    for (int o = 0; o < cat.object_count(); ++o) tau.components[o].resize(F->set_size(o));
    for (std::size_t i = 0; i < slots.size(); ++i) {
      tau.components[slots[i].first][slots[i].second] = assign[i];
    }
    if (check_naturality(tau).ok()) out.push_back(std::move(tau));

    // odometer: last slot fastest, so emission is lexicographic
    int i = static_cast<int>(slots.size()) - 1;
    while (i >= 0) {
      if (++assign[i] < G->set_size(slots[i].first)) break;
      assign[i] = 0;
      --i;
    }
    if (i < 0) break;
    if (slots.empty()) break;
  }
  return out;
}

FunctorPtr hom_ptr(CategoryPtr cat, const ObjectId& A, Variance v) {
  return std::make_shared<const SetValuedFunctor>(hom_functor(cat, A, v));
}

}  // namespace

TEST_CASE("the identity transformation is natural") {
  auto cat = find_category("z2");
  FunctorPtr h = hom_ptr(cat, "•", Variance::contravariant);
  NaturalTransformation id{h, h, {{0, 1}}};
  CHECK(check_naturality(id).ok());
}

TEST_CASE("on Z2 the swap component is natural") {
  auto cat = find_category("z2");
  FunctorPtr h = hom_ptr(cat, "•", Variance::contravariant);
  NaturalTransformation swap{h, h, {{1, 0}}};
  CHECK(check_naturality(swap).ok());
}

TEST_CASE("on M2 the swap component fails with witness (z, e)") {
  auto cat = find_category("m2");
  FunctorPtr h = hom_ptr(cat, "•", Variance::contravariant);
  NaturalTransformation swap{h, h, {{1, 0}}};
  ValidationReport report = check_naturality(swap);
  REQUIRE_FALSE(report.ok());
  CHECK(report.laws[0].witness == std::vector<std::string>{"z", "e"});
}

TEST_CASE("shape mismatches are structural") {
  auto cat = find_category("z2");
  FunctorPtr h = hom_ptr(cat, "•", Variance::contravariant);
  NaturalTransformation bad{h, h, {{0}}};
  ValidationReport report = check_naturality(bad);
  CHECK_FALSE(report.structural.empty());
}

TEST_CASE("enumeration counts on the named examples") {
  auto c2 = find_category("chain1");
  FunctorPtr h1 = hom_ptr(c2, "1", Variance::contravariant);
  CHECK(enumerate_nat_trans(h1, h1).size() == 1);

  auto z2 = find_category("z2");
  FunctorPtr h = hom_ptr(z2, "•", Variance::contravariant);
  CHECK(enumerate_nat_trans(h, h).size() == 2);

  auto m2 = find_category("m2");
  FunctorPtr hm = hom_ptr(m2, "•", Variance::contravariant);
  auto m2_all = enumerate_nat_trans(hm, hm);
  REQUIRE(m2_all.size() == 2);
  // The raw search over the 4 candidate component maps leaves exactly the
  // identity and the map collapsing everything to z: {e↦e, z↦z} and {e↦z, z↦z}.
  CHECK(m2_all[0].components == std::vector<std::vector<int>>{{0, 1}});
  CHECK(m2_all[1].components == std::vector<std::vector<int>>{{1, 1}});
}

TEST_CASE("an empty source functor admits exactly one transformation") {
  auto cat = find_category("chain1");
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = Variance::contravariant;
  data.elements.resize(cat->object_count());
  data.action.resize(cat->morphism_count());
  auto empty = std::make_shared<const SetValuedFunctor>(
      SetValuedFunctor::build(std::move(data)));
  FunctorPtr h = hom_ptr(cat, "1", Variance::contravariant);

  CHECK(enumerate_nat_trans(empty, h).size() == 1);
  CHECK(enumerate_nat_trans(h, empty).empty());
}

TEST_CASE("the search-space guard triggers") {
  auto cat = find_category("chain1");
  std::vector<ElementId> big;
  for (int i = 0; i < 30; ++i) big.push_back("v" + std::to_string(i));
  auto F = std::make_shared<const SetValuedFunctor>(
      constant_functor(cat, big, Variance::contravariant));
  try {
    enumerate_nat_trans(F, F);
    FAIL("guard did not trigger");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::guard);
  }
}

TEST_CASE("a raised guard admits a bigger search space") {
  // Cyclic group of order 10: the raw space is 10^10, far over the default
  // guard, but the constraints collapse the search to the ten translations.
  std::vector<std::string> els;
  for (int i = 0; i < 10; ++i) els.push_back("g" + std::to_string(i));
  std::vector<std::vector<std::string>> table(10, std::vector<std::string>(10));
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) table[a][b] = els[(a + b) % 10];
  }
  auto cat = std::make_shared<const FiniteCategory>(monoid_category(els, table, "g0"));
  FunctorPtr h = hom_ptr(cat, "•", Variance::contravariant);

  CHECK_THROWS_AS(enumerate_nat_trans(h, h), Error);
  EnumOptions opts;
  opts.guard = 20'000'000'000ll;
  CHECK(enumerate_nat_trans(h, h, opts).size() == 10);
}

TEST_CASE("enumeration agrees with the unpruned brute-force oracle") {
  int compared = 0;
  for (const auto& triple : corpus_triples()) {
    FunctorPtr h = hom_ptr(triple.category, triple.A, triple.F->variance());
    long long space = 1;
    bool skip = false;
    for (int o = 0; o < triple.category->object_count(); ++o) {
      for (int e = 0; e < h->set_size(o); ++e) {
        space *= std::max(triple.F->set_size(o), 1);
        if (space > 5000) skip = true;
      }
    }
    if (skip) continue;
    auto fast = enumerate_nat_trans(h, triple.F);
    auto slow = brute_force_nat(h, triple.F);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].components == slow[i].components);
    }
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("every enumerated transformation passes check_naturality") {
  for (const auto& triple : corpus_triples()) {
    FunctorPtr h = hom_ptr(triple.category, triple.A, triple.F->variance());
    for (const auto& tau : enumerate_nat_trans(h, triple.F)) {
      CHECK(check_naturality(tau).ok());
    }
  }
}

TEST_CASE("enumeration is independent of the object processing order") {
  for (const char* name : {"z3", "square", "chain2"}) {
    auto cat = find_category(name);
    FunctorPtr h = hom_ptr(cat, cat->object_id(0), Variance::contravariant);
    auto F = std::make_shared<const SetValuedFunctor>(
        constant_functor(cat, {"u0", "u1"}, Variance::contravariant));

    EnumOptions reversed;
    reversed.descending_objects = true;
    auto a = enumerate_nat_trans(h, F);
    auto b = enumerate_nat_trans(h, F, reversed);
    auto key = [](const NaturalTransformation& t) { return t.components; };
    std::vector<std::vector<std::vector<int>>> ka, kb;
    for (const auto& t : a) ka.push_back(key(t));
    for (const auto& t : b) kb.push_back(key(t));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    CHECK(ka == kb);
  }
}

TEST_CASE("parallel enumeration is bit-identical to the serial reference") {
  for (const char* name : {"z3", "square"}) {
    auto cat = find_category(name);
    FunctorPtr h = hom_ptr(cat, cat->object_id(0), Variance::contravariant);
    auto F = std::make_shared<const SetValuedFunctor>(
        constant_functor(cat, {"u0", "u1", "u2"}, Variance::contravariant));

    auto serial = detail::enumerate_assignments_serial(*h, *F, false);
    for (int threads : {1, 2, 3, 8}) {
      auto parallel = detail::enumerate_assignments_parallel(*h, *F, false, threads);
      CHECK(serial == parallel);
    }
  }
}

TEST_CASE("yoneda forward on the named examples") {
  auto z2 = find_category("z2");
  FunctorPtr h = hom_ptr(z2, "•", Variance::contravariant);
  NaturalTransformation identity{h, h, {{0, 1}}};
  CHECK(yoneda_forward(identity) == "e");  // id_• is the monoid unit e
  NaturalTransformation swap{h, h, {{1, 0}}};
  CHECK(yoneda_forward(swap) == "s");

  auto c2 = find_category("chain1");
  FunctorPtr h1 = hom_ptr(c2, "1", Variance::contravariant);
  auto only = enumerate_nat_trans(h1, h1);
  REQUIRE(only.size() == 1);
  CHECK(yoneda_forward(only[0]) == "id_1");
}

TEST_CASE("yoneda forward rejects non-hom sources") {
  auto cat = find_category("disc1");
  auto F = std::make_shared<const SetValuedFunctor>(
      constant_functor(cat, {"u0", "u1"}, Variance::contravariant));
  NaturalTransformation tau{F, F, {{0, 1}}};
  CHECK_THROWS_AS(yoneda_forward(tau), Error);
}

TEST_CASE("yoneda backward on the named examples") {
  auto z2 = find_category("z2");
  FunctorPtr h = hom_ptr(z2, "•", Variance::contravariant);
  NaturalTransformation tau_s = yoneda_backward("s", "•", h);
  CHECK(tau_s.components == std::vector<std::vector<int>>{{1, 0}});  // the swap

  auto c2 = find_category("chain1");
  FunctorPtr h1 = hom_ptr(c2, "1", Variance::contravariant);
  NaturalTransformation tau = yoneda_backward("id_1", "1", h1);
  // τ_0 sends the unique arrow to itself; τ_1 fixes id_1.
  CHECK(tau.components == std::vector<std::vector<int>>{{0}, {0}});
  CHECK(check_naturality(tau).ok());

  CHECK_THROWS_AS(yoneda_backward("ghost", "1", h1), Error);
}

TEST_CASE("yoneda backward produces natural transformations across the corpus") {
  for (const auto& triple : corpus_triples()) {
    int a = triple.category->require_object(triple.A);
    for (const ElementId& alpha : triple.F->elements(a)) {
      NaturalTransformation tau = yoneda_backward(alpha, triple.A, triple.F);
      CHECK(check_naturality(tau).ok());
      CHECK(yoneda_forward(tau) == alpha);
    }
  }
}

TEST_CASE("yoneda bijection on the named examples") {
  auto disc = find_category("disc1");
  FunctorPtr hx = hom_ptr(disc, "X", Variance::contravariant);
  BijectionCertificate one = verify_yoneda_bijection(disc, "X", hx);
  CHECK(one.ok());
  CHECK(one.nat_count == 1);

  auto z2 = find_category("z2");
  FunctorPtr h = hom_ptr(z2, "•", Variance::contravariant);
  BijectionCertificate two = verify_yoneda_bijection(z2, "•", h);
  CHECK(two.ok());
  CHECK(two.nat_count == 2);

  auto m2 = find_category("m2");
  FunctorPtr hm = hom_ptr(m2, "•", Variance::contravariant);
  BijectionCertificate m = verify_yoneda_bijection(m2, "•", hm);
  CHECK(m.ok());
  CHECK(m.nat_count == 2);
}

TEST_CASE("covariant enumeration matches the direct brute force") {
  // The paper's covariant case is reduced through the opposite category when
  // building hom-functors; the engine handles the variance directly. Both
  // routes must agree with the unpruned oracle.
  for (const char* name : {"chain2", "z2", "square"}) {
    auto cat = find_category(name);
    FunctorPtr h = hom_ptr(cat, cat->object_id(0), Variance::covariant);
    auto F = std::make_shared<const SetValuedFunctor>(
        constant_functor(cat, {"u0", "u1"}, Variance::covariant));
    auto fast = enumerate_nat_trans(h, F);
    auto slow = brute_force_nat(h, F);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].components == slow[i].components);
    }
  }
}
