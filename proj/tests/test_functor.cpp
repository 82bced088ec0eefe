#include <doctest.h>

#include <algorithm>

#include "fincat/corpus.hpp"
#include "fincat/functor.hpp"

using namespace fincat;

namespace {

CategoryPtr find_category(const std::string& name) {
  for (const auto& c : corpus_categories()) {
    if (c.name == name) return c.category;
  }
  REQUIRE_MESSAGE(false, "missing corpus category");
  return nullptr;
}

// All subsets of {0, ..., n-1} as sorted index vectors, smallest first; an
// independent generator for exhaustive direct-image properties.
std::vector<std::vector<int>> all_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("constant functor validates") {
  auto cat = find_category("chain2");
  SetValuedFunctor F = constant_functor(cat, {"p"}, Variance::contravariant);
  CHECK(validate_functor(F).ok());
}

TEST_CASE("hom functor h^1 on C2 has the expected tables") {
  auto cat = find_category("chain1");  // objects 0, 1; arrow le(0,1)
  SetValuedFunctor h = hom_functor(cat, "1", Variance::contravariant);
  CHECK(validate_functor(h).ok());

  int obj0 = cat->require_object("0");
  int obj1 = cat->require_object("1");
  CHECK(h.elements(obj0) == std::vector<ElementId>{"le(0,1)"});
  CHECK(h.elements(obj1) == std::vector<ElementId>{"id_1"});

  // h^1(a): [1,1] → [0,1] sends id_1 to the arrow itself.
  int a = cat->require_morphism("le(0,1)");
  CHECK(h.action_source(a) == obj1);
  CHECK(h.apply(a, 0) == 0);
}

TEST_CASE("hom functor on a one-object discrete category") {
  auto cat = find_category("disc1");
  SetValuedFunctor h = hom_functor(cat, "X", Variance::contravariant);
  CHECK(h.elements(0) == std::vector<ElementId>{"id_X"});
}

TEST_CASE("hom functor on Z2 swaps under s") {
  auto cat = find_category("z2");
  SetValuedFunctor h = hom_functor(cat, "•", Variance::contravariant);
  CHECK(h.elements(0) == std::vector<ElementId>{"e", "s"});

  // h(s): f ↦ f∘s, so e ↦ s and s ↦ e.
  int s = cat->require_morphism("s");
  int e_pos = *h.element_index(0, "e");
  int s_pos = *h.element_index(0, "s");
  CHECK(h.apply(s, e_pos) == s_pos);
  CHECK(h.apply(s, s_pos) == e_pos);
  CHECK(validate_functor(h).ok());
}

TEST_CASE("a non-involutive action on Z2 violates the composition law") {
  auto cat = find_category("z2");
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = Variance::contravariant;
  data.elements = {{"u0", "u1"}};
  data.action.resize(cat->morphism_count());
  int e = cat->require_morphism("e");
  int s = cat->require_morphism("s");
  data.action[e] = {0, 1};
  data.action[s] = {1, 1};  // F(s)∘F(s) is constant, F(s·s) = F(e) is not
  SetValuedFunctor F = SetValuedFunctor::build(std::move(data));

  ValidationReport report = validate_functor(F);
  REQUIRE_FALSE(report.ok());
  CHECK(report.laws[0].rule == "composition-law");
}

TEST_CASE("direct image basics") {
  auto cat = find_category("z2");
  SetValuedFunctor h = hom_functor(cat, "•", Variance::contravariant);
  int s = cat->require_morphism("s");

  CHECK(direct_image(h, s, std::vector<int>{}).empty());
  CHECK(direct_image(h, "s", {"e", "s"}) == std::vector<ElementId>{"e", "s"});

  auto c2 = find_category("chain1");
  SetValuedFunctor h1 = hom_functor(c2, "1", Variance::contravariant);
  CHECK(direct_image(h1, "le(0,1)", {"id_1"}) == std::vector<ElementId>{"le(0,1)"});
}

TEST_CASE("direct image rejects elements outside the domain") {
  auto cat = find_category("z2");
  SetValuedFunctor h = hom_functor(cat, "•", Variance::contravariant);
  CHECK_THROWS_AS(direct_image(h, "s", {"ghost"}), Error);
}

TEST_CASE("direct image is monotone and compatible with composition") {
  for (const auto& triple : corpus_triples()) {
    const FiniteCategory& cat = *triple.category;
    const SetValuedFunctor& F = *triple.F;
    if (triple.functor_name.rfind("subhom", 0) == 0) continue;  // larger sets, same law
    for (const auto& [g, f, r] : cat.entries()) {
      int src = F.action_source(r);
      if (F.set_size(src) > 6) continue;
      for (const auto& subset : all_subsets(F.set_size(src))) {
        // chain per variance
        std::vector<int> chained =
            F.variance() == Variance::covariant
                ? direct_image(F, g, direct_image(F, f, subset))
                : direct_image(F, f, direct_image(F, g, subset));
        CHECK(direct_image(F, r, subset) == chained);
        // monotonicity against the full set
        std::vector<int> full(F.set_size(src));
        for (int i = 0; i < F.set_size(src); ++i) full[i] = i;
        std::vector<int> img = direct_image(F, r, subset);
        std::vector<int> img_full = direct_image(F, r, full);
        CHECK(std::includes(img_full.begin(), img_full.end(), img.begin(), img.end()));
      }
    }
  }
}

TEST_CASE("powerset family of an empty set is the singleton family") {
  auto cat = find_category("chain1");
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = Variance::contravariant;
  data.elements.resize(cat->object_count());
  data.action.resize(cat->morphism_count());
  SetValuedFunctor F = SetValuedFunctor::build(std::move(data));

  SubsetFamily family = powerset_family(F, "0");
  CHECK(family.subsets.size() == 1);
  CHECK(family.subsets[0].empty());
}

TEST_CASE("sub functor sizes and actions") {
  auto c2 = find_category("chain1");
  SetValuedFunctor h1 = hom_functor(c2, "1", Variance::contravariant);
  SetValuedFunctor sub1 = sub_functor(h1);
  CHECK(sub1.set_size(c2->require_object("0")) == 2);
  CHECK(sub1.set_size(c2->require_object("1")) == 2);
  CHECK(validate_functor(sub1).ok());

  auto z2 = find_category("z2");
  SetValuedFunctor h = hom_functor(z2, "•", Variance::contravariant);
  SetValuedFunctor sub = sub_functor(h);
  REQUIRE(sub.set_size(0) == 4);
  CHECK(validate_functor(sub).ok());

  // Sub h(s) permutes {e} and {s} and fixes {} and {e,s}.
  int s = z2->require_morphism("s");
  auto apply_to = [&](const std::string& subset) {
    return sub.elements(0)[sub.apply(s, sub.require_element(0, subset))];
  };
  CHECK(apply_to("{e}") == "{s}");
  CHECK(apply_to("{s}") == "{e}");
  CHECK(apply_to("{}") == "{}");
  CHECK(apply_to("{e,s}") == "{e,s}");
}

TEST_CASE("sub functor cap errors name the object") {
  auto cat = find_category("disc1");
  std::vector<ElementId> big;
  for (int i = 0; i < kPowersetCap + 1; ++i) big.push_back("v" + std::to_string(i));
  SetValuedFunctor F = constant_functor(cat, big, Variance::contravariant);
  try {
    sub_functor(F);
    FAIL("cap did not trigger");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::guard);
    CHECK(std::string(e.what()).find("X") != std::string::npos);
  }
}

TEST_CASE("sub functor laws hold across small corpus functors") {
  for (const auto& triple : corpus_triples()) {
    if (triple.functor_name.rfind("hom@", 0) != 0) continue;
    bool small = true;
    for (int o = 0; o < triple.category->object_count(); ++o) {
      if (triple.F->set_size(o) > 5) small = false;
    }
    if (!small) continue;
    CHECK(validate_functor(sub_functor(*triple.F)).ok());
  }
}

TEST_CASE("contravariant functors reinterpret over the opposite category") {
  for (const auto& triple : corpus_triples()) {
    if (triple.F->variance() != Variance::contravariant) continue;
    auto op = std::make_shared<const FiniteCategory>(opposite(*triple.category));
    SetValuedFunctor flipped = reinterpret_over_opposite(*triple.F, op);
    CHECK(flipped.variance() == Variance::covariant);
    CHECK(validate_functor(flipped).ok());
  }
}
