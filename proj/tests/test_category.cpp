#include <doctest.h>

#include <algorithm>
#include <set>

#include "fincat/category.hpp"
#include "fincat/corpus.hpp"

using namespace fincat;

namespace {

// The chain category C2 spelled out by hand: objects 0, 1 and one arrow a.
// All composites involve an identity, so the entry list stays empty.
CategorySpec c2_spec() {
  CategorySpec spec;
  spec.objects = {"0", "1"};
  spec.morphisms = {{"a", "0", "1"}};
  return spec;
}

// Independent path counter for the free-category tests: plain DFS over the
// edge list, no sharing with the builder.
int count_paths(const std::vector<EdgeSpec>& edges, const std::string& src,
                const std::string& dst) {
  if (src == dst) return 1;  // the empty path
  int total = 0;
  for (const auto& e : edges) {
    if (e.src == src) total += count_paths(edges, e.dst, dst);
  }
  return total;
}

}  // namespace

TEST_CASE("discrete category on one object validates") {
  FiniteCategory cat = discrete_category({"X"});
  CHECK(cat.object_count() == 1);
  CHECK(cat.morphism_count() == 1);
  CHECK(validate_category(cat).ok());
}

TEST_CASE("chain category C2 validates with three morphisms") {
  FiniteCategory cat = FiniteCategory::build(c2_spec());
  CHECK(cat.object_count() == 2);
  CHECK(cat.morphism_count() == 3);
  CHECK(validate_category(cat).ok());

  int a = cat.require_morphism("a");
  int id0 = cat.require_morphism("id_0");
  int id1 = cat.require_morphism("id_1");
  CHECK(cat.compose(a, id0) == a);
  CHECK(cat.compose(id1, a) == a);
  CHECK(cat.hom(cat.require_object("0"), cat.require_object("1")) == std::vector<int>{a});
}

TEST_CASE("rewired identity composite is reported with its witness") {
  CategorySpec spec = c2_spec();
  spec.composition.push_back({"a", "id_0", "id_0"});
  FiniteCategory cat = FiniteCategory::build(spec);
  ValidationReport report = validate_category(cat);
  CHECK_FALSE(report.ok());

  bool found = false;
  for (const auto& v : report.laws) {
    if (v.rule == "composite-endpoints" && v.witness.size() == 3 && v.witness[0] == "a" &&
        v.witness[1] == "id_0") {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("validate reports associativity violations with the offending triple") {
  // Z3 with identity id_* and the entry for r2∘r2 corrupted.
  CategorySpec spec;
  spec.objects = {"*"};
  spec.morphisms = {{"r1", "*", "*"}, {"r2", "*", "*"}};
  spec.composition = {{"r1", "r1", "r2"},
                      {"r1", "r2", "id_*"},
                      {"r2", "r1", "id_*"},
                      {"r2", "r2", "r2"}};  // should be r1
  FiniteCategory cat = FiniteCategory::build(spec);
  ValidationReport report = validate_category(cat);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.laws) {
    if (v.rule == "associativity") found = true;
  }
  CHECK(found);
}

TEST_CASE("missing composition entries are structural errors") {
  CategorySpec spec;
  spec.objects = {"0", "1", "2"};
  spec.morphisms = {{"a", "0", "1"}, {"b", "1", "2"}};
  // (b, a) is composable but has no entry.
  FiniteCategory cat = FiniteCategory::build(spec);
  ValidationReport report = validate_category(cat);
  REQUIRE(report.structural.size() == 1);
  CHECK(report.structural[0].rule == "missing-composition");
  CHECK(report.structural[0].witness == std::vector<std::string>{"b", "a"});
}

TEST_CASE("non-composable entries are structural errors") {
  CategorySpec spec = c2_spec();
  spec.composition.push_back({"a", "a", "a"});  // cod(a) != dom(a)
  FiniteCategory cat = FiniteCategory::build(spec);
  ValidationReport report = validate_category(cat);
  REQUIRE_FALSE(report.ok());
  CHECK(report.structural[0].rule == "non-composable-entry");
}

TEST_CASE("reserved identity prefix is rejected in declared morphisms") {
  CategorySpec spec;
  spec.objects = {"X"};
  spec.morphisms = {{"id_X", "X", "X"}};
  CHECK_THROWS_AS(FiniteCategory::build(spec), Error);
}

TEST_CASE("dangling ids are schema errors") {
  CategorySpec spec;
  spec.objects = {"X"};
  spec.morphisms = {{"f", "X", "Ghost"}};
  CHECK_THROWS_AS(FiniteCategory::build(spec), Error);
}

TEST_CASE("the size guard rejects oversized categories") {
  std::vector<ObjectId> objects;
  for (int i = 0; i <= kMaxMorphisms; ++i) objects.push_back("o" + std::to_string(i));
  try {
    discrete_category(objects);
    FAIL("guard did not trigger");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::guard);
  }
}

TEST_CASE("opposite swaps dom and cod on C2") {
  FiniteCategory cat = FiniteCategory::build(c2_spec());
  FiniteCategory op = opposite(cat);
  int a = op.require_morphism("a");
  CHECK(op.object_id(op.morphism(a).dom) == "1");
  CHECK(op.object_id(op.morphism(a).cod) == "0");
  CHECK(validate_category(op).ok());
}

TEST_CASE("opposite fixes discrete categories and commutative monoids") {
  FiniteCategory disc = discrete_category({"X", "Y"});
  CHECK(opposite(disc) == disc);

  for (const char* name : {"z2", "z3"}) {
    for (const auto& c : corpus_categories()) {
      if (c.name == name) CHECK(opposite(*c.category) == *c.category);
    }
  }
}

TEST_CASE("opposite is an involution on the corpus") {
  for (const auto& c : corpus_categories()) {
    CHECK(opposite(opposite(*c.category)) == *c.category);
  }
}

TEST_CASE("poset category of a 2-chain is C2 up to naming") {
  FiniteCategory cat = poset_category({"0", "1"}, {{"0", "1"}});
  CHECK(cat.object_count() == 2);
  CHECK(cat.morphism_count() == 3);
  CHECK(validate_category(cat).ok());
  REQUIRE(cat.morphism_index("le(0,1)").has_value());
}

TEST_CASE("poset category on one element has just the identity") {
  FiniteCategory cat = poset_category({"x"}, {});
  CHECK(cat.morphism_count() == 1);
  CHECK(validate_category(cat).ok());
}

TEST_CASE("poset category rejects cycles with a witness") {
  try {
    poset_category({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    FAIL("antisymmetry violation not detected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
    std::string msg = e.what();
    CHECK(msg.find("a") != std::string::npos);
    CHECK(msg.find("b") != std::string::npos);
  }
}

TEST_CASE("poset categories have hom-sets of size at most one") {
  for (const auto& c : corpus_categories()) {
    if (c.name.rfind("chain", 0) != 0) continue;
    const FiniteCategory& cat = *c.category;
    for (int x = 0; x < cat.object_count(); ++x) {
      for (int y = 0; y < cat.object_count(); ++y) {
        CHECK(cat.hom(x, y).size() <= 1);
      }
    }
  }
}

TEST_CASE("monoid categories for Z2, M2 and the trivial monoid") {
  FiniteCategory z2 = monoid_category({"e", "s"}, {{"e", "s"}, {"s", "e"}}, "e");
  CHECK(z2.object_count() == 1);
  CHECK(z2.morphism_count() == 2);
  CHECK(validate_category(z2).ok());
  CHECK(z2.is_identity(z2.require_morphism("e")));

  FiniteCategory m2 = monoid_category({"e", "z"}, {{"e", "z"}, {"z", "z"}}, "e");
  CHECK(m2.morphism_count() == 2);
  CHECK(validate_category(m2).ok());
  int z = m2.require_morphism("z");
  CHECK(m2.compose(z, z) == z);

  FiniteCategory trivial = monoid_category({"e"}, {{"e"}}, "e");
  CHECK(trivial.morphism_count() == 1);
  CHECK(validate_category(trivial).ok());
}

TEST_CASE("monoid builder rejects non-associative tables with a witness triple") {
  // (a·a)·a = b·a = b but a·(a·a) = a·b = a.
  try {
    monoid_category({"e", "a", "b"},
                    {{"e", "a", "b"}, {"a", "b", "a"}, {"b", "b", "e"}}, "e");
    FAIL("non-associative table accepted");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("associative") != std::string::npos);
  }
}

TEST_CASE("monoid builder rejects a bad unit") {
  CHECK_THROWS_AS(monoid_category({"e", "a"}, {{"e", "a"}, {"a", "a"}}, "a"), Error);
}

TEST_CASE("free category on a single edge is a chain") {
  FiniteCategory cat = free_category_on_dag({"u", "v"}, {{"f", "u", "v"}});
  CHECK(cat.object_count() == 2);
  CHECK(cat.morphism_count() == 3);
  CHECK(validate_category(cat).ok());
}

TEST_CASE("free category counts paths: parallel pair and square") {
  std::vector<EdgeSpec> parallel = {{"f", "u", "v"}, {"g", "u", "v"}};
  FiniteCategory pp = free_category_on_dag({"u", "v"}, parallel);
  CHECK(pp.hom(pp.require_object("u"), pp.require_object("v")).size() == 2);

  std::vector<EdgeSpec> square = {{"p", "u", "v"}, {"q", "v", "w"}, {"r", "u", "x"},
                                  {"s", "x", "w"}};
  FiniteCategory sq = free_category_on_dag({"u", "v", "w", "x"}, square);
  CHECK(sq.hom(sq.require_object("u"), sq.require_object("w")).size() == 2);
  CHECK(validate_category(sq).ok());
}

TEST_CASE("free category hom sizes match the DFS path oracle") {
  // A DAG with enough shape to be interesting: two routes of different length
  // plus a shortcut.
  std::vector<std::string> vertices = {"a", "b", "c", "d"};
  std::vector<EdgeSpec> edges = {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "a", "c"},
                                 {"e4", "c", "d"}, {"e5", "b", "d"}};
  FiniteCategory cat = free_category_on_dag(vertices, edges);
  CHECK(validate_category(cat).ok());
  for (const auto& src : vertices) {
    for (const auto& dst : vertices) {
      int expected = count_paths(edges, src, dst);
      CHECK(static_cast<int>(cat.hom(cat.require_object(src), cat.require_object(dst)).size()) ==
            expected);
    }
  }
}

TEST_CASE("free category rejects cycles with the cycle as witness") {
  try {
    free_category_on_dag({"u", "v"}, {{"f", "u", "v"}, {"g", "v", "u"}});
    FAIL("cycle not detected");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("cycle") != std::string::npos);
    CHECK(msg.find("u") != std::string::npos);
  }
}

TEST_CASE("every corpus category validates") {
  for (const auto& c : corpus_categories()) {
    CAPTURE(c.name);
    CHECK(validate_category(*c.category).ok());
  }
}
