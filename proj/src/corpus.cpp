#include "fincat/corpus.hpp"

#include <memory>

namespace fincat {

namespace {

CategoryPtr share(FiniteCategory cat) {
  return std::make_shared<const FiniteCategory>(std::move(cat));
}

FunctorPtr share(SetValuedFunctor F) {
  return std::make_shared<const SetValuedFunctor>(std::move(F));
}

FiniteCategory chain(int length) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i <= length; ++i) elements.push_back(std::to_string(i));
  for (int i = 0; i < length; ++i) {
    pairs.emplace_back(std::to_string(i), std::to_string(i + 1));
  }
  return poset_category(elements, pairs);
}

std::vector<CorpusCategory> build_categories() {
  std::vector<CorpusCategory> out;
  out.push_back({"disc1", share(discrete_category({"X"}))});
  out.push_back({"disc2", share(discrete_category({"X", "Y"}))});
  out.push_back({"disc3", share(discrete_category({"X", "Y", "Z"}))});
  for (int len = 1; len <= 4; ++len) {
    out.push_back({"chain" + std::to_string(len), share(chain(len))});
  }
  out.push_back({"z2", share(monoid_category({"e", "s"}, {{"e", "s"}, {"s", "e"}}, "e"))});
  out.push_back({"m2", share(monoid_category({"e", "z"}, {{"e", "z"}, {"z", "z"}}, "e"))});
  out.push_back({"z3", share(monoid_category({"e", "r1", "r2"},
                                             {{"e", "r1", "r2"},
                                              {"r1", "r2", "e"},
                                              {"r2", "e", "r1"}},
                                             "e"))});
  out.push_back({"square", share(free_category_on_dag(
                               {"u", "v", "w", "x"},
                               {{"p", "u", "v"}, {"q", "v", "w"}, {"r", "u", "x"}, {"s", "x", "w"}}))});
  return out;
}

// F(0) two elements, F(1) one, the arrow folding both onto x0. Chain-1 only.
SetValuedFunctor fork_functor(CategoryPtr cat) {
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = Variance::contravariant;
  data.elements.resize(cat->object_count());
  data.action.resize(cat->morphism_count());
  data.elements[cat->require_object("0")] = {"x0", "x1"};
  data.elements[cat->require_object("1")] = {"y0"};
  for (int m = 0; m < cat->morphism_count(); ++m) {
    if (cat->is_identity(m)) {
      int n = static_cast<int>(data.elements[cat->morphism(m).dom].size());
      for (int e = 0; e < n; ++e) data.action[m].push_back(e);
    } else {
      data.action[m] = {0};  // y0 ↦ x0
    }
  }
  return SetValuedFunctor::build(std::move(data));
}

// G(1) empty, G(0) a point; the arrow's table is the empty function. Chain-1 only.
SetValuedFunctor partial_functor(CategoryPtr cat) {
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = Variance::contravariant;
  data.elements.resize(cat->object_count());
  data.action.resize(cat->morphism_count());
  data.elements[cat->require_object("0")] = {"w"};
  for (int m = 0; m < cat->morphism_count(); ++m) {
    if (cat->is_identity(m)) {
      int n = static_cast<int>(data.elements[cat->morphism(m).dom].size());
      for (int e = 0; e < n; ++e) data.action[m].push_back(e);
    }
    // non-identity tables stay empty: F(1) = ∅
  }
  return SetValuedFunctor::build(std::move(data));
}

SetValuedFunctor empty_functor(CategoryPtr cat, Variance variance) {
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = variance;
  data.elements.resize(cat->object_count());
  data.action.resize(cat->morphism_count());
  return SetValuedFunctor::build(std::move(data));
}

std::vector<CorpusTriple> build_triples() {
  std::vector<CorpusTriple> out;
  for (const auto& [name, cat] : corpus_categories()) {
    const ObjectId first = cat->object_id(0);
    auto sub_contra = share(sub_functor(hom_functor(cat, first, Variance::contravariant)));
    auto const2_contra = share(constant_functor(cat, {"u0", "u1"}, Variance::contravariant));
    auto const2_co = share(constant_functor(cat, {"u0", "u1"}, Variance::covariant));

    for (int a = 0; a < cat->object_count(); ++a) {
      const ObjectId A = cat->object_id(a);
      out.push_back({name, cat, A, "hom@" + A,
                     share(hom_functor(cat, A, Variance::contravariant))});
      out.push_back({name, cat, A, "homco@" + A,
                     share(hom_functor(cat, A, Variance::covariant))});
      out.push_back({name, cat, A, "const2", const2_contra});
      out.push_back({name, cat, A, "const2co", const2_co});
      out.push_back({name, cat, A, "subhom@" + first, sub_contra});
    }

    if (name == "chain1") {
      auto fork = share(fork_functor(cat));
      auto partial = share(partial_functor(cat));
      auto empty = share(empty_functor(cat, Variance::contravariant));
      for (int a = 0; a < cat->object_count(); ++a) {
        const ObjectId A = cat->object_id(a);
        out.push_back({name, cat, A, "fork", fork});
        out.push_back({name, cat, A, "partial", partial});
        out.push_back({name, cat, A, "empty", empty});
      }
    }
    if (name == "z2") {
      out.push_back({name, cat, cat->object_id(0), "empty",
                     share(empty_functor(cat, Variance::contravariant))});
    }
  }
  return out;
}

}  // namespace

const std::vector<CorpusCategory>& corpus_categories() {
  static const std::vector<CorpusCategory> categories = build_categories();
  return categories;
}

const std::vector<CorpusTriple>& corpus_triples() {
  static const std::vector<CorpusTriple> triples = build_triples();
  return triples;
}

std::vector<Proset> corpus_prosets(int max_carrier) {
  std::vector<Proset> out;
  for (const auto& [name, cat] : corpus_categories()) {
    for (int x = 0; x < cat->object_count(); ++x) {
      for (int a = 0; a < cat->object_count(); ++a) {
        Proset p = build_L_preorder(cat, cat->object_id(x), cat->object_id(a));
        if (p.size() > max_carrier) continue;
        out.push_back(quotient_to_poset(p).poset);
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

}  // namespace fincat
