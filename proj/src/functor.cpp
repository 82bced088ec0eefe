#include "fincat/functor.hpp"

#include <algorithm>

namespace fincat {

SetValuedFunctor SetValuedFunctor::build(Data data) {
  if (!data.base) throw Error(ErrorKind::schema, "functor has no base category");
  const FiniteCategory& cat = *data.base;
  if (static_cast<int>(data.elements.size()) != cat.object_count()) {
    throw Error(ErrorKind::schema, "functor must assign a set to every object");
  }
  for (int o = 0; o < cat.object_count(); ++o) {
    auto& set = data.elements[o];
    std::sort(set.begin(), set.end());
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i].empty()) {
        throw Error(ErrorKind::schema,
                    "empty element id in F(" + cat.object_id(o) + ")");
      }
      if (i && set[i] == set[i - 1]) {
        throw Error(ErrorKind::schema, "duplicate element '" + set[i] + "' in F(" +
                                           cat.object_id(o) + ")");
      }
    }
  }
  if (static_cast<int>(data.action.size()) != cat.morphism_count()) {
    throw Error(ErrorKind::schema, "functor must assign a table to every morphism");
  }

  SetValuedFunctor F;
  F.data_ = std::move(data);
  for (int m = 0; m < cat.morphism_count(); ++m) {
    const auto& tbl = F.data_.action[m];
    int dom_size = F.set_size(F.action_source(m));
    int cod_size = F.set_size(F.action_target(m));
    if (static_cast<int>(tbl.size()) != dom_size) {
      throw Error(ErrorKind::schema,
                  "table for '" + cat.morphism(m).id + "' must be total on F(" +
                      cat.object_id(F.action_source(m)) + ")");
    }
    for (int v : tbl) {
      if (v < 0 || v >= cod_size) {
        throw Error(ErrorKind::schema, "table for '" + cat.morphism(m).id +
                                           "' maps outside F(" +
                                           cat.object_id(F.action_target(m)) + ")");
      }
    }
  }
  return F;
}

std::optional<int> SetValuedFunctor::element_index(int obj, std::string_view id) const {
  const auto& set = data_.elements[obj];
  auto it = std::lower_bound(set.begin(), set.end(), id);
  if (it == set.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - set.begin());
}

int SetValuedFunctor::require_element(int obj, std::string_view id) const {
  auto i = element_index(obj, id);
  if (!i) {
    throw Error(ErrorKind::invalid_input, "'" + std::string(id) + "' is not an element of F(" +
                                              base().object_id(obj) + ")");
  }
  return *i;
}

bool SetValuedFunctor::operator==(const SetValuedFunctor& other) const {
  return data_.variance == other.data_.variance && base() == other.base() &&
         data_.elements == other.data_.elements && data_.action == other.data_.action;
}

ValidationReport validate_functor(const SetValuedFunctor& F) {
  ValidationReport report;
  const FiniteCategory& cat = F.base();

  for (int o = 0; o < cat.object_count(); ++o) {
    int id_mor = cat.identity_of(o);
    auto tbl = F.table(id_mor);
    for (int e = 0; e < static_cast<int>(tbl.size()); ++e) {
      if (tbl[e] != e) {
        report.add_law("identity-law", {cat.morphism(id_mor).id, F.elements(o)[e]},
                       "F(" + cat.morphism(id_mor).id + ") moves '" + F.elements(o)[e] +
                           "'");
        break;
      }
    }
  }

  const bool cov = F.variance() == Variance::covariant;
  for (const auto& [g, f, r] : cat.entries()) {
    if (!cat.composable(g, f)) continue;  // broken base tables are reported elsewhere
    // Covariant: F(g∘f) = F(g)∘F(f); contravariant: F(g∘f) = F(f)∘F(g).
    int src = F.action_source(r);
    for (int e = 0; e < F.set_size(src); ++e) {
      int direct = F.apply(r, e);
      int chained = cov ? F.apply(g, F.apply(f, e)) : F.apply(f, F.apply(g, e));
      if (direct != chained) {
        report.add_law(
            "composition-law",
            {cat.morphism(g).id, cat.morphism(f).id, F.elements(src)[e]},
            "F(" + cat.morphism(r).id + ") and the chain through F(" +
                cat.morphism(g).id + "), F(" + cat.morphism(f).id + ") disagree at '" +
                F.elements(src)[e] + "'");
        break;
      }
    }
  }
  return report;
}

SetValuedFunctor hom_functor(CategoryPtr cat, const ObjectId& A, Variance variance) {
  int a = cat->require_object(A);
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = variance;
  data.elements.resize(cat->object_count());

  // Hom-sets come out in ascending morphism-index order, which is lexicographic
  // in the ids, so each element set is already canonical.
  std::vector<std::vector<int>> hom_sets(cat->object_count());
  for (int x = 0; x < cat->object_count(); ++x) {
    hom_sets[x] = variance == Variance::contravariant ? cat->hom(x, a) : cat->hom(a, x);
    for (int m : hom_sets[x]) data.elements[x].push_back(cat->morphism(m).id);
  }

  auto position = [&](int obj, int mor) {
    const auto& set = hom_sets[obj];
    return static_cast<int>(std::lower_bound(set.begin(), set.end(), mor) - set.begin());
  };

  data.action.resize(cat->morphism_count());
  for (int m = 0; m < cat->morphism_count(); ++m) {
    const auto& mor = cat->morphism(m);
    if (variance == Variance::contravariant) {
      // h^A(g: X→Y): [Y,A] → [X,A], f ↦ f∘g.
      for (int f : hom_sets[mor.cod]) {
        int composed = cat->compose(f, m);
        if (composed < 0) {
          throw Error(ErrorKind::invalid_input,
                      "base category has no entry for (" + cat->morphism(f).id + ", " +
                          mor.id + "); validate it first");
        }
        data.action[m].push_back(position(mor.dom, composed));
      }
    } else {
      // h_A(g: X→Y): [A,X] → [A,Y], f ↦ g∘f.
      for (int f : hom_sets[mor.dom]) {
        int composed = cat->compose(m, f);
        if (composed < 0) {
          throw Error(ErrorKind::invalid_input,
                      "base category has no entry for (" + mor.id + ", " +
                          cat->morphism(f).id + "); validate it first");
        }
        data.action[m].push_back(position(mor.cod, composed));
      }
    }
  }
  return SetValuedFunctor::build(std::move(data));
}

SetValuedFunctor constant_functor(CategoryPtr cat, std::vector<ElementId> set,
                                  Variance variance) {
  SetValuedFunctor::Data data;
  data.base = cat;
  data.variance = variance;
  data.elements.assign(cat->object_count(), set);
  std::vector<int> identity(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) identity[i] = static_cast<int>(i);
  data.action.assign(cat->morphism_count(), identity);
  return SetValuedFunctor::build(std::move(data));
}

std::vector<int> direct_image(const SetValuedFunctor& F, int mor,
                              std::span<const int> subset) {
  std::vector<int> out;
  out.reserve(subset.size());
  for (int e : subset) out.push_back(F.apply(mor, e));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ElementId> direct_image(const SetValuedFunctor& F, const MorphismId& mor,
                                    const std::vector<ElementId>& subset) {
  int m = F.base().require_morphism(mor);
  int src = F.action_source(m);
  std::vector<int> indices;
  indices.reserve(subset.size());
  for (const auto& id : subset) indices.push_back(F.require_element(src, id));
  std::vector<ElementId> out;
  int tgt = F.action_target(m);
  for (int e : direct_image(F, m, indices)) out.push_back(F.elements(tgt)[e]);
  return out;
}

std::string subset_id(std::span<const ElementId> members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += members[i];
  }
  out += "}";
  return out;
}

namespace {

std::string subset_id_of_mask(const std::vector<ElementId>& elements, std::uint32_t mask) {
  std::vector<ElementId> members;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) members.push_back(elements[i]);
  }
  return subset_id(members);
}

}  // namespace

SubsetFamily powerset_family(const SetValuedFunctor& F, const ObjectId& X, int cap) {
  int x = F.base().require_object(X);
  int n = F.set_size(x);
  if (n > cap) {
    throw Error(ErrorKind::guard, "materialization too large: |F(" + X + ")| = " +
                                      std::to_string(n) + " exceeds the powerset cap of " +
                                      std::to_string(cap));
  }
  SubsetFamily family;
  family.object = X;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<ElementId> members;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) members.push_back(F.elements(x)[i]);
    }
    family.subsets.push_back(std::move(members));
  }
  std::sort(family.subsets.begin(), family.subsets.end(),
            [](const auto& a, const auto& b) { return subset_id(a) < subset_id(b); });
  return family;
}

SetValuedFunctor sub_functor(const SetValuedFunctor& F, int cap) {
  const FiniteCategory& cat = F.base();
  SetValuedFunctor::Data data;
  data.base = F.base_ptr();
  data.variance = F.variance();
  data.elements.resize(cat.object_count());

  // Per object: subset ids sorted, plus mask → position for the action tables.
  std::vector<std::vector<std::uint32_t>> mask_by_position(cat.object_count());
  std::vector<std::vector<int>> position_by_mask(cat.object_count());
  for (int o = 0; o < cat.object_count(); ++o) {
    int n = F.set_size(o);
    if (n > cap) {
      throw Error(ErrorKind::guard,
                  "materialization too large: |F(" + cat.object_id(o) + ")| = " +
                      std::to_string(n) + " exceeds the powerset cap of " +
                      std::to_string(cap));
    }
    std::uint32_t count = std::uint32_t{1} << n;
    std::vector<std::pair<std::string, std::uint32_t>> named;
    named.reserve(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      named.emplace_back(subset_id_of_mask(F.elements(o), mask), mask);
    }
    std::sort(named.begin(), named.end());
    position_by_mask[o].assign(count, -1);
    for (std::uint32_t pos = 0; pos < count; ++pos) {
      data.elements[o].push_back(named[pos].first);
      mask_by_position[o].push_back(named[pos].second);
      position_by_mask[o][named[pos].second] = static_cast<int>(pos);
    }
  }

  data.action.resize(cat.morphism_count());
  for (int m = 0; m < cat.morphism_count(); ++m) {
    int src = F.action_source(m);
    int tgt = F.action_target(m);
    for (std::uint32_t mask : mask_by_position[src]) {
      std::uint32_t image = 0;
      for (int i = 0; i < F.set_size(src); ++i) {
        if (mask & (std::uint32_t{1} << i)) {
          image |= std::uint32_t{1} << F.apply(m, i);
        }
      }
      data.action[m].push_back(position_by_mask[tgt][image]);
    }
  }
  return SetValuedFunctor::build(std::move(data));
}

SetValuedFunctor reinterpret_over_opposite(const SetValuedFunctor& F, CategoryPtr op_base) {
  if (!(*op_base == opposite(F.base()))) {
    throw Error(ErrorKind::invalid_input,
                "op_base is not the opposite of the functor's base category");
  }
  SetValuedFunctor::Data data;
  data.base = std::move(op_base);
  data.variance =
      F.variance() == Variance::covariant ? Variance::contravariant : Variance::covariant;
  // Morphism ids are shared and both categories sort them identically, so the
  // tables carry over index-for-index.
  const FiniteCategory& cat = F.base();
  data.elements.resize(cat.object_count());
  data.action.resize(cat.morphism_count());
  for (int o = 0; o < cat.object_count(); ++o) data.elements[o] = F.elements(o);
  for (int m = 0; m < cat.morphism_count(); ++m) {
    data.action[m].assign(F.table(m).begin(), F.table(m).end());
  }
  return SetValuedFunctor::build(std::move(data));
}

}  // namespace fincat
