#include "fincat/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace fincat {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::schema, where + ": " + what);
}

const json& expect(const json& j, const char* key, json::value_t type,
                   const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing key '") + key + "'");
  if (it->type() != type) {
    schema_error(where + "/" + key, "unexpected type, got " + std::string(it->type_name()));
  }
  return *it;
}

std::string expect_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

}  // namespace

Loaded<FiniteCategory> category_from_json(const json& j) {
  if (!j.is_object()) schema_error("$", "category file must be a JSON object");

  CategorySpec spec;
  for (const auto& o : expect(j, "objects", json::value_t::array, "$")) {
    spec.objects.push_back(expect_string(o, "$/objects"));
  }
  if (j.contains("morphisms")) {
    const auto& arr = expect(j, "morphisms", json::value_t::array, "$");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "$/morphisms/" + std::to_string(i);
      if (!arr[i].is_object()) schema_error(where, "expected an object");
      spec.morphisms.push_back({expect_string(arr[i].value("id", json()), where + "/id"),
                                expect_string(arr[i].value("dom", json()), where + "/dom"),
                                expect_string(arr[i].value("cod", json()), where + "/cod")});
    }
  }
  if (j.contains("composition")) {
    const auto& arr = expect(j, "composition", json::value_t::array, "$");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "$/composition/" + std::to_string(i);
      if (!arr[i].is_object()) schema_error(where, "expected an object");
      spec.composition.push_back(
          {expect_string(arr[i].value("g", json()), where + "/g"),
           expect_string(arr[i].value("f", json()), where + "/f"),
           expect_string(arr[i].value("result", json()), where + "/result")});
    }
  }

  Loaded<FiniteCategory> out;
  FiniteCategory cat = FiniteCategory::build(spec);
  out.report = validate_category(cat);
  if (out.report.ok()) out.value = std::move(cat);
  return out;
}

Loaded<FiniteCategory> load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, path + ": " + e.what());
  }
  return category_from_json(j);
}

Loaded<SetValuedFunctor> functor_from_json(const json& j, CategoryPtr base) {
  if (!j.is_object()) schema_error("$", "functor file must be a JSON object");
  const FiniteCategory& cat = *base;

  SetValuedFunctor::Data data;
  data.base = base;
  std::string variance = expect_string(expect(j, "variance", json::value_t::string, "$"), "$/variance");
  if (variance == "covariant") {
    data.variance = Variance::covariant;
  } else if (variance == "contravariant") {
    data.variance = Variance::contravariant;
  } else {
    schema_error("$/variance", "expected 'covariant' or 'contravariant'");
  }

  const json& on_objects = expect(j, "on_objects", json::value_t::object, "$");
  for (const auto& [key, value] : on_objects.items()) {
    if (!cat.object_index(key)) schema_error("$/on_objects", "unknown object '" + key + "'");
  }
  data.elements.resize(cat.object_count());
  for (int o = 0; o < cat.object_count(); ++o) {
    const std::string& id = cat.object_id(o);
    auto it = on_objects.find(id);
    if (it == on_objects.end()) {
      schema_error("$/on_objects", "missing object '" + id + "'");
    }
    if (!it->is_array()) schema_error("$/on_objects/" + id, "expected an array");
    for (const auto& e : *it) {
      data.elements[o].push_back(expect_string(e, "$/on_objects/" + id));
    }
    std::sort(data.elements[o].begin(), data.elements[o].end());
  }

  const json empty = json::object();
  const json& on_morphisms =
      j.contains("on_morphisms") ? expect(j, "on_morphisms", json::value_t::object, "$") : empty;
  for (const auto& [key, value] : on_morphisms.items()) {
    if (!cat.morphism_index(key)) {
      schema_error("$/on_morphisms", "unknown morphism '" + key + "'");
    }
  }

  data.action.resize(cat.morphism_count());
  for (int m = 0; m < cat.morphism_count(); ++m) {
    const std::string& id = cat.morphism(m).id;
    const std::string where = "$/on_morphisms/" + id;
    int src = data.variance == Variance::covariant ? cat.morphism(m).dom : cat.morphism(m).cod;
    int tgt = data.variance == Variance::covariant ? cat.morphism(m).cod : cat.morphism(m).dom;
    const auto& src_set = data.elements[src];
    const auto& tgt_set = data.elements[tgt];

    auto it = on_morphisms.find(id);
    if (it == on_morphisms.end()) {
      if (!cat.is_identity(m)) {
        schema_error(where, "missing table for non-identity morphism '" + id + "'");
      }
      data.action[m].resize(src_set.size());
      for (std::size_t e = 0; e < src_set.size(); ++e) data.action[m][e] = static_cast<int>(e);
      continue;
    }
    if (!it->is_object()) schema_error(where, "expected an object");
    if (it->size() != src_set.size()) {
      schema_error(where, "table must be total on the " + std::string(variance_name(data.variance)) +
                              " action source F(" + cat.object_id(src) + ")");
    }
    data.action[m].resize(src_set.size());
    for (const auto& [from, to] : it->items()) {
      auto from_it = std::lower_bound(src_set.begin(), src_set.end(), from);
      if (from_it == src_set.end() || *from_it != from) {
        schema_error(where, "'" + from + "' is not an element of F(" + cat.object_id(src) + ")");
      }
      std::string to_id = expect_string(to, where + "/" + from);
      auto to_it = std::lower_bound(tgt_set.begin(), tgt_set.end(), to_id);
      if (to_it == tgt_set.end() || *to_it != to_id) {
        schema_error(where, "'" + to_id + "' is not an element of F(" + cat.object_id(tgt) + ")");
      }
      data.action[m][from_it - src_set.begin()] = static_cast<int>(to_it - tgt_set.begin());
    }
  }

  Loaded<SetValuedFunctor> out;
  SetValuedFunctor F = SetValuedFunctor::build(std::move(data));
  out.report = validate_functor(F);
  if (out.report.ok()) out.value = std::move(F);
  return out;
}

Loaded<SetValuedFunctor> load_functor_file(const std::string& path, CategoryPtr base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, path + ": " + e.what());
  }
  return functor_from_json(j, std::move(base));
}

json category_to_json(const FiniteCategory& cat) {
  json j;
  j["objects"] = json::array();
  for (int o = 0; o < cat.object_count(); ++o) j["objects"].push_back(cat.object_id(o));
  j["morphisms"] = json::array();
  for (int m = 0; m < cat.morphism_count(); ++m) {
    if (cat.is_identity(m)) continue;
    const auto& mor = cat.morphism(m);
    j["morphisms"].push_back({{"id", mor.id},
                              {"dom", cat.object_id(mor.dom)},
                              {"cod", cat.object_id(mor.cod)}});
  }
  j["composition"] = json::array();
  for (const auto& [g, f, r] : cat.entries()) {
    if (cat.is_identity(g) || cat.is_identity(f)) continue;
    j["composition"].push_back({{"g", cat.morphism(g).id},
                                {"f", cat.morphism(f).id},
                                {"result", cat.morphism(r).id}});
  }
  return j;
}

json functor_to_json(const SetValuedFunctor& F) {
  const FiniteCategory& cat = F.base();
  json j;
  j["variance"] = variance_name(F.variance());
  j["on_objects"] = json::object();
  for (int o = 0; o < cat.object_count(); ++o) {
    j["on_objects"][cat.object_id(o)] = F.elements(o);
  }
  j["on_morphisms"] = json::object();
  for (int m = 0; m < cat.morphism_count(); ++m) {
    if (cat.is_identity(m)) continue;
    json table = json::object();
    int src = F.action_source(m);
    int tgt = F.action_target(m);
    for (int e = 0; e < F.set_size(src); ++e) {
      table[F.elements(src)[e]] = F.elements(tgt)[F.apply(m, e)];
    }
    j["on_morphisms"][cat.morphism(m).id] = std::move(table);
  }
  return j;
}

json transformation_to_json(const NaturalTransformation& tau) {
  const FiniteCategory& cat = tau.source->base();
  json components = json::object();
  for (int o = 0; o < cat.object_count(); ++o) {
    json table = json::object();
    for (int e = 0; e < tau.source->set_size(o); ++e) {
      table[tau.source->elements(o)[e]] = tau.target->elements(o)[tau.components[o][e]];
    }
    components[cat.object_id(o)] = std::move(table);
  }
  return json{{"components", std::move(components)}};
}

json report_to_json(const ValidationReport& report) {
  auto violations = [](const std::vector<Violation>& list) {
    json arr = json::array();
    for (const auto& v : list) {
      arr.push_back({{"rule", v.rule}, {"witness", v.witness}, {"message", v.message}});
    }
    return arr;
  };
  return json{{"structural", violations(report.structural)},
              {"laws", violations(report.laws)},
              {"ok", report.ok()}};
}

json proset_to_json(const Proset& p) {
  json leq = json::array();
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < p.size(); ++b) {
      if (p.leq(a, b)) leq.push_back({p.carrier()[a], p.carrier()[b]});
    }
  }
  return json{{"carrier", p.carrier()},
              {"leq", std::move(leq)},
              {"antisymmetric", p.antisymmetric()}};
}

json topology_to_json(const FiniteTopology& t) {
  std::vector<std::vector<std::string>> opens;
  for (std::uint32_t mask : t.opens) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < t.carrier.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) members.push_back(t.carrier[i]);
    }
    opens.push_back(std::move(members));
  }
  std::sort(opens.begin(), opens.end());
  return json{{"carrier", t.carrier}, {"opens", std::move(opens)}};
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace fincat
