#include "fincat/category.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fincat {

namespace {

std::uint64_t pack(int g, int f) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
         static_cast<std::uint32_t>(f);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

FiniteCategory FiniteCategory::build(const CategorySpec& spec) {
  FiniteCategory cat;

  cat.objects_ = spec.objects;
  std::sort(cat.objects_.begin(), cat.objects_.end());
  for (std::size_t i = 1; i < cat.objects_.size(); ++i) {
    if (cat.objects_[i] == cat.objects_[i - 1]) {
      throw Error(ErrorKind::schema, "duplicate object id '" + cat.objects_[i] + "'");
    }
  }
  for (const auto& o : cat.objects_) {
    if (o.empty()) throw Error(ErrorKind::schema, "empty object id");
  }

  const bool auto_identities = spec.identities.empty();

  std::vector<MorphismSpec> morphisms = spec.morphisms;
  std::map<ObjectId, MorphismId> identities = spec.identities;
  if (auto_identities) {
    for (const auto& m : morphisms) {
      if (m.id.rfind(kIdentityPrefix, 0) == 0) {
        throw Error(ErrorKind::schema,
                    "morphism id '" + m.id + "' uses the reserved identity prefix '" +
                        std::string(kIdentityPrefix) + "'");
      }
    }
    for (const auto& o : cat.objects_) {
      MorphismId id = std::string(kIdentityPrefix) + o;
      morphisms.push_back({id, o, o});
      identities[o] = id;
    }
  }

  if (static_cast<int>(morphisms.size()) > kMaxMorphisms) {
    throw Error(ErrorKind::guard,
                "category has " + std::to_string(morphisms.size()) +
                    " morphisms; the size guard is " + std::to_string(kMaxMorphisms));
  }

  std::sort(morphisms.begin(), morphisms.end(),
            [](const MorphismSpec& a, const MorphismSpec& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < morphisms.size(); ++i) {
    if (morphisms[i].id == morphisms[i - 1].id) {
      throw Error(ErrorKind::schema, "duplicate morphism id '" + morphisms[i].id + "'");
    }
  }

  for (std::size_t i = 0; i < cat.objects_.size(); ++i) {
    cat.object_index_[cat.objects_[i]] = static_cast<int>(i);
  }

  cat.morphisms_.reserve(morphisms.size());
  for (const auto& m : morphisms) {
    if (m.id.empty()) throw Error(ErrorKind::schema, "empty morphism id");
    auto d = cat.object_index_.find(m.dom);
    auto c = cat.object_index_.find(m.cod);
    if (d == cat.object_index_.end()) {
      throw Error(ErrorKind::schema,
                  "morphism '" + m.id + "' has unknown dom '" + m.dom + "'");
    }
    if (c == cat.object_index_.end()) {
      throw Error(ErrorKind::schema,
                  "morphism '" + m.id + "' has unknown cod '" + m.cod + "'");
    }
    cat.morphism_index_[m.id] = static_cast<int>(cat.morphisms_.size());
    cat.morphisms_.push_back({m.id, d->second, c->second});
  }

  cat.identity_.assign(cat.objects_.size(), -1);
  cat.is_identity_.assign(cat.morphisms_.size(), 0);
  for (std::size_t i = 0; i < cat.objects_.size(); ++i) {
    auto it = identities.find(cat.objects_[i]);
    if (it == identities.end()) {
      throw Error(ErrorKind::schema,
                  "object '" + cat.objects_[i] + "' has no identity morphism");
    }
    auto m = cat.morphism_index_.find(it->second);
    if (m == cat.morphism_index_.end()) {
      throw Error(ErrorKind::schema, "identity '" + it->second + "' of object '" +
                                         cat.objects_[i] + "' is not a declared morphism");
    }
    cat.identity_[i] = m->second;
    cat.is_identity_[m->second] = 1;
  }
  for (const auto& [obj, id] : identities) {
    if (!cat.object_index_.count(obj)) {
      throw Error(ErrorKind::schema, "identity declared for unknown object '" + obj + "'");
    }
    (void)id;
  }

  auto add_entry = [&cat](int g, int f, int r, const char* origin) {
    auto [it, inserted] = cat.table_.try_emplace(pack(g, f), r);
    if (!inserted && it->second != r) {
      throw Error(ErrorKind::schema,
                  std::string("conflicting composition entries for (") +
                      cat.morphisms_[g].id + ", " + cat.morphisms_[f].id + ") from " +
                      origin);
    }
  };

  for (const auto& e : spec.composition) {
    auto g = cat.morphism_index_.find(e.g);
    auto f = cat.morphism_index_.find(e.f);
    auto r = cat.morphism_index_.find(e.result);
    if (g == cat.morphism_index_.end() || f == cat.morphism_index_.end() ||
        r == cat.morphism_index_.end()) {
      throw Error(ErrorKind::schema, "composition entry (" + e.g + ", " + e.f + ") -> " +
                                         e.result + " references an unknown morphism");
    }
    add_entry(g->second, f->second, r->second, "input");
  }

  // Fill the inferred identity compositions where the input left gaps.
  for (int m = 0; m < cat.morphism_count(); ++m) {
    const auto& mor = cat.morphisms_[m];
    cat.table_.try_emplace(pack(m, cat.identity_[mor.dom]), m);
    cat.table_.try_emplace(pack(cat.identity_[mor.cod], m), m);
  }

  cat.entries_.reserve(cat.table_.size());
  for (const auto& [key, r] : cat.table_) {
    cat.entries_.push_back({static_cast<int>(key >> 32),
                            static_cast<int>(key & 0xffffffffu), r});
  }
  std::sort(cat.entries_.begin(), cat.entries_.end());
  return cat;
}

std::optional<int> FiniteCategory::object_index(std::string_view id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FiniteCategory::morphism_index(std::string_view id) const {
  auto it = morphism_index_.find(id);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

int FiniteCategory::require_object(std::string_view id) const {
  auto i = object_index(id);
  if (!i) throw Error(ErrorKind::invalid_input, "unknown object '" + std::string(id) + "'");
  return *i;
}

int FiniteCategory::require_morphism(std::string_view id) const {
  auto i = morphism_index(id);
  if (!i) throw Error(ErrorKind::invalid_input, "unknown morphism '" + std::string(id) + "'");
  return *i;
}

int FiniteCategory::compose(int g, int f) const {
  auto it = table_.find(pack(g, f));
  return it == table_.end() ? -1 : it->second;
}

std::vector<int> FiniteCategory::hom(int from, int to) const {
  std::vector<int> out;
  for (int m = 0; m < morphism_count(); ++m) {
    if (morphisms_[m].dom == from && morphisms_[m].cod == to) out.push_back(m);
  }
  return out;
}

bool FiniteCategory::operator==(const FiniteCategory& other) const {
  if (objects_ != other.objects_) return false;
  if (morphisms_.size() != other.morphisms_.size()) return false;
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    if (morphisms_[i].id != other.morphisms_[i].id ||
        morphisms_[i].dom != other.morphisms_[i].dom ||
        morphisms_[i].cod != other.morphisms_[i].cod) {
      return false;
    }
  }
  return identity_ == other.identity_ && entries_ == other.entries_;
}

ValidationReport validate_category(const FiniteCategory& cat) {
  ValidationReport report;

  for (int o = 0; o < cat.object_count(); ++o) {
    const auto& id_mor = cat.morphism(cat.identity_of(o));
    if (id_mor.dom != o || id_mor.cod != o) {
      report.add_law("identity-endpoints", {cat.object_id(o), id_mor.id},
                     "identity '" + id_mor.id + "' of object '" + cat.object_id(o) +
                         "' is not an endomorphism of it");
    }
  }

  // Totality on composable pairs; entries only on composable pairs.
  for (int g = 0; g < cat.morphism_count(); ++g) {
    for (int f = 0; f < cat.morphism_count(); ++f) {
      int r = cat.compose(g, f);
      const auto& gm = cat.morphism(g);
      const auto& fm = cat.morphism(f);
      if (cat.composable(g, f)) {
        if (r < 0) {
          report.add_structural("missing-composition", {gm.id, fm.id},
                                "no entry for composable pair (" + gm.id + ", " + fm.id + ")");
          continue;
        }
        const auto& rm = cat.morphism(r);
        if (rm.dom != fm.dom || rm.cod != gm.cod) {
          report.add_law("composite-endpoints", {gm.id, fm.id, rm.id},
                         "(" + gm.id + ", " + fm.id + ") -> " + rm.id +
                             " must go from dom(" + fm.id + ") to cod(" + gm.id + ")");
        }
      } else if (r >= 0) {
        report.add_structural("non-composable-entry", {gm.id, fm.id},
                              "entry for (" + gm.id + ", " + fm.id + ") but cod(" + fm.id +
                                  ") != dom(" + gm.id + ")");
      }
    }
  }

  for (int f = 0; f < cat.morphism_count(); ++f) {
    const auto& fm = cat.morphism(f);
    int left = cat.compose(cat.identity_of(fm.cod), f);
    if (left >= 0 && left != f) {
      report.add_law("unit-law", {cat.morphism(cat.identity_of(fm.cod)).id, fm.id},
                     "id∘" + fm.id + " = " + cat.morphism(left).id + ", expected " + fm.id);
    }
    int right = cat.compose(f, cat.identity_of(fm.dom));
    if (right >= 0 && right != f) {
      report.add_law("unit-law", {fm.id, cat.morphism(cat.identity_of(fm.dom)).id},
                     fm.id + "∘id = " + cat.morphism(right).id + ", expected " + fm.id);
    }
  }

  // Associativity over all composable triples h∘g∘f, skipping pairs already
  // reported missing.
  for (int h = 0; h < cat.morphism_count(); ++h) {
    for (int g = 0; g < cat.morphism_count(); ++g) {
      if (!cat.composable(h, g)) continue;
      int hg = cat.compose(h, g);
      if (hg < 0) continue;
      for (int f = 0; f < cat.morphism_count(); ++f) {
        if (!cat.composable(g, f)) continue;
        int gf = cat.compose(g, f);
        if (gf < 0) continue;
        int left = cat.compose(hg, f);
        int right = cat.compose(h, gf);
        if (left < 0 || right < 0) continue;
        if (left != right) {
          report.add_law("associativity",
                         {cat.morphism(h).id, cat.morphism(g).id, cat.morphism(f).id},
                         "(" + cat.morphism(h).id + "∘" + cat.morphism(g).id + ")∘" +
                             cat.morphism(f).id + " = " + cat.morphism(left).id + " but " +
                             cat.morphism(h).id + "∘(" + cat.morphism(g).id + "∘" +
                             cat.morphism(f).id + ") = " + cat.morphism(right).id);
        }
      }
    }
  }

  return report;
}

FiniteCategory opposite(const FiniteCategory& cat) {
  CategorySpec spec;
  for (int o = 0; o < cat.object_count(); ++o) spec.objects.push_back(cat.object_id(o));
  for (int m = 0; m < cat.morphism_count(); ++m) {
    const auto& mor = cat.morphism(m);
    spec.morphisms.push_back({mor.id, cat.object_id(mor.cod), cat.object_id(mor.dom)});
  }
  for (int o = 0; o < cat.object_count(); ++o) {
    spec.identities[cat.object_id(o)] = cat.morphism(cat.identity_of(o)).id;
  }
  for (const auto& [g, f, r] : cat.entries()) {
    spec.composition.push_back(
        {cat.morphism(f).id, cat.morphism(g).id, cat.morphism(r).id});
  }
  return FiniteCategory::build(spec);
}

FiniteCategory discrete_category(const std::vector<ObjectId>& objects) {
  CategorySpec spec;
  spec.objects = objects;
  return FiniteCategory::build(spec);
}

FiniteCategory poset_category(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& relation_pairs) {
  const int n = static_cast<int>(elements.size());
  std::map<std::string, int, std::less<>> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw Error(ErrorKind::invalid_input, "duplicate element '" + elements[i] + "'");
    }
  }

  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i) * n + i] = 1;
  for (const auto& [a, b] : relation_pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw Error(ErrorKind::invalid_input,
                  "relation pair (" + a + ", " + b + ") references an unknown element");
    }
    leq[static_cast<std::size_t>(ia->second) * n + ib->second] = 1;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!leq[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (leq[static_cast<std::size_t>(k) * n + j]) {
          leq[static_cast<std::size_t>(i) * n + j] = 1;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (leq[static_cast<std::size_t>(i) * n + j] &&
          leq[static_cast<std::size_t>(j) * n + i]) {
        throw Error(ErrorKind::invalid_input,
                    "relation is not antisymmetric: cycle between '" + elements[i] +
                        "' and '" + elements[j] + "'");
      }
    }
  }

  auto arrow = [](const std::string& a, const std::string& b) {
    return "le(" + a + "," + b + ")";
  };

  CategorySpec spec;
  spec.objects = elements;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && leq[static_cast<std::size_t>(i) * n + j]) {
        spec.morphisms.push_back({arrow(elements[i], elements[j]), elements[i], elements[j]});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || !leq[static_cast<std::size_t>(i) * n + j]) continue;
      for (int k = 0; k < n; ++k) {
        if (j == k || !leq[static_cast<std::size_t>(j) * n + k]) continue;
        // (g: j→k) ∘ (f: i→j) = i→k
        spec.composition.push_back(
            {arrow(elements[j], elements[k]), arrow(elements[i], elements[j]),
             arrow(elements[i], elements[k])});
      }
    }
  }
  return FiniteCategory::build(spec);
}

FiniteCategory monoid_category(const std::vector<std::string>& elements,
                               const std::vector<std::vector<std::string>>& table,
                               const std::string& unit) {
  const int n = static_cast<int>(elements.size());
  std::map<std::string, int, std::less<>> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw Error(ErrorKind::invalid_input, "duplicate element '" + elements[i] + "'");
    }
  }
  auto unit_it = index.find(unit);
  if (unit_it == index.end()) {
    throw Error(ErrorKind::invalid_input, "unit '" + unit + "' is not an element");
  }
  if (static_cast<int>(table.size()) != n) {
    throw Error(ErrorKind::invalid_input, "cayley table must have one row per element");
  }

  std::vector<int> mul(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) {
      throw Error(ErrorKind::invalid_input,
                  "cayley row for '" + elements[a] + "' must have one entry per element");
    }
    for (int b = 0; b < n; ++b) {
      auto it = index.find(table[a][b]);
      if (it == index.end()) {
        throw Error(ErrorKind::invalid_input, "cayley entry '" + table[a][b] +
                                                  "' is not an element");
      }
      mul[static_cast<std::size_t>(a) * n + b] = it->second;
    }
  }
  const int e = unit_it->second;
  for (int a = 0; a < n; ++a) {
    if (mul[static_cast<std::size_t>(e) * n + a] != a ||
        mul[static_cast<std::size_t>(a) * n + e] != a) {
      throw Error(ErrorKind::invalid_input,
                  "'" + unit + "' is not a two-sided unit at element '" + elements[a] + "'");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        int ab = mul[static_cast<std::size_t>(a) * n + b];
        int bc = mul[static_cast<std::size_t>(b) * n + c];
        if (mul[static_cast<std::size_t>(ab) * n + c] !=
            mul[static_cast<std::size_t>(a) * n + bc]) {
          throw Error(ErrorKind::invalid_input,
                      "cayley table is not associative at (" + elements[a] + ", " +
                          elements[b] + ", " + elements[c] + ")");
        }
      }
    }
  }

  const std::string object = "•";
  CategorySpec spec;
  spec.objects = {object};
  for (const auto& el : elements) spec.morphisms.push_back({el, object, object});
  spec.identities[object] = unit;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      spec.composition.push_back(
          {elements[a], elements[b], elements[mul[static_cast<std::size_t>(a) * n + b]]});
    }
  }
  return FiniteCategory::build(spec);
}

FiniteCategory free_category_on_dag(const std::vector<std::string>& vertices,
                                    const std::vector<EdgeSpec>& edges) {
  const int n = static_cast<int>(vertices.size());
  std::map<std::string, int, std::less<>> vindex;
  for (int i = 0; i < n; ++i) {
    if (!vindex.emplace(vertices[i], i).second) {
      throw Error(ErrorKind::invalid_input, "duplicate vertex '" + vertices[i] + "'");
    }
  }
  for (const auto& e : edges) {
    if (e.id.find('.') != std::string::npos) {
      throw Error(ErrorKind::invalid_input,
                  "edge id '" + e.id + "' may not contain '.' (reserved for path ids)");
    }
    if (e.id.rfind(kIdentityPrefix, 0) == 0) {
      throw Error(ErrorKind::invalid_input,
                  "edge id '" + e.id + "' uses the reserved identity prefix");
    }
    if (!vindex.count(e.src) || !vindex.count(e.dst)) {
      throw Error(ErrorKind::invalid_input,
                  "edge '" + e.id + "' references an unknown vertex");
    }
  }

  std::vector<std::vector<int>> out(n);  // edge indices by source vertex
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out[vindex.at(edges[i].src)].push_back(static_cast<int>(i));
  }

  // Cycle detection with an explicit path for the witness.
  {
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::string> stack;
    auto dfs = [&](auto&& self, int v) -> void {
      state[v] = 1;
      stack.push_back(vertices[v]);
      for (int ei : out[v]) {
        int w = vindex.at(edges[ei].dst);
        if (state[w] == 1) {
          auto from = std::find(stack.begin(), stack.end(), vertices[w]);
          std::vector<std::string> cycle(from, stack.end());
          cycle.push_back(vertices[w]);
          throw Error(ErrorKind::invalid_input,
                      "edge set has a cycle: " + join(cycle, " -> "));
        }
        if (state[w] == 0) self(self, w);
      }
      stack.pop_back();
      state[v] = 2;
    };
    for (int v = 0; v < n; ++v) {
      if (state[v] == 0) dfs(dfs, v);
    }
  }

  struct Path {
    std::string id;
    int src;
    int dst;
  };
  std::vector<Path> paths;
  auto extend = [&](auto&& self, int v, const std::string& prefix, int src) -> void {
    for (int ei : out[v]) {
      const auto& e = edges[ei];
      std::string id = prefix.empty() ? e.id : prefix + "." + e.id;
      int dst = vindex.at(e.dst);
      paths.push_back({id, src, dst});
      if (static_cast<int>(paths.size()) + n > kMaxMorphisms) {
        throw Error(ErrorKind::guard, "free category exceeds the morphism guard of " +
                                          std::to_string(kMaxMorphisms));
      }
      self(self, dst, id, src);
    }
  };
  for (int v = 0; v < n; ++v) extend(extend, v, "", v);

  CategorySpec spec;
  spec.objects = vertices;
  std::set<std::string> seen;
  for (const auto& p : paths) {
    if (!seen.insert(p.id).second) {
      throw Error(ErrorKind::invalid_input, "duplicate edge id produces path '" + p.id + "'");
    }
    spec.morphisms.push_back({p.id, vertices[p.src], vertices[p.dst]});
  }
  for (const auto& f : paths) {
    for (const auto& g : paths) {
      if (f.dst != g.src) continue;
      spec.composition.push_back({g.id, f.id, f.id + "." + g.id});
    }
  }
  return FiniteCategory::build(spec);
}

}  // namespace fincat
