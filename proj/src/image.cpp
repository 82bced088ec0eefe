#include "fincat/image.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fincat {

namespace {

void require_contravariant(const SetValuedFunctor& F, const char* what) {
  if (F.variance() != Variance::contravariant) {
    throw Error(ErrorKind::invalid_input,
                std::string(what) + " requires a contravariant functor; use the "
                                    "opposite-category reduction for the covariant case");
  }
}

std::vector<int> full_set(const SetValuedFunctor& F, int obj) {
  std::vector<int> out(F.set_size(obj));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

std::vector<int> image_indices(const SetValuedFunctor& F, int mor) {
  return direct_image(F, mor, full_set(F, F.action_source(mor)));
}

std::vector<ElementId> to_ids(const SetValuedFunctor& F, int obj,
                              const std::vector<int>& indices) {
  std::vector<ElementId> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(F.elements(obj)[i]);
  return out;
}

}  // namespace

std::vector<ElementId> image_of_morphism(const SetValuedFunctor& F, const MorphismId& f) {
  require_contravariant(F, "image_of_morphism");
  int m = F.base().require_morphism(f);
  return to_ids(F, F.base().morphism(m).dom, image_indices(F, m));
}

NaturalTransformation im_transformation(CategoryPtr cat, const ObjectId& A, FunctorPtr F,
                                        int cap) {
  require_contravariant(*F, "im_transformation");
  int a = cat->require_object(A);

  auto h = std::make_shared<const SetValuedFunctor>(
      hom_functor(cat, A, Variance::contravariant));
  auto sub = std::make_shared<const SetValuedFunctor>(sub_functor(*F, cap));

  NaturalTransformation im;
  im.source = h;
  im.target = sub;
  im.components.resize(cat->object_count());
  for (int x = 0; x < cat->object_count(); ++x) {
    for (const MorphismId& f_id : h->elements(x)) {
      int f = cat->require_morphism(f_id);
      std::vector<ElementId> img = to_ids(*F, x, image_indices(*F, f));
      im.components[x].push_back(sub->require_element(x, subset_id(img)));
    }
  }
  (void)a;
  return im;
}

ValidationReport im_naturality_check(CategoryPtr cat, const ObjectId& A,
                                     const SetValuedFunctor& F, int threads) {
  require_contravariant(F, "im_naturality_check");
  int a = cat->require_object(A);

  // Per-morphism squares are independent; each worker writes only its own
  // report slot, and the merge preserves morphism order.
  const int m_count = cat->morphism_count();
  std::vector<ValidationReport> partial(m_count);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (int g = 0; g < m_count; ++g) {
    const auto& gm = cat->morphism(g);
    for (int f : cat->hom(gm.cod, a)) {
      int fg = cat->compose(f, g);
      std::vector<int> pushed = direct_image(F, g, image_indices(F, f));
      std::vector<int> direct = image_indices(F, fg);
      if (pushed != direct) {
        partial[g].add_law(
            "im-naturality", {gm.id, cat->morphism(f).id},
            "direct_image(F, " + gm.id + ", Im(" + cat->morphism(f).id + ")) != Im(" +
                cat->morphism(fg).id + ")");
      }
    }
  }

  ValidationReport report;
  for (auto& p : partial) {
    for (auto& v : p.laws) report.laws.push_back(std::move(v));
  }
  return report;
}

ImOracle::ImOracle(CategoryPtr cat, const ObjectId& A, FunctorPtr F,
                   const EnumOptions& opts)
    : cat_(cat), F_(F), A_(cat->require_object(A)) {
  require_contravariant(*F, "nat_image_oracle");
  auto h = std::make_shared<const SetValuedFunctor>(
      hom_functor(cat, A, Variance::contravariant));
  std::vector<NaturalTransformation> all = enumerate_nat_trans(h, F, opts);
  count_ = static_cast<long long>(all.size());

  values_.resize(cat->object_count());
  for (int x = 0; x < cat->object_count(); ++x) {
    values_[x].resize(h->set_size(x));
    for (int p = 0; p < h->set_size(x); ++p) {
      std::vector<int> seen;
      for (const auto& tau : all) seen.push_back(tau.components[x][p]);
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      values_[x][p] = std::move(seen);
    }
  }
}

std::vector<ElementId> ImOracle::image_of(const MorphismId& f) const {
  int m = cat_->require_morphism(f);
  const auto& mor = cat_->morphism(m);
  if (mor.cod != A_) {
    throw Error(ErrorKind::invalid_input,
                "'" + f + "' does not land in '" + cat_->object_id(A_) + "'");
  }
  std::vector<int> hom_set = cat_->hom(mor.dom, A_);
  int pos = static_cast<int>(
      std::lower_bound(hom_set.begin(), hom_set.end(), m) - hom_set.begin());
  return to_ids(*F_, mor.dom, values_[mor.dom][pos]);
}

std::vector<ElementId> nat_image_oracle(CategoryPtr cat, const ObjectId& A, FunctorPtr F,
                                        const MorphismId& f, const EnumOptions& opts) {
  return ImOracle(cat, A, F, opts).image_of(f);
}

std::vector<std::vector<MorphismId>> coarse_classes(CategoryPtr cat, const ObjectId& X,
                                                    const ObjectId& A,
                                                    const SetValuedFunctor& F) {
  require_contravariant(F, "coarse_classes");
  int x = cat->require_object(X);
  int a = cat->require_object(A);

  std::vector<std::pair<std::vector<int>, MorphismId>> keyed;
  for (int f : cat->hom(x, a)) {
    keyed.emplace_back(image_indices(F, f), cat->morphism(f).id);
  }

  std::vector<std::vector<MorphismId>> blocks;
  std::vector<std::vector<int>> keys;
  for (auto& [key, id] : keyed) {  // hom order = canonical member order
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      blocks.push_back({id});
    } else {
      blocks[it - keys.begin()].push_back(id);
    }
  }
  // Blocks ordered by least member; members are already ascending.
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return blocks;
}

std::vector<ElementId> depends_set(const DependenceQuery& q) {
  require_contravariant(*q.G, "depends_set");
  const FiniteCategory& cat = q.G->base();
  int x = cat.require_object(q.X);
  int f_alpha = cat.require_morphism(q.f_alpha);
  if (cat.morphism(f_alpha).dom != x) {
    throw Error(ErrorKind::invalid_input,
                "'" + q.f_alpha + "' does not start at '" + q.X + "'");
  }
  return image_of_morphism(*q.G, q.f_alpha);
}

bool depends_oracle(const DependenceQuery& q, const ElementId& beta) {
  require_contravariant(*q.G, "depends_oracle");
  CategoryPtr cat = q.G->base_ptr();
  int x = cat->require_object(q.X);
  int f_alpha = cat->require_morphism(q.f_alpha);
  const auto& fa = cat->morphism(f_alpha);
  if (fa.dom != x) {
    throw Error(ErrorKind::invalid_input,
                "'" + q.f_alpha + "' does not start at '" + q.X + "'");
  }
  int beta_idx = q.G->require_element(x, beta);
  const ObjectId& A = cat->object_id(fa.cod);

  SetValuedFunctor h = hom_functor(cat, A, Variance::contravariant);

  for (int y = 0; y < cat->object_count(); ++y) {
    for (int f : cat->hom(x, y)) {
      // f qualifies when f_α is in the image of h^A(f): [Y,A] → [X,A].
      std::vector<int> pulled = direct_image(h, f, full_set(h, y));
      int fa_pos = h.require_element(x, q.f_alpha);
      if (!std::binary_search(pulled.begin(), pulled.end(), fa_pos)) continue;

      std::vector<int> image = image_indices(*q.G, f);
      if (!std::binary_search(image.begin(), image.end(), beta_idx)) return false;
    }
  }
  return true;
}

}  // namespace fincat
