#include "fincat/workspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "fincat/corpus.hpp"
#include "fincat/image.hpp"

namespace fincat {

namespace {

// Thrown when loaded data or a verified construction violates a mathematical
// law; carries the finished report for the exit-1 path.
struct MathFailure {
  json report;
};

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

json guards_json(long long guard) {
  return json{{"search_space", guard},
              {"powerset_cap", kPowersetCap},
              {"alexandroff_carrier", kAlexandroffCarrierGuard},
              {"max_morphisms", kMaxMorphisms}};
}

struct Args {
  std::string cat_file;
  std::string functor_file;
  std::string F;
  std::string G;
  std::string A;
  std::string X;
  std::string variance = "contra";
  std::string falpha;
  std::string beta;
  std::string out_format = "json";
  long long guard = -1;
  int threads = 0;
};

long long env_guard() {
  if (const char* env = std::getenv("YONEDA_GUARD")) {
    char* end = nullptr;
    long long value = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || value <= 0) {
      throw Error(ErrorKind::usage, "YONEDA_GUARD must be a positive integer");
    }
    return value;
  }
  return kDefaultSearchGuard;
}

Variance parse_variance(const std::string& v) {
  if (v == "contra" || v == "contravariant") return Variance::contravariant;
  if (v == "co" || v == "covariant") return Variance::covariant;
  throw Error(ErrorKind::usage, "--variance must be 'co' or 'contra'");
}

class Session {
 public:
  explicit Session(const Args& args)
      : args_(args), guard_(args.guard > 0 ? args.guard : env_guard()) {}

  long long guard() const { return guard_; }
  int threads() const { return args_.threads; }
  EnumOptions enum_options() const { return {guard_, args_.threads, false}; }

  CategoryPtr category() {
    if (!category_) {
      if (args_.cat_file.empty()) throw Error(ErrorKind::usage, "--cat is required");
      category_ = workspace_.load_category(args_.cat_file);
      category_name_ = stem_of(args_.cat_file);
    }
    return category_;
  }

  // Resolves a functor spec: "hom" builds the hom-functor at --A with the
  // requested variance; anything else is a file path. An empty spec falls back
  // to --functor.
  FunctorPtr functor(const std::string& spec, const char* flag) {
    std::string choice = spec.empty() ? args_.functor_file : spec;
    if (choice.empty()) {
      throw Error(ErrorKind::usage,
                  std::string(flag) + " (or --functor) is required for this verb");
    }
    if (choice == "hom") {
      if (args_.A.empty()) {
        throw Error(ErrorKind::usage, "--A is required with the 'hom' functor spec");
      }
      return std::make_shared<const SetValuedFunctor>(
          hom_functor(category(), args_.A, parse_variance(args_.variance)));
    }
    category();
    return workspace_.load_functor(choice, category_name_);
  }

  Workspace& workspace() { return workspace_; }
  const Args& args() const { return args_; }

 private:
  Args args_;
  long long guard_;
  Workspace workspace_;
  CategoryPtr category_;
  std::string category_name_;
};

}  // namespace

CategoryPtr Workspace::load_category(const std::string& path) {
  std::string name = stem_of(path);
  if (categories.count(name)) {
    throw Error(ErrorKind::usage, "category name '" + name + "' already loaded");
  }
  Loaded<FiniteCategory> loaded = load_category_file(path);
  if (!loaded.value) {
    throw MathFailure{json{{"verb", "load"},
                           {"file", path},
                           {"category_report", report_to_json(loaded.report)},
                           {"ok", false}}};
  }
  auto ptr = std::make_shared<const FiniteCategory>(std::move(*loaded.value));
  categories.emplace(name, ptr);
  return ptr;
}

FunctorPtr Workspace::load_functor(const std::string& path, const std::string& category_name) {
  auto cat = categories.find(category_name);
  if (cat == categories.end()) {
    throw Error(ErrorKind::usage,
                "functor '" + path + "' references category '" + category_name +
                    "' which is not loaded");
  }
  std::string name = stem_of(path);
  if (functors.count(name)) {
    throw Error(ErrorKind::usage, "functor name '" + name + "' already loaded");
  }
  Loaded<SetValuedFunctor> loaded = load_functor_file(path, cat->second);
  if (!loaded.value) {
    throw MathFailure{json{{"verb", "load"},
                           {"file", path},
                           {"functor_report", report_to_json(loaded.report)},
                           {"ok", false}}};
  }
  auto ptr = std::make_shared<const SetValuedFunctor>(std::move(*loaded.value));
  functors.emplace(name, Workspace::NamedFunctor{ptr, category_name});
  return ptr;
}

namespace {

// ---- verb handlers ---------------------------------------------------------

struct VerbResult {
  std::string text;  // already-serialized report or DOT
  int exit_code = 0;
};

VerbResult finish(json report, bool ok) {
  report["ok"] = ok;
  return {canonical_dump(report), ok ? 0 : 1};
}

VerbResult verb_check(Session& s) {
  // check reports law violations instead of aborting on them, so it loads
  // manually rather than through the workspace.
  const Args& args = s.args();
  if (args.cat_file.empty()) throw Error(ErrorKind::usage, "--cat is required");
  Loaded<FiniteCategory> cat = load_category_file(args.cat_file);

  json report{{"verb", "check"},
              {"category", args.cat_file},
              {"category_report", report_to_json(cat.report)},
              {"guards", guards_json(s.guard())}};
  bool ok = cat.report.ok();

  if (!args.functor_file.empty()) {
    report["functor"] = args.functor_file;
    if (!cat.value) {
      report["functor_skipped"] = "category fails its laws";
    } else {
      auto base = std::make_shared<const FiniteCategory>(std::move(*cat.value));
      Loaded<SetValuedFunctor> f = load_functor_file(args.functor_file, base);
      report["functor_report"] = report_to_json(f.report);
      ok = ok && f.report.ok();
    }
  }
  return finish(std::move(report), ok);
}

VerbResult verb_nat_enum(Session& s) {
  FunctorPtr F = s.functor(s.args().F, "--F");
  FunctorPtr G = s.functor(s.args().G, "--G");
  std::vector<NaturalTransformation> all = enumerate_nat_trans(F, G, s.enum_options());

  json list = json::array();
  for (const auto& tau : all) list.push_back(transformation_to_json(tau));
  json report{{"verb", "nat-enum"},
              {"count", all.size()},
              {"transformations", std::move(list)},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), true);
}

VerbResult verb_yoneda(Session& s) {
  const Args& args = s.args();
  if (args.A.empty()) throw Error(ErrorKind::usage, "--A is required");
  FunctorPtr F = s.functor(args.F, "--F");
  BijectionCertificate cert = verify_yoneda_bijection(s.category(), args.A, F, s.enum_options());

  json report{{"verb", "yoneda"},
              {"A", args.A},
              {"nat_count", cert.nat_count},
              {"F_A", cert.f_a_count},
              {"bijection", cert.ok()},
              {"injective", cert.injective},
              {"surjective", cert.surjective},
              {"round_trips", cert.forward_after_backward_is_identity &&
                                  cert.backward_after_forward_is_identity},
              {"guards", guards_json(s.guard())}};
  if (!cert.ok()) report["counterexample"] = cert.counterexample;
  return finish(std::move(report), cert.ok());
}

VerbResult verb_image(Session& s) {
  const Args& args = s.args();
  if (args.A.empty()) throw Error(ErrorKind::usage, "--A is required");
  CategoryPtr cat = s.category();
  FunctorPtr F = s.functor(args.F, "--F");
  int a = cat->require_object(args.A);
  if (!args.X.empty()) cat->require_object(args.X);

  json images = json::object();
  for (int x = 0; x < cat->object_count(); ++x) {
    if (!args.X.empty() && cat->object_id(x) != args.X) continue;
    for (int f : cat->hom(x, a)) {
      images[cat->morphism(f).id] = image_of_morphism(*F, cat->morphism(f).id);
    }
  }

  json report{{"verb", "image"},
              {"A", args.A},
              {"images", std::move(images)},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), true);
}

VerbResult verb_im_check(Session& s) {
  const Args& args = s.args();
  if (args.A.empty()) throw Error(ErrorKind::usage, "--A is required");
  CategoryPtr cat = s.category();
  FunctorPtr F = s.functor(args.F, "--F");
  int a = cat->require_object(args.A);

  ImOracle oracle(cat, args.A, F, s.enum_options());
  bool all_equal = true;
  json per_morphism = json::object();
  for (int x = 0; x < cat->object_count(); ++x) {
    for (int f : cat->hom(x, a)) {
      const MorphismId& id = cat->morphism(f).id;
      std::vector<ElementId> direct = image_of_morphism(*F, id);
      std::vector<ElementId> brute = oracle.image_of(id);
      bool equal = direct == brute;
      all_equal = all_equal && equal;
      per_morphism[id] = json{{"image", direct}, {"oracle", brute}, {"equal", equal}};
    }
  }

  ValidationReport naturality = im_naturality_check(cat, args.A, *F, s.threads());

  json report{{"verb", "im-check"},
              {"A", args.A},
              {"transformation_count", oracle.transformation_count()},
              {"per_morphism", std::move(per_morphism)},
              {"naturality", report_to_json(naturality)},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), all_equal && naturality.ok());
}

VerbResult verb_coarse(Session& s) {
  const Args& args = s.args();
  if (args.X.empty() || args.A.empty()) {
    throw Error(ErrorKind::usage, "--X and --A are required");
  }
  FunctorPtr F = s.functor(args.F, "--F");
  auto classes = coarse_classes(s.category(), args.X, args.A, *F);

  json report{{"verb", "coarse"},
              {"X", args.X},
              {"A", args.A},
              {"classes", classes},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), true);
}

VerbResult verb_depends(Session& s) {
  const Args& args = s.args();
  if (args.falpha.empty()) throw Error(ErrorKind::usage, "--falpha is required");
  CategoryPtr cat = s.category();
  FunctorPtr G = s.functor(args.F, "--F");

  int fa = cat->require_morphism(args.falpha);
  const ObjectId X = cat->object_id(cat->morphism(fa).dom);
  if (!args.X.empty() && args.X != X) {
    throw Error(ErrorKind::usage, "--X disagrees with dom(" + args.falpha + ")");
  }

  DependenceQuery q{X, args.falpha, G};
  std::vector<ElementId> closed = depends_set(q);

  bool all_agree = true;
  json per_beta = json::object();
  auto check_beta = [&](const ElementId& beta) {
    bool in_set = std::binary_search(closed.begin(), closed.end(), beta);
    bool oracle = depends_oracle(q, beta);
    bool agree = in_set == oracle;
    all_agree = all_agree && agree;
    per_beta[beta] = json{{"closed_form", in_set}, {"oracle", oracle}, {"agree", agree}};
  };
  if (!args.beta.empty()) {
    check_beta(args.beta);
  } else {
    for (const ElementId& beta : G->elements(cat->require_object(X))) check_beta(beta);
  }

  json report{{"verb", "depends"},
              {"X", X},
              {"A", cat->object_id(cat->morphism(fa).cod)},
              {"f_alpha", args.falpha},
              {"depends_set", closed},
              {"per_beta", std::move(per_beta)},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), all_agree);
}

VerbResult verb_preorder(Session& s) {
  const Args& args = s.args();
  if (args.X.empty() || args.A.empty()) {
    throw Error(ErrorKind::usage, "--X and --A are required");
  }
  Proset p = build_L_preorder(s.category(), args.X, args.A);
  json report{{"verb", "preorder"},
              {"X", args.X},
              {"A", args.A},
              {"preorder", proset_to_json(p)},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), true);
}

VerbResult verb_quotient(Session& s) {
  const Args& args = s.args();
  if (args.X.empty() || args.A.empty()) {
    throw Error(ErrorKind::usage, "--X and --A are required");
  }
  Proset p = build_L_preorder(s.category(), args.X, args.A);
  PosetQuotient q = quotient_to_poset(p);

  json projection = json::object();
  for (int i = 0; i < p.size(); ++i) {
    projection[p.carrier()[i]] = q.poset.carrier()[q.projection[i]];
  }
  json report{{"verb", "quotient"},
              {"X", args.X},
              {"A", args.A},
              {"preorder", proset_to_json(p)},
              {"poset", proset_to_json(q.poset)},
              {"projection", std::move(projection)},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), true);
}

VerbResult verb_alexandroff(Session& s) {
  const Args& args = s.args();
  if (args.X.empty() || args.A.empty()) {
    throw Error(ErrorKind::usage, "--X and --A are required");
  }
  Proset p = build_L_preorder(s.category(), args.X, args.A);
  FiniteTopology t = alexandroff_opens(p);
  json report{{"verb", "alexandroff"},
              {"X", args.X},
              {"A", args.A},
              {"topology", topology_to_json(t)},
              {"open_count", t.opens.size()},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), true);
}

VerbResult verb_stratify(Session& s) {
  const Args& args = s.args();
  if (args.X.empty() || args.A.empty()) {
    throw Error(ErrorKind::usage, "--X and --A are required");
  }
  FunctorPtr F = s.functor(args.F, "--F");
  StratificationMap strat = stratification_map(s.category(), args.X, args.A, *F);
  ValidationReport monotone = validate_stratification(strat);

  if (args.out_format == "dot") {
    return {dot_stratification(strat), monotone.ok() ? 0 : 1};
  }
  json map = json::object();
  for (int i = 0; i < strat.source.size(); ++i) {
    map[strat.source.carrier()[i]] = strat.target.carrier()[strat.map[i]];
  }
  json report{{"verb", "stratify"},
              {"X", args.X},
              {"A", args.A},
              {"source", proset_to_json(strat.source)},
              {"target_size", strat.target.size()},
              {"map", std::move(map)},
              {"monotone", report_to_json(monotone)},
              {"guards", guards_json(s.guard())}};
  return finish(std::move(report), monotone.ok());
}

VerbResult verb_export_dot(Session& s) {
  const Args& args = s.args();
  if (args.X.empty() || args.A.empty()) {
    throw Error(ErrorKind::usage, "--X and --A are required");
  }
  if (!args.F.empty() || !args.functor_file.empty()) {
    FunctorPtr F = s.functor(args.F, "--F");
    StratificationMap strat = stratification_map(s.category(), args.X, args.A, *F);
    return {dot_stratification(strat), 0};
  }
  Proset p = build_L_preorder(s.category(), args.X, args.A);
  PosetQuotient q = quotient_to_poset(p);
  return {dot_hasse(q.poset), 0};
}

}  // namespace

int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-category computation engine"};
  app.require_subcommand(1);

  Args a;
  std::map<std::string, std::function<VerbResult(Session&)>> handlers{
      {"check", verb_check},         {"nat-enum", verb_nat_enum},
      {"yoneda", verb_yoneda},       {"image", verb_image},
      {"im-check", verb_im_check},   {"coarse", verb_coarse},
      {"depends", verb_depends},     {"preorder", verb_preorder},
      {"quotient", verb_quotient},   {"alexandroff", verb_alexandroff},
      {"stratify", verb_stratify},   {"export-dot", verb_export_dot},
  };
  std::map<std::string, std::string> descriptions{
      {"check", "validate a category (and optionally a functor) file"},
      {"nat-enum", "enumerate all natural transformations F ⇒ G"},
      {"yoneda", "verify the Yoneda bijection Nat(h^A, F) ≅ F(A)"},
      {"image", "images Im(f) = F(f)(F(A)) for every f into A"},
      {"im-check", "compare Im against the all-transformations oracle"},
      {"coarse", "partition [X,A] by equality of Im"},
      {"depends", "Thom dependence: closed form vs quantifier oracle"},
      {"preorder", "the ≤_L preorder on [X,A]"},
      {"quotient", "poset quotient of the ≤_L preorder"},
      {"alexandroff", "Alexandroff topology of the ≤_L preorder"},
      {"stratify", "the monotone map Im: ([X,A], ≤_L) → (Sub F(X), ⊆)"},
      {"export-dot", "DOT diagrams (Hasse of the quotient, or the stratification)"},
  };

  std::string verb;
  for (auto& [name, handler] : handlers) {
    CLI::App* sub = app.add_subcommand(name, descriptions[name]);
    sub->add_option("--cat", a.cat_file, "category JSON file");
    sub->add_option("--functor", a.functor_file, "functor JSON file");
    sub->add_option("--F", a.F, "functor spec: 'hom' or a file path");
    if (name == "nat-enum") sub->add_option("--G", a.G, "target functor spec");
    sub->add_option("--A", a.A, "object A");
    sub->add_option("--X", a.X, "object X");
    sub->add_option("--variance", a.variance, "co | contra (for 'hom' specs)");
    if (name == "depends") {
      sub->add_option("--falpha", a.falpha, "morphism f_alpha in [X,A]");
      sub->add_option("--beta", a.beta, "element of G(X) to test");
    }
    sub->add_option("--guard", a.guard, "search-space guard override");
    sub->add_option("--threads", a.threads, "worker threads (0 = all)");
    sub->add_option("--out", a.out_format, "json | dot");
    sub->callback([&verb, name = name]() { verb = name; });
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    json report{{"error", {{"kind", "usage"}, {"message", e.what()}}}};
    out << canonical_dump(report);
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Session session(a);
    VerbResult result = handlers.at(verb)(session);
    out << result.text;
    return result.exit_code;
  } catch (const MathFailure& failure) {
    out << canonical_dump(failure.report);
    err << "mathematical check failed\n";
    return 1;
  } catch (const Error& e) {
    json report{{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}};
    out << canonical_dump(report);
    err << error_kind_name(e.kind()) << " error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fincat
