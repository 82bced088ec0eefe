#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fincat/json_io.hpp"

namespace fincat {

// Everything loaded during one CLI invocation, keyed by file stem. Names are
// unique and every functor is bound to the category it was loaded against.
struct Workspace {
  struct NamedFunctor {
    FunctorPtr functor;
    std::string category;
  };

  std::map<std::string, CategoryPtr> categories;
  std::map<std::string, NamedFunctor> functors;

  // Loads and validates; law violations surface as a math failure (exit 1),
  // schema problems as Error (exit 2). Returns the registered value.
  CategoryPtr load_category(const std::string& path);
  FunctorPtr load_functor(const std::string& path, const std::string& category_name);
};

// Verbs: check, nat-enum, yoneda, image, im-check, coarse, depends, preorder,
// quotient, alexandroff, stratify, export-dot. Reports go to `out` as canonical
// JSON (DOT text for the dot outputs). Exit codes: 0 all checks passed, 1 a
// mathematical check failed (counterexample in the report), 2 usage, schema or
// guard error. The YONEDA_GUARD environment variable overrides the default
// search-space guard; --guard overrides both.
int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fincat
