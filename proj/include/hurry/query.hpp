#pragma once

#include <string>
#include <vector>

#include "hurry/env.hpp"
#include "hurry/syntax.hpp"
#include "hurry/term.hpp"

namespace hurry {

struct QueryHit {
  std::string name;
  Term statement;
};

/// Lemmas and constructors whose conclusion is headed by `ident`.
std::vector<QueryHit> search(const GlobalEnv& env, const std::string& ident);

/// Conclusions matching the pattern; `_` matches any subterm.
std::vector<QueryHit> search_pattern(const GlobalEnv& env, const ExprPtr& pattern);

/// Equational conclusions with one side matching the pattern.
std::vector<QueryHit> search_rewrite(const GlobalEnv& env, const ExprPtr& pattern);

/// "name : statement" per line.
std::string format_hits(const GlobalEnv& env, const std::vector<QueryHit>& hits);

}  // namespace hurry
