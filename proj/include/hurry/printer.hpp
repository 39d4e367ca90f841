#pragma once

#include <string>
#include <vector>

#include "hurry/env.hpp"
#include "hurry/term.hpp"

namespace hurry {

/// Render a term in surface syntax: notations folded, numerals re-sugared,
/// implicit arguments hidden, binders renamed away from names in scope.
std::string print_term(const GlobalEnv& env, const LocalContext& ctx, const Term& t);
std::string print_term(const GlobalEnv& env, const Term& t);

/// Same, with the names of the enclosing binders given directly (innermost last).
std::string print_term_in(const GlobalEnv& env, const std::vector<std::string>& names,
                          const Term& t);

std::string print_sort(Sort s);

}  // namespace hurry
