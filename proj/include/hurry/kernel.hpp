#pragma once

#include <set>
#include <string>
#include <vector>

#include "hurry/env.hpp"
#include "hurry/term.hpp"
#include "hurry/typing.hpp"

namespace hurry {

/// Admit an inductive type: checks names, typing of parameters, arity and
/// constructors, strict positivity, then registers the type, its constructors
/// and the derived `<name>_ind` scheme.
GlobalEnv check_inductive(const GlobalEnv& env, InductiveDecl decl);

struct Scheme {
  Term statement;
  Term proof;
};

/// Induction principle of an admitted inductive: dependent motive for data
/// types, a motive over the indices only for inductive predicates.
Scheme derive_induction(const GlobalEnv& env, const InductiveDecl& decl);

/// Type-check and register a constant. `body` is optional (axioms, oracles).
GlobalEnv add_constant(const GlobalEnv& env, ConstantDecl decl);

/// Re-typecheck every constant body from scratch against its stated type.
/// Returns the names that fail.
std::vector<std::string> recheck_environment(const GlobalEnv& env);

/// `base` if unused, otherwise the next numbered variant (H, H0, H1, ...;
/// x0 continues as x1, x2, ...).
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

/// Conventional name for a variable of the given type: H for proofs, the
/// lowercased initial of the type's head otherwise.
std::string default_name(const GlobalEnv& env, const LocalContext& ctx, const Term& type);

}  // namespace hurry
