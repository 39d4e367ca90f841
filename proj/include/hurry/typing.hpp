#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hurry/env.hpp"
#include "hurry/term.hpp"

namespace hurry {

/// Types of metavariables, supplied by whoever owns them (elaborator, proof
/// engine). The kernel proper never sees metas; this hook lets the same
/// checker type partial terms.
using MetaTyper = std::function<Term(const Term& meta, const LocalContext& ctx)>;

Term infer_type(const GlobalEnv& env, const LocalContext& ctx, const Term& t,
                const MetaTyper* metas = nullptr);

/// Check `t` against `expected` (with cumulativity); throws TypeMismatch.
void check_type(const GlobalEnv& env, const LocalContext& ctx, const Term& t,
                const Term& expected, const MetaTyper* metas = nullptr);

/// The sort a type lives in; throws NotASort.
Sort infer_sort(const GlobalEnv& env, const LocalContext& ctx, const Term& t,
                const MetaTyper* metas = nullptr);

/// Sort of the product `forall x : A, B` given sort(A) and sort(B).
Sort product_sort(Sort domain, Sort codomain);

/// Definitional equality. With `cumulative`, decides t <= u instead.
bool convertible(const GlobalEnv& env, const LocalContext& ctx, const Term& t, const Term& u,
                 bool cumulative = false);

/// Structural recursion check for a Fix node (closed in its own context).
bool guard_check(const GlobalEnv& env, const Term& fix);

struct ProofCheck {
  bool ok = false;
  std::string message;
  std::vector<std::string> oracles;  // oracle constants the proof depends on
};

/// Type the closed `proof` and compare with `statement`.
ProofCheck check_proof(const GlobalEnv& env, const Term& proof, const Term& statement);

/// Oracle constants referenced by `t`, transitively through transparent
/// definitions and recorded theorem dependencies, in first-use order.
std::vector<std::string> collect_oracles(const GlobalEnv& env, const Term& t);

}  // namespace hurry
