#pragma once

#include "hurry/env.hpp"
#include "hurry/term.hpp"

namespace hurry {

struct ReductionFlags {
  bool beta = true;
  bool delta = true;
  bool iota = true;
  bool zeta = true;

  static ReductionFlags all() { return {}; }
  static ReductionFlags no_delta() { return {true, false, true, true}; }
};

/// Weak-head normal form. A fixpoint unfolds only when its structural argument
/// reduces to a constructor application. When a transparent constant whose body
/// is a fixpoint unfolds, recursive occurrences are replaced by the constant
/// itself so that results stay readable.
Term whnf(const GlobalEnv& env, const LocalContext& ctx, const Term& t,
          ReductionFlags flags = ReductionFlags::all());

/// Full beta-delta-iota-zeta normal form (the `Eval compute` strategy).
Term normalize(const GlobalEnv& env, const Term& t);
Term normalize(const GlobalEnv& env, const LocalContext& ctx, const Term& t);

/// The `simpl` strategy: unfold fixpoint-backed and match-backed constants only
/// when that exposes something other than a stuck match or fixpoint, then
/// descend into subterms.
Term simpl(const GlobalEnv& env, const LocalContext& ctx, const Term& t);

/// Head is a constructor (possibly applied).
bool is_constructor_app(const Term& t);

/// If `t` is Construct applied to args, the constructor and its arguments.
struct ConstructorView {
  std::string ind;
  int ordinal = 0;
  std::vector<Term> args;  // parameters included
};
std::optional<ConstructorView> as_constructor_app(const Term& t);

/// Decompose `I params indices` (after weak-head reduction by the caller).
struct InductiveView {
  std::string ind;
  std::vector<Term> params;
  std::vector<Term> indices;
};
std::optional<InductiveView> as_inductive_app(const GlobalEnv& env, const Term& t);

/// Reduce a natural-number numeral spine S (... (S O)) to its value.
std::optional<unsigned long long> as_numeral(const Term& t);
Term make_numeral(unsigned long long n);

}  // namespace hurry
