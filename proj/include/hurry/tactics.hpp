#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hurry/engine.hpp"

namespace hurry::tactics {

using Goals = std::vector<int>;

[[noreturn]] void tactic_error(const std::string& message,
                               ErrorKind kind = ErrorKind::TacticFailure);

// ------------------------------------------------------------------ goals

const LocalContext& goal_ctx(const ProofState& st, int g);
/// Conclusion with solved holes substituted.
Term goal_type(const ProofState& st, int g);
/// New goal over `ctx`; returns its hole id.
int new_goal(ProofState& st, const LocalContext& ctx, const Term& type,
             const std::string& label = {});
/// Use of a goal's hole in its own context.
Term goal_term(const ProofState& st, int g);
void close_goal(ProofState& st, int g, const Term& proof);

std::set<std::string> names_in(const LocalContext& ctx);
/// Position of a hypothesis, or NoSuchHypothesis.
std::size_t find_hyp(const LocalContext& ctx, const std::string& name);
/// de Bruijn index of a hypothesis position in `ctx`.
inline int hyp_index(const LocalContext& ctx, std::size_t position) {
  return ctx.index_of_position(position);
}

// ------------------------------------------------- structural operations

/// `t` under one extra binder, every occurrence of `u` replaced by that binder.
Term abstract_occurrences(const Term& t, const Term& u);
/// Abstract several terms in order; the first becomes the outermost binder.
Term abstract_terms(const Term& t, const std::vector<Term>& us);

/// Introduce one product (unfolding definitions if needed); the hypothesis
/// gets `name` or a fresh default. Returns the new goal.
int intro(ProofState& st, int g, const std::optional<std::string>& name = std::nullopt,
          std::string* chosen = nullptr);
/// Introduce while the conclusion is syntactically a product.
int intros(ProofState& st, int g);
/// Move the hypotheses from `position` on back into the conclusion.
int revert_from(ProofState& st, int g, std::size_t position,
                std::vector<std::string>* names = nullptr);
int clear_hyp(ProofState& st, int g, std::size_t position);
/// Same hole shape with a convertible context / conclusion.
int replace_goal(ProofState& st, int g, const LocalContext& ctx, const Term& type);
/// Permute the context: new position j holds old position order[j].
int reorder(ProofState& st, int g, const std::vector<std::size_t>& order);
LocalContext with_hyp_type(const LocalContext& ctx, std::size_t position, const Term& type);

/// Elaborate a term inside a goal; holes it leaves are reported as `open`.
Elaborated elaborate_in(ProofState& st, int g, const ExprPtr& e,
                        const std::optional<Term>& expected = std::nullopt);

/// Refine the goal with `f` applied to as many fresh holes as needed for its
/// conclusion to unify with the goal; `with` fills undetermined dependent
/// arguments in order.
Goals apply_term(ProofState& st, int g, const Term& f, const Term& ftype,
                 const std::vector<ExprPtr>& with = {}, std::size_t first_open_meta = 0);

Term false_elim(const Term& proof_of_false, const Term& goal);

// ----------------------------------------------------------------- tactics

Goals exact(ProofState& st, int g, const ExprPtr& e);
Goals assumption(ProofState& st, int g);
Goals constructor(ProofState& st, int g, const std::string& which, const std::vector<ExprPtr>& with);
Goals reflexivity(ProofState& st, int g);
Goals symmetry(ProofState& st, int g);
Goals exfalso(ProofState& st, int g);
Goals contradiction(ProofState& st, int g);
Goals assert_tac(ProofState& st, int g, const ExprPtr& e, const std::optional<std::string>& name);
Goals simpl_tac(ProofState& st, int g, const std::optional<std::string>& hyp);
Goals unfold(ProofState& st, int g, const std::vector<std::string>& names);
Goals clear(ProofState& st, int g, const std::vector<std::string>& names);

Goals elim(ProofState& st, int g, const ExprPtr& e);
Goals case_tac(ProofState& st, int g, const ExprPtr& e);
Goals destruct(ProofState& st, int g, const ExprPtr& e, const std::optional<IntroPattern>& pat);
/// Case analysis on a term already in the goal's context.
Goals case_term(ProofState& st, int g, const Term& t, const Term& type);

Goals rewrite(ProofState& st, int g, const ExprPtr& e, bool backwards,
              const std::optional<std::string>& hyp);
/// Rewrite the conclusion with an equation proof `eq : l = r` over the goal context.
Goals rewrite_with(ProofState& st, int g, const Term& eq, const Term& eq_type, bool backwards);
Goals subst(ProofState& st, int g, const std::vector<std::string>& names);

Goals discriminate(ProofState& st, int g, const std::optional<std::string>& hyp);
Goals injection(ProofState& st, int g, const std::string& hyp);
Goals inversion(ProofState& st, int g, const std::string& hyp);

Goals intuition(ProofState& st, int g);
Goals auto_tac(ProofState& st, int g, int depth, bool arith);

Goals ring(ProofState& st, int g);
Goals omega(ProofState& st, int g);

/// Register an oracle constant for a goal closed by a decision procedure:
/// `statement` is closed over the goal context, and the goal is proved by
/// applying the constant to the context.
void close_by_oracle(ProofState& st, int g, const std::string& procedure,
                     const std::string& certificate);

}  // namespace hurry::tactics
