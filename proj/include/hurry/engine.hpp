#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hurry/elab.hpp"
#include "hurry/env.hpp"
#include "hurry/syntax.hpp"
#include "hurry/term.hpp"

namespace hurry {

/// An interactive proof: the statement, the partial proof term (the root hole
/// and everything assigned below it) and the open goals in display order.
/// Oracle constants created by decision procedures live in `env` until Qed.
struct ProofState {
  GlobalEnv env;
  std::string name;
  std::string keyword = "Theorem";
  Term statement;
  MetaStore metas;
  int root = 0;
  std::vector<int> goals;
  int oracle_count = 0;
};

ProofState start_proof(const GlobalEnv& env, const std::string& name, const Term& statement);

/// Run a tactic sentence on the first goal. Atomic: on failure the state is
/// left untouched and the error is rethrown.
void run_tactic(ProofState& st, const Tactic& tac);

/// "N subgoals" display of the open goals, or "Proof completed."
std::string render_goals(const ProofState& st);
/// One goal: hypotheses, the bar and the conclusion.
std::string render_goal(const ProofState& st, int goal);

/// Hypotheses and conclusion of a goal in printable form.
struct GoalView {
  std::vector<std::pair<std::string, std::string>> hyps;
  std::string conclusion;
};
GoalView view_goal(const ProofState& st, int goal);

struct QedResult {
  GlobalEnv env;
  std::string message;
  std::vector<std::string> oracles;
};
/// Close the proof: the kernel re-checks the whole term before the theorem
/// is admitted.
QedResult qed(const ProofState& st, bool transparent = false);

}  // namespace hurry
