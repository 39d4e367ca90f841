#include "hurry/engine.hpp"

#include <sstream>

#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"
#include "hurry/tactics.hpp"
#include "hurry/typing.hpp"

namespace hurry {

using namespace tactics;

ProofState start_proof(const GlobalEnv& env, const std::string& name, const Term& statement) {
  ProofState st;
  st.env = env;
  st.name = name;
  st.statement = statement;
  st.metas.fresh({}, statement, name);
  st.root = 0;
  st.goals = {0};
  return st;
}

namespace {

constexpr int kRepeatLimit = 200;

Goals run(ProofState& st, const Tactic& t, int g);

Goals run_all(ProofState& st, const Tactic& t, const Goals& gs) {
  Goals out;
  for (int g : gs) {
    if (st.metas.solved(g)) continue;
    auto r = run(st, t, g);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

std::optional<std::string> opt_name(const Tactic& t) {
  if (t.names.empty()) return std::nullopt;
  return t.names.front();
}

Goals run_basic(ProofState& st, const Tactic& t, int g) {
  switch (t.kind) {
    case TacticKind::Intro:
      return {intro(st, g, opt_name(t))};
    case TacticKind::Intros: {
      if (t.names.empty()) return {intros(st, g)};
      int cur = g;
      for (const auto& n : t.names) {
        cur = intro(st, cur, n == "_" || n == "?" ? std::nullopt : std::optional<std::string>(n));
      }
      return {cur};
    }
    case TacticKind::Exact:
      return exact(st, g, t.exprs.front());
    case TacticKind::Assumption:
      return assumption(st, g);
    case TacticKind::Apply: {
      Elaborated f = elaborate_in(st, g, t.exprs.front());
      std::vector<ExprPtr> with(t.exprs.begin() + 1, t.exprs.end());
      return apply_term(st, g, f.term, f.type, with);
    }
    case TacticKind::Split:
      return constructor(st, g, "split", {});
    case TacticKind::Left:
      return constructor(st, g, "left", {});
    case TacticKind::Right:
      return constructor(st, g, "right", {});
    case TacticKind::Exists:
      return constructor(st, g, "exists", t.exprs);
    case TacticKind::Elim:
      return elim(st, g, t.exprs.front());
    case TacticKind::Case:
      return case_tac(st, g, t.exprs.front());
    case TacticKind::Destruct:
      return destruct(st, g, t.exprs.front(), t.pattern);
    case TacticKind::Rewrite:
      return rewrite(st, g, t.exprs.front(), t.backwards, opt_name(t));
    case TacticKind::Reflexivity:
      return reflexivity(st, g);
    case TacticKind::Symmetry:
      return symmetry(st, g);
    case TacticKind::Assert:
      return assert_tac(st, g, t.exprs.front(), opt_name(t));
    case TacticKind::Simpl:
      return simpl_tac(st, g, opt_name(t));
    case TacticKind::Ring:
      return ring(st, g);
    case TacticKind::Omega:
      return omega(st, g);
    case TacticKind::Auto: {
      bool arith = false;
      for (const auto& n : t.names) arith = arith || n == "arith";
      return auto_tac(st, g, 5, arith);
    }
    case TacticKind::Trivial: {
      bool arith = false;
      for (const auto& n : t.names) arith = arith || n == "arith";
      return auto_tac(st, g, 1, arith);
    }
    case TacticKind::Intuition:
      return intuition(st, g);
    case TacticKind::Discriminate:
      return discriminate(st, g, opt_name(t));
    case TacticKind::Injection:
      return injection(st, g, t.names.front());
    case TacticKind::Inversion:
      return inversion(st, g, t.names.front());
    case TacticKind::Clear:
      return clear(st, g, t.names);
    case TacticKind::Subst:
      return subst(st, g, t.names);
    case TacticKind::Unfold:
      return unfold(st, g, t.names);
    case TacticKind::Exfalso:
      return exfalso(st, g);
    case TacticKind::Contradiction:
      return contradiction(st, g);
    case TacticKind::Seq:
    case TacticKind::Try:
    case TacticKind::Repeat:
      break;
  }
  tactic_error("unsupported tactic");
}

Goals run_repeat(ProofState& st, const Tactic& child, int g, int& budget) {
  if (budget-- <= 0) return {g};
  ProofState saved = st;
  Goals gs;
  try {
    gs = run(st, child, g);
  } catch (const Error&) {
    st = std::move(saved);
    return {g};
  }
  if (gs.size() == 1 && gs.front() != g &&
      goal_type(st, gs.front()) == goal_type(saved, g) &&
      goal_ctx(st, gs.front()).size() == goal_ctx(saved, g).size()) {
    bool same = true;
    const auto& a = goal_ctx(st, gs.front()).entries();
    const auto& b = goal_ctx(saved, g).entries();
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[i].type == b[i].type;
    if (same) return gs;
  }
  Goals out;
  for (int x : gs) {
    if (st.metas.solved(x)) continue;
    auto r = run_repeat(st, child, x, budget);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Goals run(ProofState& st, const Tactic& t, int g) {
  switch (t.kind) {
    case TacticKind::Seq: {
      Goals first = run(st, *t.children[0], g);
      return run_all(st, *t.children[1], first);
    }
    case TacticKind::Try: {
      ProofState saved = st;
      try {
        return run(st, *t.children[0], g);
      } catch (const Error&) {
        st = std::move(saved);
        return {g};
      }
    }
    case TacticKind::Repeat: {
      int budget = kRepeatLimit;
      return run_repeat(st, *t.children[0], g, budget);
    }
    default:
      return run_basic(st, t, g);
  }
}

}  // namespace

void run_tactic(ProofState& st, const Tactic& tac) {
  if (st.goals.empty()) {
    throw Error(ErrorKind::TacticFailure, "No more subgoals.", tac.pos);
  }
  ProofState work = st;
  const int g = work.goals.front();
  try {
    Goals produced = run(work, tac, g);
    Goals next;
    for (int x : produced) {
      if (!work.metas.solved(x)) next.push_back(x);
    }
    for (std::size_t i = 1; i < work.goals.size(); ++i) {
      if (!work.metas.solved(work.goals[i])) next.push_back(work.goals[i]);
    }
    work.goals = std::move(next);
  } catch (Error& e) {
    if (!e.position().valid()) e.set_position(tac.pos);
    throw;
  }
  st = std::move(work);
}

GoalView view_goal(const ProofState& st, int goal) {
  GoalView v;
  const LocalContext& ctx = goal_ctx(st, goal);
  const auto& es = ctx.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    LocalContext pre = ctx.prefix(i);
    std::string ty = print_term(st.env, pre, st.metas.instantiate(es[i].type));
    if (es[i].body) ty = print_term(st.env, pre, st.metas.instantiate(*es[i].body)) + " : " + ty;
    v.hyps.emplace_back(es[i].name, ty);
  }
  v.conclusion = print_term(st.env, ctx, goal_type(st, goal));
  return v;
}

std::string render_goal(const ProofState& st, int goal) {
  GoalView v = view_goal(st, goal);
  std::ostringstream out;
  out << "  \n";
  for (const auto& [n, ty] : v.hyps) out << "  " << n << " : " << ty << "\n";
  out << "  ============================\n";
  out << "   " << v.conclusion << "\n";
  return out.str();
}

std::string render_goals(const ProofState& st) {
  if (st.goals.empty()) return "Proof completed.\n";
  std::ostringstream out;
  const std::size_t n = st.goals.size();
  out << n << (n == 1 ? " subgoal" : " subgoals") << "\n";
  out << render_goal(st, st.goals.front());
  for (std::size_t i = 1; i < n; ++i) {
    const int g = st.goals[i];
    out << "\nsubgoal " << (i + 1) << " is:\n";
    out << " " << print_term(st.env, goal_ctx(st, g), goal_type(st, g)) << "\n";
  }
  return out.str();
}

QedResult qed(const ProofState& st, bool transparent) {
  if (!st.goals.empty()) {
    throw Error(ErrorKind::OpenGoalsRemain,
                "Attempt to save an incomplete proof (" + std::to_string(st.goals.size()) +
                    (st.goals.size() == 1 ? " goal" : " goals") + " remaining).");
  }
  Term proof = st.metas.instantiate(mk_meta(st.root, {}));
  if (proof.has_meta()) {
    throw Error(ErrorKind::OpenGoalsRemain, "Attempt to save a proof with unresolved holes.");
  }
  ProofCheck chk = check_proof(st.env, proof, st.statement);
  if (!chk.ok) {
    throw Error(ErrorKind::KernelRejection, "The kernel rejected the proof: " + chk.message);
  }
  ConstantDecl d;
  d.name = st.name;
  d.type = st.statement;
  d.body = proof;
  d.kind = ConstantKind::Theorem;
  d.transparent = transparent;
  d.oracle_deps = chk.oracles;
  QedResult r;
  r.env = st.env;
  r.env.add_unchecked(std::move(d));
  r.oracles = chk.oracles;
  r.message = st.name + " is defined";
  return r;
}

}  // namespace hurry
