#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/reduction.hpp"
#include "hurry/tactics.hpp"
#include "hurry/typing.hpp"

namespace hurry::tactics {

namespace {

// ------------------------------------------------------------------- auto

std::vector<std::string> auto_hints(const ProofState& st, bool arith) {
  std::vector<std::string> base = {"I", "conj", "or_introl", "or_intror", "eq_refl", "le_n", "le_S"};
  if (arith) {
    for (const char* n : {"le_n_S", "le_plus_l", "le_plus_r", "le_O_n", "plus_le_compat",
                          "plus_le_compat_l", "plus_le_compat_r", "lt_O_Sn"}) {
      base.emplace_back(n);
    }
  }
  std::vector<std::string> out;
  for (const auto& n : base) {
    if (st.env.contains(n)) out.push_back(n);
  }
  return out;
}

Elaborated global_term(const ProofState& st, const std::string& name) {
  auto ref = st.env.lookup(name);
  Term t;
  if (ref->kind == GlobalKind::Constructor) {
    t = mk_construct(declaration_name(*st.env.declarations()[ref->index]), ref->ordinal);
  } else if (ref->kind == GlobalKind::Inductive) {
    t = mk_ind(name);
  } else {
    t = mk_const(name);
  }
  return {t, st.env.type_of_global(t)};
}

bool auto_search(ProofState& st, int g, int depth, const std::vector<std::string>& hints) {
  int cur = intros(st, g);
  {
    ProofState saved = st;
    try {
      assumption(st, cur);
      return true;
    } catch (const Error&) {
      st = std::move(saved);
    }
  }
  if (depth <= 0) return false;
  const LocalContext ctx = goal_ctx(st, cur);
  std::vector<Elaborated> cands;
  for (int i = 0; i < static_cast<int>(ctx.size()); ++i) {
    Term ty = ctx.type_of(i);
    if (whnf(st.env, ctx, ty).kind() == TermKind::Prod) cands.push_back({mk_rel(i), ty});
  }
  for (const auto& h : hints) cands.push_back(global_term(st, h));
  for (const auto& c : cands) {
    ProofState saved = st;
    try {
      Goals subs = apply_term(st, cur, c.term, c.type);
      bool ok = true;
      for (int s : subs) {
        if (st.metas.solved(s)) continue;
        if (!auto_search(st, s, depth - 1, hints)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    } catch (const Error&) {
    }
    st = std::move(saved);
  }
  return false;
}

// -------------------------------------------------------------- intuition

enum class Shape { Atom, True, False, And, Or, Imp };

struct Formula {
  Shape shape = Shape::Atom;
  Term a;  // And/Or: left; Imp: premise
  Term b;  // And/Or: right; Imp: conclusion (in the same context)
};

Formula classify(const ProofState& st, const LocalContext& ctx, const Term& t0) {
  Term t = st.metas.instantiate(t0);
  Formula f;
  for (int round = 0; round < 2; ++round) {
    if (t.kind() == TermKind::Prod) {
      if (occurs_rel(t.body(), 0)) return f;
      Term s;
      try {
        MetaTyper typer = st.metas.typer();
        s = whnf(st.env, ctx, infer_type(st.env, ctx, t.domain(), &typer));
      } catch (const Error&) {
        return f;
      }
      if (s.kind() != TermKind::Sort || !s.sort().is_prop()) return f;
      return {Shape::Imp, t.domain(), lift(t.body(), -1, 1)};
    }
    Term h = app_head(t);
    if (h.kind() == TermKind::Ind) {
      auto args = app_args(t);
      if (h.name() == "True" && args.empty()) return {Shape::True, {}, {}};
      if (h.name() == "False" && args.empty()) return {Shape::False, {}, {}};
      if (h.name() == "and" && args.size() == 2) return {Shape::And, args[0], args[1]};
      if (h.name() == "or" && args.size() == 2) return {Shape::Or, args[0], args[1]};
      return f;
    }
    if (round == 0) t = whnf(st.env, ctx, t);
  }
  return f;
}

class Intuition {
 public:
  explicit Intuition(ProofState& st) : st_(st) {}

  bool prove(int g) {
    if (++steps_ > kMaxSteps) {
      tactic_error("intuition: search limit reached.", ErrorKind::SearchExhausted);
    }
    int cur = g;
    // Invertible right rules.
    for (int guard = 0; guard < 64; ++guard) {
      Formula f = classify(st_, goal_ctx(st_, cur), goal_type(st_, cur));
      if (f.shape == Shape::Imp || goal_type(st_, cur).kind() == TermKind::Prod) {
        cur = intro(st_, cur);
        continue;
      }
      if (f.shape == Shape::True) {
        close_goal(st_, cur, mk_construct("True", 1));
        return true;
      }
      if (f.shape == Shape::And) {
        Goals gs = constructor(st_, cur, "split", {});
        for (int x : gs) {
          if (!st_.metas.solved(x) && !prove(x)) return false;
        }
        return true;
      }
      break;
    }
    // Invertible left rules.
    if (auto r = decompose_hyps(cur)) {
      if (*r < 0) return true;
      cur = *r;
      return prove(cur);
    }
    if (try_close(cur)) return true;
    Formula f = classify(st_, goal_ctx(st_, cur), goal_type(st_, cur));
    if (f.shape == Shape::Or) {
      for (const char* side : {"left", "right"}) {
        ProofState saved = st_;
        try {
          Goals gs = constructor(st_, cur, side, {});
          bool ok = true;
          for (int x : gs) ok = ok && (st_.metas.solved(x) || prove(x));
          if (ok) return true;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::SearchExhausted) throw;
        }
        st_ = std::move(saved);
      }
    }
    return nested_implication(cur);
  }

 private:
  static constexpr int kMaxSteps = 20000;

  bool try_close(int g) {
    ProofState saved = st_;
    try {
      assumption(st_, g);
      return true;
    } catch (const Error&) {
      st_ = saved;
    }
    try {
      reflexivity(st_, g);
      return true;
    } catch (const Error&) {
      st_ = saved;
    }
    if (auto_search(st_, g, 1, {})) return true;
    st_ = std::move(saved);
    return false;
  }

  int add_hyp(int g, const Term& type, const Term& proof) {
    const LocalContext ctx = goal_ctx(st_, g);
    std::string n = fresh_name("H", names_in(ctx));
    int ng = new_goal(st_, ctx.push(n, type), lift(goal_type(st_, g), 1));
    close_goal(st_, g, mk_app(mk_lambda(n, type, goal_term(st_, ng)), {proof}));
    return ng;
  }

  int drop(int g, std::size_t pos) {
    ProofState saved = st_;
    try {
      return clear_hyp(st_, g, pos);
    } catch (const Error&) {
      st_ = std::move(saved);
      return g;
    }
  }

  /// One invertible step on some hypothesis: the new goal, -1 if the goal
  /// was closed, or nullopt if no rule applies.
  std::optional<int> decompose_hyps(int g) {
    const LocalContext ctx = goal_ctx(st_, g);
    const std::size_t n = ctx.size();
    for (std::size_t p = n; p-- > 0;) {
      const int idx = hyp_index(ctx, p);
      const Term ty = ctx.type_of(idx);
      Formula f = classify(st_, ctx, ty);
      const Term h = mk_rel(idx);
      switch (f.shape) {
        case Shape::False:
          close_goal(st_, g, false_elim(h, goal_type(st_, g)));
          return -1;
        case Shape::True:
          return drop(g, p);
        case Shape::And: {
          Goals gs = case_term(st_, g, h, ty);
          int b = gs.front();
          b = intro(st_, b);
          b = intro(st_, b);
          return drop(b, p);
        }
        case Shape::Or: {
          Goals gs = case_term(st_, g, h, ty);
          bool all = true;
          for (int b : gs) {
            int x = intro(st_, b);
            x = drop(x, p);
            all = all && prove(x);
            if (!all) break;
          }
          if (!all) tactic_error("intuition: branch failed.", ErrorKind::SearchExhausted);
          return -1;
        }
        case Shape::Imp: {
          Formula pre = classify(st_, ctx, f.a);
          const Term c = f.b;
          if (pre.shape == Shape::True) {
            int x = add_hyp(g, c, mk_app(h, {mk_construct("True", 1)}));
            return drop(x, p);
          }
          if (pre.shape == Shape::False) return drop(g, p);
          if (pre.shape == Shape::And) {
            // A -> B -> C from (A /\ B) -> C
            Term a = pre.a;
            Term bb = pre.b;
            Term t = mk_arrow(a, mk_arrow(bb, c));
            Term proof = mk_lambda(
                "a", a,
                mk_lambda("b", lift(bb, 1),
                          mk_app(lift(h, 2), {mk_app(mk_construct("and", 1),
                                                     {lift(a, 2), lift(bb, 2), mk_rel(1),
                                                      mk_rel(0)})})));
            int x = add_hyp(g, t, proof);
            return drop(x, p);
          }
          if (pre.shape == Shape::Or) {
            Term a = pre.a;
            Term bb = pre.b;
            Term pa = mk_lambda("a", a,
                                mk_app(lift(h, 1), {mk_app(mk_construct("or", 1),
                                                           {lift(a, 1), lift(bb, 1), mk_rel(0)})}));
            int x = add_hyp(g, mk_arrow(a, c), pa);
            Term pb = mk_lambda("b", lift(bb, 1),
                                mk_app(lift(h, 2), {mk_app(mk_construct("or", 2),
                                                           {lift(a, 2), lift(bb, 2), mk_rel(0)})}));
            x = add_hyp(x, lift(mk_arrow(bb, c), 1), pb);
            return drop(x, p);
          }
          // Atom premise already available: modus ponens.
          for (std::size_t q = 0; q < n; ++q) {
            if (q == p) continue;
            const int qi = hyp_index(ctx, q);
            if (convertible(st_.env, ctx, ctx.type_of(qi), f.a)) {
              int x = add_hyp(g, c, mk_app(h, {mk_rel(qi)}));
              return drop(x, p);
            }
          }
          break;
        }
        case Shape::Atom:
          break;
      }
    }
    return std::nullopt;
  }

  /// The non-invertible rule for hypotheses (A -> B) -> C, and plain
  /// implications whose premise must itself be proved.
  bool nested_implication(int g) {
    const LocalContext ctx = goal_ctx(st_, g);
    const std::size_t n = ctx.size();
    for (std::size_t p = n; p-- > 0;) {
      const int idx = hyp_index(ctx, p);
      Formula f = classify(st_, ctx, ctx.type_of(idx));
      if (f.shape != Shape::Imp) continue;
      Formula pre = classify(st_, ctx, f.a);
      ProofState saved = st_;
      try {
        if (pre.shape == Shape::Imp) {
          // From H : (A -> B) -> C prove A -> B with B -> C available, then use C.
          const Term a = pre.a;
          const Term b = pre.b;
          const Term c = f.b;
          const Term h = mk_rel(idx);
          Term bc = mk_arrow(b, c);
          Term bc_proof =
              mk_lambda("b", b, mk_app(lift(h, 1), {mk_lambda("_", lift(a, 1), mk_rel(1))}));
          std::string n1 = fresh_name("H", names_in(ctx));
          int g1 = new_goal(st_, ctx.push(n1, bc), lift(mk_arrow(a, b), 1));
          Term ab_proof = mk_app(mk_lambda(n1, bc, goal_term(st_, g1)), {bc_proof});
          g1 = drop(g1, p);
          int g2 = add_hyp(g, c, mk_app(h, {ab_proof}));
          g2 = drop(g2, p);
          if (prove(g1) && prove(g2)) return true;
        } else if (pre.shape == Shape::Atom) {
          const Term h = mk_rel(idx);
          int g1 = new_goal(st_, ctx, f.a);
          int g2 = add_hyp(g, f.b, mk_app(h, {goal_term(st_, g1)}));
          g1 = drop(g1, p);
          g2 = drop(g2, p);
          if (prove(g1) && prove(g2)) return true;
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::SearchExhausted) throw;
      }
      st_ = std::move(saved);
    }
    return false;
  }

  ProofState& st_;
  int steps_ = 0;
};

}  // namespace

Goals auto_tac(ProofState& st, int g, int depth, bool arith) {
  ProofState saved = st;
  if (auto_search(st, g, depth, auto_hints(st, arith))) return {};
  st = std::move(saved);
  return {g};
}

Goals intuition(ProofState& st, int g) {
  Intuition it(st);
  if (!it.prove(g)) {
    tactic_error("intuition could not prove the goal.", ErrorKind::SearchExhausted);
  }
  return {};
}

}  // namespace hurry::tactics
