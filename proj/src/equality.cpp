#include <algorithm>
#include <deque>

#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"
#include "hurry/tactics.hpp"
#include "hurry/typing.hpp"

namespace hurry::tactics {

namespace {

struct Equation {
  Term type;  // A
  Term lhs;
  Term rhs;
};

std::optional<Equation> as_equation(const ProofState& st, const LocalContext& ctx, const Term& t) {
  Term w = whnf(st.env, ctx, st.metas.instantiate(t));
  auto v = as_inductive_app(st.env, w);
  if (!v || v->ind != "eq" || v->params.size() != 2 || v->indices.size() != 1) return std::nullopt;
  return Equation{v->params[0], v->params[1], v->indices[0]};
}

Equation equation_of_hyp(const ProofState& st, const LocalContext& ctx, int index,
                         const std::string& name) {
  auto eq = as_equation(st, ctx, ctx.type_of(index));
  if (!eq) {
    tactic_error("The type of " + name + " is not an equality.", ErrorKind::NotAnEquality);
  }
  return *eq;
}

void require_eq_lemmas(const ProofState& st) {
  if (!st.env.constant("eq_ind") || !st.env.constant("eq_sym")) {
    tactic_error("Rewriting needs eq_ind and eq_sym.");
  }
}

/// Proof of `to = from` given `eq : lhs = rhs`.
Term oriented(const Equation& e, const Term& eq, bool backwards) {
  if (backwards) return eq;  // from = rhs, to = lhs: eq itself
  return mk_app(mk_const("eq_sym"), {e.type, e.lhs, e.rhs, eq});
}

/// The conclusion with every occurrence of `from` replaced by `to`, or nullopt
/// when `from` does not occur.
std::optional<int> rewrite_goal_exact(ProofState& st, int g, const Equation& e, const Term& eq,
                                      bool backwards) {
  const LocalContext ctx = goal_ctx(st, g);
  const Term from = st.metas.instantiate(backwards ? e.rhs : e.lhs);
  const Term to = st.metas.instantiate(backwards ? e.lhs : e.rhs);
  Term goal = goal_type(st, g);
  Term body = abstract_occurrences(goal, from);
  if (!occurs_rel(body, 0)) return std::nullopt;
  Term a = st.metas.instantiate(e.type);
  Term p = mk_lambda("z", a, body);
  int ng = new_goal(st, ctx, subst(body, to));
  Term proof = mk_app(mk_const("eq_ind"),
                      {a, to, p, goal_term(st, ng), from, oriented(e, eq, backwards)});
  close_goal(st, g, proof);
  return ng;
}

bool same_head(const Term& pattern, const Term& t) {
  Term ph = app_head(pattern);
  Term th = app_head(t);
  if (ph.kind() == TermKind::Meta) return true;
  if (ph.kind() != th.kind()) return false;
  if (app_args(pattern).size() != app_args(t).size()) return false;
  switch (ph.kind()) {
    case TermKind::Rel:
      return ph.rel_index() == th.rel_index();
    case TermKind::Const:
    case TermKind::Ind:
      return ph.name() == th.name();
    case TermKind::Construct:
      return ph.name() == th.name() && ph.ctor_index() == th.ctor_index();
    default:
      return true;
  }
}

/// First subterm (preorder, left to right) unifying with `pattern`.
bool find_instance(ProofState& st, const LocalContext& ctx, const Term& target,
                   const Term& pattern) {
  bool found = false;
  std::function<void(const Term&, int)> walk = [&](const Term& t, int depth) {
    if (found) return;
    bool closed_here = true;
    for (int r : free_rels(t)) closed_here = closed_here && r >= depth;
    if (closed_here && t.kind() != TermKind::Sort) {
      Term lowered = depth ? lift(t, -depth) : t;
      if (same_head(pattern, lowered) && unify(st.env, st.metas, ctx, pattern, lowered)) {
        found = true;
        return;
      }
    }
    switch (t.kind()) {
      case TermKind::Prod:
      case TermKind::Lambda:
        walk(t.domain(), depth);
        walk(t.body(), depth + 1);
        return;
      case TermKind::LetIn:
        walk(t.let_value(), depth);
        walk(t.let_type(), depth);
        walk(t.body(), depth + 1);
        return;
      case TermKind::App:
        walk(t.head(), depth);
        for (const auto& a : t.args()) walk(a, depth);
        return;
      case TermKind::Match:
        walk(t.scrutinee(), depth);
        for (const auto& b : t.branches()) walk(b, depth);
        return;
      default:
        return;
    }
  };
  walk(target, 0);
  return found;
}

struct Peeled {
  Term proof;
  Term type;
  std::vector<std::pair<Term, std::string>> premises;  // meta, binder name
  std::vector<bool> dependent;
};

Peeled peel(ProofState& st, const LocalContext& ctx, const Term& proof, const Term& type) {
  Peeled p{proof, st.metas.instantiate(type), {}, {}};
  for (int guard = 0; guard < 64; ++guard) {
    Term w = p.type;
    if (w.kind() != TermKind::Prod) w = whnf(st.env, ctx, w);
    if (w.kind() != TermKind::Prod) break;
    Term m = st.metas.fresh(ctx, w.domain(), w.binder_name());
    p.premises.emplace_back(m, w.binder_name());
    p.dependent.push_back(occurs_rel(w.body(), 0));
    p.proof = mk_app(p.proof, {m});
    p.type = subst(w.body(), m);
  }
  return p;
}

Goals side_goals(ProofState& st, const Peeled& p) {
  Goals out;
  for (std::size_t i = 0; i < p.premises.size(); ++i) {
    const int id = p.premises[i].first.meta_id();
    if (st.metas.solved(id)) continue;
    if (p.dependent[i]) {
      tactic_error("Unable to find an instance for the variable " + p.premises[i].second + ".",
                   ErrorKind::UnificationFailure);
    }
    out.push_back(id);
  }
  return out;
}

}  // namespace

Goals rewrite_with(ProofState& st, int g, const Term& eq, const Term& eq_type, bool backwards) {
  require_eq_lemmas(st);
  const LocalContext ctx = goal_ctx(st, g);
  auto e = as_equation(st, ctx, eq_type);
  if (!e) tactic_error("The term does not prove an equality.", ErrorKind::NotAnEquality);
  auto ng = rewrite_goal_exact(st, g, *e, eq, backwards);
  if (!ng) tactic_error("Nothing to rewrite.");
  return {*ng};
}

Goals rewrite(ProofState& st, int g, const ExprPtr& ex, bool backwards,
              const std::optional<std::string>& hyp) {
  require_eq_lemmas(st);
  const LocalContext ctx = goal_ctx(st, g);
  const std::size_t base = st.metas.size();
  Elaborated r = elaborate_in(st, g, ex);
  Peeled p = peel(st, ctx, r.term, r.type);
  auto e = as_equation(st, ctx, p.type);
  if (!e) {
    tactic_error("The type of \"" + print_term(st.env, ctx, st.metas.instantiate(r.term)) +
                     "\" is not an equality.",
                 ErrorKind::NotAnEquality);
  }
  const Term pattern = backwards ? e->rhs : e->lhs;

  std::optional<std::size_t> hpos;
  Term target = goal_type(st, g);
  if (hyp) {
    hpos = find_hyp(ctx, *hyp);
    target = st.metas.instantiate(ctx.type_of(hyp_index(ctx, *hpos)));
  }
  if (!find_instance(st, ctx, target, pattern)) {
    tactic_error("Found no subterm matching \"" +
                     print_term(st.env, ctx, st.metas.instantiate(pattern)) + "\" in " +
                     (hyp ? *hyp : std::string("the current goal")) + ".");
  }
  Equation inst{st.metas.instantiate(e->type), st.metas.instantiate(e->lhs),
                st.metas.instantiate(e->rhs)};
  Term proof = st.metas.instantiate(p.proof);
  Goals side = side_goals(st, p);
  for (int id : st.metas.unsolved_in(proof)) {
    if (static_cast<std::size_t>(id) < base) continue;
    if (std::find(side.begin(), side.end(), id) == side.end()) {
      tactic_error("Unable to find an instance for " + st.metas.info(id).label + ".",
                   ErrorKind::UnificationFailure);
    }
  }

  if (!hyp) {
    auto ng = rewrite_goal_exact(st, g, inst, proof, backwards);
    if (!ng) tactic_error("Nothing to rewrite.");
    Goals out{*ng};
    out.insert(out.end(), side.begin(), side.end());
    return out;
  }

  // In a hypothesis H : P from, build H' : P to and replace H by it.
  const Term from = backwards ? inst.rhs : inst.lhs;
  const Term to = backwards ? inst.lhs : inst.rhs;
  Term body = abstract_occurrences(target, from);
  Term pr = mk_lambda("z", inst.type, body);
  Term new_type = subst(body, to);
  // eq_ind A from P H to (from = to)
  Term from_to = backwards ? mk_app(mk_const("eq_sym"), {inst.type, inst.lhs, inst.rhs, proof})
                           : proof;
  Term hproof = mk_app(mk_const("eq_ind"),
                       {inst.type, from, pr, mk_rel(hyp_index(ctx, *hpos)), to, from_to});
  int ng = new_goal(st, ctx.push(*hyp, new_type), lift(goal_type(st, g), 1));
  close_goal(st, g, mk_app(mk_lambda(*hyp, new_type, goal_term(st, ng)), {hproof}));
  ProofState saved = st;
  try {
    ng = clear_hyp(st, ng, *hpos);
  } catch (const Error&) {
    st = std::move(saved);
  }
  Goals out{ng};
  out.insert(out.end(), side.begin(), side.end());
  return out;
}

// ------------------------------------------------------------------- subst

namespace {

bool is_variable(const LocalContext& ctx, const Term& t) {
  return t.kind() == TermKind::Rel && !ctx.lookup(t.rel_index()).body;
}

std::size_t position_of(const LocalContext& ctx, const Term& rel) {
  return ctx.size() - 1 - static_cast<std::size_t>(rel.rel_index());
}

/// Eliminate the variable side of equation hypothesis `epos`. Returns the new
/// goal, or nullopt when the equation has no usable variable side.
std::optional<int> subst_one(ProofState& st, int g, std::size_t epos, bool var_on_left) {
  const LocalContext ctx = goal_ctx(st, g);
  const std::size_t n = ctx.size();
  const int eidx = hyp_index(ctx, epos);
  Equation e = equation_of_hyp(st, ctx, eidx, ctx.entries()[epos].name);
  const Term var = var_on_left ? e.lhs : e.rhs;
  const Term other = var_on_left ? e.rhs : e.lhs;
  if (!is_variable(ctx, var) || occurs_rel(other, var.rel_index())) return std::nullopt;
  const std::size_t xpos = position_of(ctx, var);

  // Hypotheses that depend (transitively) on the variable, other than the equation.
  std::vector<bool> dep(n, false);
  const auto& es = ctx.entries();
  for (std::size_t q = xpos + 1; q < n; ++q) {
    if (q == epos) continue;
    Term ty = st.metas.instantiate(es[q].type);
    for (int r : free_rels(ty)) {
      const std::size_t tp = q - 1 - static_cast<std::size_t>(r);
      if (tp == xpos || dep[tp]) dep[q] = true;
    }
  }
  for (int r : free_rels(st.metas.instantiate(es[epos].type))) {
    const std::size_t tp = epos - 1 - static_cast<std::size_t>(r);
    if (dep[tp]) return std::nullopt;
  }
  std::vector<std::size_t> order;
  for (std::size_t q = 0; q < n; ++q) {
    if (!dep[q] && q != epos) order.push_back(q);
  }
  const std::size_t new_epos = order.size();
  order.push_back(epos);
  for (std::size_t q = 0; q < n; ++q) {
    if (dep[q]) order.push_back(q);
  }
  int cur = reorder(st, g, order);
  std::vector<std::string> reverted;
  if (new_epos + 1 < n) cur = revert_from(st, cur, new_epos + 1, &reverted);
  {
    const LocalContext c = goal_ctx(st, cur);
    Equation e2 = equation_of_hyp(st, c, 0, es[epos].name);
    // Replace the variable by the other side: rewrite var -> other.
    auto ng = rewrite_goal_exact(st, cur, e2, mk_rel(0), !var_on_left);
    if (ng) cur = *ng;
  }
  for (const auto& name : reverted) cur = intro(st, cur, name);
  const LocalContext c = goal_ctx(st, cur);
  cur = clear_hyp(st, cur, find_hyp(c, es[epos].name));
  ProofState saved = st;
  try {
    const LocalContext c2 = goal_ctx(st, cur);
    const std::string& xname = es[xpos].name;
    cur = clear_hyp(st, cur, find_hyp(c2, xname));
  } catch (const Error&) {
    st = std::move(saved);
  }
  return cur;
}

std::optional<int> subst_equation(ProofState& st, int g, std::size_t epos) {
  if (auto r = subst_one(st, g, epos, false)) return r;
  return subst_one(st, g, epos, true);
}

}  // namespace

Goals subst(ProofState& st, int g, const std::vector<std::string>& names) {
  int cur = g;
  if (names.empty()) {
    for (int guard = 0; guard < 100; ++guard) {
      const LocalContext ctx = goal_ctx(st, cur);
      bool progress = false;
      for (std::size_t p = 0; p < ctx.size() && !progress; ++p) {
        if (ctx.entries()[p].body) continue;
        if (!as_equation(st, ctx, ctx.type_of(hyp_index(ctx, p)))) continue;
        ProofState saved = st;
        try {
          if (auto r = subst_equation(st, cur, p)) {
            cur = *r;
            progress = true;
          }
        } catch (const Error&) {
          st = std::move(saved);
        }
      }
      if (!progress) break;
    }
    return {cur};
  }
  for (const auto& x : names) {
    const LocalContext ctx = goal_ctx(st, cur);
    const std::size_t xpos = find_hyp(ctx, x);
    bool done = false;
    for (std::size_t p = xpos + 1; p < ctx.size() && !done; ++p) {
      auto e = as_equation(st, ctx, ctx.type_of(hyp_index(ctx, p)));
      if (!e) continue;
      const int xi = hyp_index(ctx, xpos) ;
      auto is_x = [&](const Term& t) { return t.kind() == TermKind::Rel && t.rel_index() == xi; };
      std::optional<int> r;
      if (is_x(e->rhs)) r = subst_one(st, cur, p, false);
      if (!r && is_x(e->lhs)) r = subst_one(st, cur, p, true);
      if (r) {
        cur = *r;
        done = true;
      }
    }
    if (!done) tactic_error("Cannot find any non-recursive equality over " + x + ".");
  }
  return {cur};
}

// ---------------------------------------------------- constructor equalities

namespace {

struct Step {
  std::string ind;
  int ordinal;
  int arg;  // non-parameter argument position; -1 at the clash
};

std::optional<std::vector<Step>> find_clash(const ProofState& st, const LocalContext& ctx,
                                            const Term& a0, const Term& b0) {
  Term a = whnf(st.env, ctx, st.metas.instantiate(a0));
  Term b = whnf(st.env, ctx, st.metas.instantiate(b0));
  auto ca = as_constructor_app(a);
  auto cb = as_constructor_app(b);
  if (!ca || !cb || ca->ind != cb->ind) return std::nullopt;
  if (ca->ordinal != cb->ordinal) return std::vector<Step>{{ca->ind, ca->ordinal, -1}};
  const auto* decl = st.env.inductive(ca->ind);
  const std::size_t np = decl->num_params();
  for (std::size_t k = np; k < ca->args.size(); ++k) {
    if (auto sub = find_clash(st, ctx, ca->args[k], cb->args[k])) {
      std::vector<Step> out{{ca->ind, ca->ordinal, static_cast<int>(k - np)}};
      out.insert(out.end(), sub->begin(), sub->end());
      return out;
    }
  }
  return std::nullopt;
}

/// λv:T. a Prop that holds (True) along the path and is False on the clash.
Term discriminator(const ProofState& st, const Term& type, const std::vector<Step>& path,
                   std::size_t i) {
  const Step& s = path[i];
  const InductiveDecl& decl = *st.env.inductive(s.ind);
  Term w = type;
  auto view = as_inductive_app(st.env, w);
  std::vector<Term> params = view ? view->params : std::vector<Term>{};
  const int ni = static_cast<int>(decl.num_indices());
  // predicate λidx. λ_. Prop, in the context extended by v
  std::vector<Binder> pbs;
  {
    Term ar = instantiate(decl.arity, params);
    while (ar.kind() == TermKind::Prod) {
      pbs.push_back({ar.binder_name(), lift(ar.domain(), 1, static_cast<int>(pbs.size()))});
      ar = ar.body();
    }
  }
  std::vector<Term> iargs;
  for (const auto& p : params) iargs.push_back(lift(p, ni + 1));
  for (int k = ni - 1; k >= 0; --k) iargs.push_back(mk_rel(k));
  Term pred = mk_lambda("_", mk_app(mk_ind(s.ind), iargs), mk_prop());
  for (std::size_t k = pbs.size(); k-- > 0;) pred = mk_lambda(pbs[k].name, pbs[k].type, pred);

  std::vector<Term> branches;
  for (std::size_t j = 0; j < decl.constructors.size(); ++j) {
    const int ordinal = static_cast<int>(j + 1);
    const int n = static_cast<int>(decl.constructor_arity(ordinal));
    std::vector<Term> lp;
    for (const auto& p : params) lp.push_back(lift(p, 1));
    Term ct = instantiate(decl.constructors[j].type, lp);
    std::vector<Binder> bs;
    std::vector<Term> doms;
    for (int k = 0; k < n; ++k) {
      bs.push_back({ct.binder_name(), ct.domain()});
      doms.push_back(ct.domain());
      ct = ct.body();
    }
    Term body;
    if (ordinal != s.ordinal) {
      body = mk_ind("False");
    } else if (s.arg < 0) {
      body = mk_ind("True");
    } else {
      const int k = s.arg;
      Term argty = lift(doms[static_cast<std::size_t>(k)], n - k);
      Term d = discriminator(st, argty, path, i + 1);
      body = beta_head(mk_app(d, {mk_rel(n - 1 - k)}));
    }
    for (int k = n; k-- > 0;) {
      body = mk_lambda(bs[static_cast<std::size_t>(k)].name, bs[static_cast<std::size_t>(k)].type,
                       body);
    }
    branches.push_back(body);
  }
  Term m = mk_match(s.ind, mk_rel(0), pred, std::move(branches));
  return mk_lambda("v", type, m);
}

/// Close the goal from a hypothesis `index : a = b` with a constructor clash.
bool discriminate_with(ProofState& st, int g, const Term& eq, const Equation& e) {
  const LocalContext ctx = goal_ctx(st, g);
  auto path = find_clash(st, ctx, e.lhs, e.rhs);
  if (!path) return false;
  if (!st.env.inductive("True") || !st.env.constant("eq_ind")) {
    tactic_error("discriminate needs True and eq_ind.");
  }
  Term a = st.metas.instantiate(e.type);
  Term d = discriminator(st, a, *path, 0);
  Term proof = mk_app(mk_const("eq_ind"), {a, e.lhs, d, mk_construct("True", 1), e.rhs, eq});
  close_goal(st, g, false_elim(proof, goal_type(st, g)));
  return true;
}

}  // namespace

Goals discriminate(ProofState& st, int g, const std::optional<std::string>& hyp) {
  int cur = g;
  if (hyp) {
    const LocalContext ctx = goal_ctx(st, cur);
    const int idx = hyp_index(ctx, find_hyp(ctx, *hyp));
    Equation e = equation_of_hyp(st, ctx, idx, *hyp);
    if (!discriminate_with(st, cur, mk_rel(idx), e)) {
      tactic_error("Not a discriminable equality.", ErrorKind::NotAConstructorClash);
    }
    return {};
  }
  {
    Term goal = goal_type(st, cur);
    Term w = whnf(st.env, goal_ctx(st, cur), goal);
    if (w.kind() == TermKind::Prod) {
      if (as_equation(st, goal_ctx(st, cur), w.domain())) cur = intro(st, cur);
    }
  }
  const LocalContext ctx = goal_ctx(st, cur);
  for (int i = 0; i < static_cast<int>(ctx.size()); ++i) {
    auto e = as_equation(st, ctx, ctx.type_of(i));
    if (!e) continue;
    if (discriminate_with(st, cur, mk_rel(i), *e)) return {};
  }
  tactic_error("No discriminable equalities.", ErrorKind::NotAConstructorClash);
}

namespace {

/// Equations between the differing arguments of `a = b` (same constructor),
/// with proofs built from `eq`. Empty optional if not the same constructor.
struct Injected {
  std::vector<Term> types;
  std::vector<Term> proofs;
};

std::optional<Injected> inject(const ProofState& st, const LocalContext& ctx, const Term& eq,
                               const Equation& e) {
  Term a = whnf(st.env, ctx, st.metas.instantiate(e.lhs));
  Term b = whnf(st.env, ctx, st.metas.instantiate(e.rhs));
  auto ca = as_constructor_app(a);
  auto cb = as_constructor_app(b);
  if (!ca || !cb || ca->ind != cb->ind || ca->ordinal != cb->ordinal) return std::nullopt;
  const InductiveDecl& decl = *st.env.inductive(ca->ind);
  const std::size_t np = decl.num_params();
  std::vector<Term> params(ca->args.begin(), ca->args.begin() + static_cast<long>(np));
  Term ct = instantiate(decl.constructors[static_cast<std::size_t>(ca->ordinal - 1)].type, params);
  Injected out;
  Term A = st.metas.instantiate(e.type);
  const int n = static_cast<int>(ca->args.size() - np);
  std::vector<Term> doms;
  {
    Term t = ct;
    for (int k = 0; k < n; ++k) {
      doms.push_back(t.domain());
      t = t.body();
    }
  }
  for (int k = 0; k < n; ++k) {
    const Term& x = ca->args[np + static_cast<std::size_t>(k)];
    const Term& y = cb->args[np + static_cast<std::size_t>(k)];
    if (x == y) continue;
    std::vector<Term> before(ca->args.begin() + static_cast<long>(np),
                             ca->args.begin() + static_cast<long>(np) + k);
    Term tk = instantiate(doms[static_cast<std::size_t>(k)], before);
    if (tk.loose_bound() > static_cast<int>(ctx.size())) continue;
    // projection λv:A. match v with C args => arg_k | _ => x
    std::vector<Term> branches;
    for (std::size_t j = 0; j < decl.constructors.size(); ++j) {
      const int ord = static_cast<int>(j + 1);
      const int m = static_cast<int>(decl.constructor_arity(ord));
      std::vector<Term> lp;
      for (const auto& p : params) lp.push_back(lift(p, 1));
      Term cj = instantiate(decl.constructors[j].type, lp);
      std::vector<Binder> bs;
      for (int q = 0; q < m; ++q) {
        bs.push_back({cj.binder_name(), cj.domain()});
        cj = cj.body();
      }
      Term body = ord == ca->ordinal ? mk_rel(m - 1 - k) : lift(x, 1 + m);
      for (int q = m; q-- > 0;) {
        body = mk_lambda(bs[static_cast<std::size_t>(q)].name, bs[static_cast<std::size_t>(q)].type,
                         body);
      }
      branches.push_back(body);
    }
    const int ni = static_cast<int>(decl.num_indices());
    std::vector<Term> iargs;
    for (const auto& p : params) iargs.push_back(lift(p, 1 + ni));
    for (int q = ni - 1; q >= 0; --q) iargs.push_back(mk_rel(q));
    Term pred = mk_lambda("_", mk_app(mk_ind(ca->ind), iargs), lift(tk, 2 + ni));
    {
      Term ar = instantiate(decl.arity, params);
      std::vector<Binder> pbs;
      while (ar.kind() == TermKind::Prod) {
        pbs.push_back({ar.binder_name(), lift(ar.domain(), 1, static_cast<int>(pbs.size()))});
        ar = ar.body();
      }
      for (std::size_t q = pbs.size(); q-- > 0;) pred = mk_lambda(pbs[q].name, pbs[q].type, pred);
    }
    Term proj_body = mk_match(ca->ind, mk_rel(0), pred, std::move(branches));
    // motive λv:A. x = proj v
    Term motive = mk_lambda("v", A, mk_app(mk_ind("eq"), {lift(tk, 1), lift(x, 1), proj_body}));
    Term proof = mk_app(mk_const("eq_ind"),
                        {A, e.lhs, motive, mk_app(mk_construct("eq", 1), {tk, x}), e.rhs, eq});
    out.types.push_back(mk_app(mk_ind("eq"), {tk, x, y}));
    out.proofs.push_back(proof);
  }
  return out;
}

/// Replace the goal G by `eqs -> G`, applied to the equation proofs.
int add_premises(ProofState& st, int g, const Injected& inj) {
  const LocalContext ctx = goal_ctx(st, g);
  Term t = goal_type(st, g);
  for (std::size_t i = inj.types.size(); i-- > 0;) t = mk_arrow(inj.types[i], t);
  int ng = new_goal(st, ctx, t);
  close_goal(st, g, mk_app(goal_term(st, ng), inj.proofs));
  return ng;
}

}  // namespace

Goals injection(ProofState& st, int g, const std::string& hyp) {
  if (!st.env.constant("eq_ind")) tactic_error("injection needs eq_ind.");
  const LocalContext ctx = goal_ctx(st, g);
  const int idx = hyp_index(ctx, find_hyp(ctx, hyp));
  Equation e = equation_of_hyp(st, ctx, idx, hyp);
  auto inj = inject(st, ctx, mk_rel(idx), e);
  if (!inj) {
    if (find_clash(st, ctx, e.lhs, e.rhs)) {
      tactic_error("Not a projectable equality but a discriminable one.",
                   ErrorKind::NotSameConstructor);
    }
    tactic_error("Not a projectable equality.", ErrorKind::NotSameConstructor);
  }
  return {add_premises(st, g, *inj)};
}

// --------------------------------------------------------------- inversion

Goals inversion(ProofState& st, int g, const std::string& hyp) {
  if (!st.env.constant("eq_ind") || !st.env.inductive("eq")) {
    tactic_error("inversion needs eq.");
  }
  const LocalContext ctx = goal_ctx(st, g);
  const std::size_t hpos = find_hyp(ctx, hyp);
  const int hidx = hyp_index(ctx, hpos);
  Term hty = whnf(st.env, ctx, st.metas.instantiate(ctx.type_of(hidx)));
  auto view = as_inductive_app(st.env, hty);
  if (!view) {
    tactic_error("The type of " + hyp + " is not an inductive type.",
                 ErrorKind::NotAnInductiveHypothesis);
  }
  const InductiveDecl& decl = *st.env.inductive(view->ind);
  const int ni = static_cast<int>(decl.num_indices());
  const int np = static_cast<int>(decl.num_params());
  Term goal = goal_type(st, g);

  // Index binder types, which must not depend on earlier indices.
  std::vector<Binder> ibs;
  {
    Term ar = instantiate(decl.arity, view->params);
    while (ar.kind() == TermKind::Prod) {
      const int depth = static_cast<int>(ibs.size());
      for (int r : free_rels(ar.domain())) {
        if (r < depth) {
          tactic_error("Inversion of dependent index types is not supported.",
                       ErrorKind::UnsupportedIndexShape);
        }
      }
      ibs.push_back({ar.binder_name(), lift(ar.domain(), -depth)});
      ar = ar.body();
    }
  }
  // pred: λ i1..ik. λ _ : I params i. (u1 = i1 -> ... -> uk = ik -> G)
  auto equations_over = [&](const std::vector<Term>& targets, int depth) {
    // Term in the context extended by `depth` binders.
    Term t = lift(goal, depth);
    for (int j = ni; j-- > 0;) {
      const auto uj = static_cast<std::size_t>(j);
      Term eqj = mk_app(mk_ind("eq"), {lift(ibs[uj].type, depth), lift(view->indices[uj], depth),
                                      targets[uj]});
      t = mk_arrow(eqj, t);
    }
    return t;
  };
  Term pred;
  {
    std::vector<Term> targets;
    for (int j = 0; j < ni; ++j) targets.push_back(mk_rel(ni - j));
    Term body = equations_over(targets, ni + 1);
    std::vector<Term> iargs;
    for (const auto& p : view->params) iargs.push_back(lift(p, ni));
    for (int q = ni - 1; q >= 0; --q) iargs.push_back(mk_rel(q));
    pred = mk_lambda("_", mk_app(mk_ind(view->ind), iargs), body);
    for (int j = ni; j-- > 0;) {
      const auto uj = static_cast<std::size_t>(j);
      pred = mk_lambda(ibs[uj].name, lift(ibs[uj].type, j), pred);
    }
  }

  std::vector<Term> branches;
  Goals raw;
  for (std::size_t j = 0; j < decl.constructors.size(); ++j) {
    const int ordinal = static_cast<int>(j + 1);
    const int n = static_cast<int>(decl.constructor_arity(ordinal));
    Term ct = instantiate(decl.constructors[j].type, view->params);
    std::vector<Binder> bs;
    for (int k = 0; k < n; ++k) {
      bs.push_back({ct.binder_name(), ct.domain()});
      ct = ct.body();
    }
    auto concl = app_args(ct);
    std::vector<Term> targets(concl.begin() + np, concl.end());
    Term bt = equations_over(targets, n);
    for (int k = n; k-- > 0;) {
      bt = mk_prod(bs[static_cast<std::size_t>(k)].name, bs[static_cast<std::size_t>(k)].type, bt);
    }
    int bg = new_goal(st, ctx, bt);
    raw.push_back(bg);
    branches.push_back(goal_term(st, bg));
  }
  Term m = mk_match(view->ind, mk_rel(hidx), pred, std::move(branches));
  std::vector<Term> refls;
  for (int j = 0; j < ni; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    refls.push_back(mk_app(mk_construct("eq", 1), {ibs[uj].type, view->indices[uj]}));
  }
  close_goal(st, g, mk_app(m, refls));

  Goals out;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    int bg = raw[j];
    const int n = static_cast<int>(decl.constructor_arity(static_cast<int>(j + 1)));
    for (int k = 0; k < n; ++k) {
      Term t = goal_type(st, bg);
      std::string base = t.binder_name();
      if (base.empty() || base == "_") base = default_name(st.env, goal_ctx(st, bg), t.domain());
      bg = intro(st, bg, fresh_name(base, names_in(goal_ctx(st, bg))));
    }
    std::deque<std::string> pending;
    for (int k = 0; k < ni; ++k) {
      std::string name;
      bg = intro(st, bg, std::nullopt, &name);
      pending.push_back(name);
    }
    bool closed = false;
    int guard = 0;
    while (!pending.empty() && !closed && guard++ < 200) {
      const std::string name = pending.front();
      pending.pop_front();
      const LocalContext c = goal_ctx(st, bg);
      const std::size_t p = find_hyp(c, name);
      const int idx = hyp_index(c, p);
      auto e = as_equation(st, c, c.type_of(idx));
      if (!e) continue;
      Term l = st.metas.instantiate(e->lhs);
      Term r = st.metas.instantiate(e->rhs);
      if (l == r) {
        bg = clear_hyp(st, bg, p);
        continue;
      }
      if (discriminate_with(st, bg, mk_rel(idx), *e)) {
        closed = true;
        break;
      }
      if (auto inj = inject(st, c, mk_rel(idx), *e)) {
        bg = add_premises(st, bg, *inj);
        bg = clear_hyp(st, bg, p);
        std::vector<std::string> fresh;
        for (std::size_t q = 0; q < inj->types.size(); ++q) {
          std::string nm;
          bg = intro(st, bg, std::nullopt, &nm);
          fresh.push_back(nm);
        }
        for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) pending.push_front(*it);
        continue;
      }
      ProofState saved = st;
      try {
        if (auto r2 = subst_equation(st, bg, p)) {
          bg = *r2;
          continue;
        }
      } catch (const Error&) {
      }
      st = std::move(saved);
    }
    if (!closed) out.push_back(bg);
  }
  return out;
}

}  // namespace hurry::tactics
