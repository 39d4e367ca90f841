#include <algorithm>

#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"
#include "hurry/tactics.hpp"
#include "hurry/typing.hpp"

namespace hurry::tactics {

void tactic_error(const std::string& message, ErrorKind kind) { throw Error(kind, message); }

const LocalContext& goal_ctx(const ProofState& st, int g) { return st.metas.info(g).ctx; }

Term goal_type(const ProofState& st, int g) { return st.metas.instantiate(st.metas.info(g).type); }

int new_goal(ProofState& st, const LocalContext& ctx, const Term& type, const std::string& label) {
  Term m = st.metas.fresh(ctx, type, label);
  return m.meta_id();
}

Term goal_term(const ProofState& st, int g) {
  return mk_meta(g, identity_instance(goal_ctx(st, g).size()));
}

void close_goal(ProofState& st, int g, const Term& proof) { st.metas.assign(g, proof); }

std::set<std::string> names_in(const LocalContext& ctx) {
  auto ns = ctx.names();
  return {ns.begin(), ns.end()};
}

std::size_t find_hyp(const LocalContext& ctx, const std::string& name) {
  auto p = ctx.find(name);
  if (!p) throw Error(ErrorKind::NoSuchHypothesis, "No such hypothesis: " + name + ".");
  return *p;
}

Term abstract_occurrences(const Term& t, const Term& u) {
  Term lifted = lift(t, 1);
  Term pat = lift(u, 1);
  return map_term(lifted, [&](const Term& x, int depth) -> std::optional<Term> {
    if (x == (depth == 0 ? pat : lift(pat, depth))) return mk_rel(depth);
    return std::nullopt;
  });
}

Term abstract_terms(const Term& t, const std::vector<Term>& us) {
  Term r = t;
  for (std::size_t i = 0; i < us.size(); ++i) {
    r = abstract_occurrences(r, lift(us[i], static_cast<int>(i)));
  }
  return r;
}

namespace {

std::string intro_name(const ProofState& st, const LocalContext& ctx, const Term& prod) {
  std::string base = prod.binder_name();
  if (base.empty() || base == "_") base = default_name(st.env, ctx, prod.domain());
  return fresh_name(base, names_in(ctx));
}

}  // namespace

int intro(ProofState& st, int g, const std::optional<std::string>& name, std::string* chosen) {
  const LocalContext ctx = goal_ctx(st, g);
  Term t = goal_type(st, g);
  if (t.kind() != TermKind::Prod && t.kind() != TermKind::LetIn) t = whnf(st.env, ctx, t);
  if (t.kind() != TermKind::Prod && t.kind() != TermKind::LetIn) {
    tactic_error("No product even after head-reduction.");
  }
  std::string n;
  if (name) {
    if (ctx.find(*name)) tactic_error(*name + " is already used.");
    n = *name;
  } else if (t.kind() == TermKind::LetIn) {
    n = fresh_name(t.binder_name().empty() ? "x" : t.binder_name(), names_in(ctx));
  } else {
    n = intro_name(st, ctx, t);
  }
  if (chosen) *chosen = n;
  LocalContext c2 = ctx;
  int ng;
  if (t.kind() == TermKind::LetIn) {
    c2.push_in_place(n, t.let_type(), t.let_value());
    ng = new_goal(st, c2, t.body());
    close_goal(st, g, mk_let(n, t.let_value(), t.let_type(), goal_term(st, ng)));
  } else {
    c2.push_in_place(n, t.domain());
    ng = new_goal(st, c2, t.body());
    close_goal(st, g, mk_lambda(n, t.domain(), goal_term(st, ng)));
  }
  return ng;
}

int intros(ProofState& st, int g) {
  int cur = g;
  while (true) {
    Term t = goal_type(st, cur);
    if (t.kind() != TermKind::Prod && t.kind() != TermKind::LetIn) return cur;
    cur = intro(st, cur);
  }
}

int revert_from(ProofState& st, int g, std::size_t position, std::vector<std::string>* names) {
  const LocalContext ctx = goal_ctx(st, g);
  const std::size_t n = ctx.size();
  Term t = goal_type(st, g);
  const auto& es = ctx.entries();
  for (std::size_t i = n; i-- > position;) {
    if (es[i].body) {
      t = mk_let(es[i].name, *es[i].body, es[i].type, t);
    } else {
      t = mk_prod(es[i].name, st.metas.instantiate(es[i].type), t);
    }
  }
  if (names) {
    for (std::size_t i = position; i < n; ++i) names->push_back(es[i].name);
  }
  int ng = new_goal(st, ctx.prefix(position), t);
  std::vector<Term> inst;
  for (std::size_t q = 0; q < position; ++q) inst.push_back(mk_rel(static_cast<int>(n - 1 - q)));
  Term proof = mk_meta(ng, inst);
  std::vector<Term> args;
  for (std::size_t q = position; q < n; ++q) {
    if (!es[q].body) args.push_back(mk_rel(static_cast<int>(n - 1 - q)));
  }
  close_goal(st, g, mk_app(proof, args));
  return ng;
}

int clear_hyp(ProofState& st, int g, std::size_t p) {
  const LocalContext ctx = goal_ctx(st, g);
  const std::size_t n = ctx.size();
  const auto& es = ctx.entries();
  for (std::size_t q = p + 1; q < n; ++q) {
    const int idx = static_cast<int>(q - 1 - p);
    if (occurs_rel(st.metas.instantiate(es[q].type), idx) ||
        (es[q].body && occurs_rel(*es[q].body, idx))) {
      tactic_error(es[p].name + " is used in hypothesis " + es[q].name + ".");
    }
  }
  Term concl = goal_type(st, g);
  if (occurs_rel(concl, static_cast<int>(n - 1 - p))) {
    tactic_error(es[p].name + " is used in the conclusion.");
  }
  LocalContext c2 = ctx.prefix(p);
  for (std::size_t q = p + 1; q < n; ++q) {
    const int cut = static_cast<int>(q - p);
    std::optional<Term> body;
    if (es[q].body) body = lift(*es[q].body, -1, cut);
    c2.push_in_place(es[q].name, lift(st.metas.instantiate(es[q].type), -1, cut), body);
  }
  int ng = new_goal(st, c2, lift(concl, -1, static_cast<int>(n - p)));
  std::vector<Term> inst;
  for (std::size_t q = 0; q < n; ++q) {
    if (q != p) inst.push_back(mk_rel(static_cast<int>(n - 1 - q)));
  }
  close_goal(st, g, mk_meta(ng, inst));
  return ng;
}

int replace_goal(ProofState& st, int g, const LocalContext& ctx, const Term& type) {
  int ng = new_goal(st, ctx, type);
  close_goal(st, g, mk_meta(ng, identity_instance(ctx.size())));
  return ng;
}

LocalContext with_hyp_type(const LocalContext& ctx, std::size_t position, const Term& type) {
  LocalContext out = ctx.prefix(position);
  const auto& es = ctx.entries();
  for (std::size_t q = position; q < es.size(); ++q) {
    out.push_in_place(es[q].name, q == position ? type : es[q].type, es[q].body);
  }
  return out;
}

int reorder(ProofState& st, int g, const std::vector<std::size_t>& order) {
  const LocalContext ctx = goal_ctx(st, g);
  const std::size_t n = ctx.size();
  std::vector<std::size_t> inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[order[j]] = j;
  auto remap = [&](const Term& t, std::size_t old_pos, std::size_t new_pos) {
    return map_term(t, [&](const Term& x, int depth) -> std::optional<Term> {
      if (x.kind() != TermKind::Rel || x.rel_index() < depth) return std::nullopt;
      const int i = x.rel_index() - depth;
      const std::size_t target = old_pos - 1 - static_cast<std::size_t>(i);
      const std::size_t np = inv[target];
      if (np >= new_pos) tactic_error("Cannot move a hypothesis before its dependencies.");
      return mk_rel(static_cast<int>(new_pos - 1 - np) + depth);
    });
  };
  LocalContext c2;
  const auto& es = ctx.entries();
  for (std::size_t j = 0; j < n; ++j) {
    const auto& e = es[order[j]];
    std::optional<Term> body;
    if (e.body) body = remap(*e.body, order[j], j);
    c2.push_in_place(e.name, remap(st.metas.instantiate(e.type), order[j], j), body);
  }
  int ng = new_goal(st, c2, remap(goal_type(st, g), n, n));
  std::vector<Term> inst;
  for (std::size_t j = 0; j < n; ++j) inst.push_back(mk_rel(static_cast<int>(n - 1 - order[j])));
  close_goal(st, g, mk_meta(ng, inst));
  return ng;
}

Elaborated elaborate_in(ProofState& st, int g, const ExprPtr& e,
                        const std::optional<Term>& expected) {
  Elaborator el(st.env, st.metas);
  const LocalContext ctx = goal_ctx(st, g);
  if (expected) return {el.check(ctx, e, *expected), *expected};
  Elaborated r = el.infer(ctx, e);
  return {st.metas.instantiate(r.term), st.metas.instantiate(r.type)};
}

namespace {

struct Premise {
  Term meta;
  std::string name;
  bool dependent;
};

void fail_unresolved(const std::string& name) {
  tactic_error("Unable to find an instance for the variable " + name + ".",
               ErrorKind::UnificationFailure);
}

}  // namespace

Goals apply_term(ProofState& st, int g, const Term& f, const Term& ftype,
                 const std::vector<ExprPtr>& with, std::size_t first_open_meta) {
  const LocalContext ctx = goal_ctx(st, g);
  const Term goal = goal_type(st, g);
  const std::size_t base = first_open_meta ? first_open_meta : st.metas.size();
  std::size_t max_premises = 0;
  {
    Term t = st.metas.instantiate(ftype);
    LocalContext c = ctx;
    while (max_premises < 64) {
      if (t.kind() != TermKind::Prod) t = whnf(st.env, c, t);
      if (t.kind() != TermKind::Prod) break;
      c.push_in_place(t.binder_name(), t.domain());
      t = t.body();
      ++max_premises;
    }
  }
  for (std::size_t k = 0; k <= max_premises; ++k) {
    auto mark = st.metas.snapshot();
    std::vector<Premise> premises;
    Term t = st.metas.instantiate(ftype);
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (t.kind() != TermKind::Prod) t = whnf(st.env, ctx, t);
      if (t.kind() != TermKind::Prod) {
        ok = false;
        break;
      }
      Term m = st.metas.fresh(ctx, t.domain(), t.binder_name());
      premises.push_back({m, t.binder_name(), occurs_rel(t.body(), 0)});
      t = subst(t.body(), m);
    }
    if (!ok) break;
    if (!unify(st.env, st.metas, ctx, t, goal)) {
      st.metas.restore(mark);
      continue;
    }
    std::size_t wi = 0;
    for (const auto& p : premises) {
      if (!p.dependent || st.metas.solved(p.meta.meta_id())) continue;
      if (wi >= with.size()) break;
      Elaborator el(st.env, st.metas);
      Term ty = st.metas.instantiate(st.metas.type_of(p.meta));
      Term v = el.check(ctx, with[wi++], ty);
      if (!unify(st.env, st.metas, ctx, p.meta, v)) {
        tactic_error("The binding for " + p.name + " does not fit.", ErrorKind::UnificationFailure);
      }
    }
    if (wi < with.size()) tactic_error("Too many bindings given to apply.");
    Goals out;
    for (const auto& p : premises) {
      if (st.metas.solved(p.meta.meta_id())) continue;
      if (p.dependent) {
        // A dependent premise still open only matters if something else needs it.
        fail_unresolved(p.name);
      }
      out.push_back(p.meta.meta_id());
    }
    std::vector<Term> args;
    for (const auto& p : premises) args.push_back(p.meta);
    Term proof = st.metas.instantiate(mk_app(f, args));
    for (int id : st.metas.unsolved_in(proof)) {
      if (static_cast<std::size_t>(id) < base) continue;
      if (std::find(out.begin(), out.end(), id) != out.end()) continue;
      fail_unresolved(st.metas.info(id).label.empty() ? "_" : st.metas.info(id).label);
    }
    close_goal(st, g, proof);
    return out;
  }
  tactic_error("Unable to unify \"" + print_term(st.env, ctx, st.metas.instantiate(ftype)) +
                   "\" with \"" + print_term(st.env, ctx, goal) + "\".",
               ErrorKind::UnificationFailure);
}

Term false_elim(const Term& proof_of_false, const Term& goal) {
  return mk_match("False", proof_of_false, mk_lambda("_", mk_ind("False"), lift(goal, 1)), {});
}

// ------------------------------------------------------------- basic tactics

Goals exact(ProofState& st, int g, const ExprPtr& e) {
  const std::size_t base = st.metas.size();
  Elaborated r = elaborate_in(st, g, e, goal_type(st, g));
  Term t = st.metas.instantiate(r.term);
  for (int id : st.metas.unsolved_in(t)) {
    if (static_cast<std::size_t>(id) >= base) {
      tactic_error("Cannot infer " + st.metas.info(id).label + " in the term.");
    }
  }
  close_goal(st, g, t);
  return {};
}

Goals assumption(ProofState& st, int g) {
  const LocalContext ctx = goal_ctx(st, g);
  Term goal = goal_type(st, g);
  for (int i = 0; i < static_cast<int>(ctx.size()); ++i) {
    if (unify(st.env, st.metas, ctx, ctx.type_of(i), goal)) {
      close_goal(st, g, mk_rel(i));
      return {};
    }
  }
  tactic_error("No such assumption.");
}

Goals constructor(ProofState& st, int g, const std::string& which,
                  const std::vector<ExprPtr>& with) {
  int cur = g;
  if (goal_type(st, cur).kind() == TermKind::Prod) cur = intros(st, cur);
  const LocalContext ctx = goal_ctx(st, cur);
  Term w = whnf(st.env, ctx, goal_type(st, cur));
  auto view = as_inductive_app(st.env, w);
  const InductiveDecl* decl = view ? st.env.inductive(view->ind) : nullptr;
  const std::size_t nctors = decl ? decl->constructors.size() : 0;
  int ordinal = 1;
  if (which == "split" || which == "exists") {
    if (nctors != 1) tactic_error("Not an inductive goal with 1 constructor.");
  } else {
    if (nctors != 2) tactic_error("Not an inductive goal with 2 constructors.");
    ordinal = which == "left" ? 1 : 2;
  }
  Term f = mk_app(mk_construct(view->ind, ordinal), view->params);
  Term ftype = instantiate(decl->constructors[static_cast<std::size_t>(ordinal - 1)].type,
                           view->params);
  if (which == "exists" && ftype.kind() != TermKind::Prod) {
    tactic_error("Not an existential goal.");
  }
  return apply_term(st, cur, f, ftype, with);
}

Goals reflexivity(ProofState& st, int g) {
  const LocalContext ctx = goal_ctx(st, g);
  Term w = whnf(st.env, ctx, goal_type(st, g));
  auto view = as_inductive_app(st.env, w);
  if (!view || view->ind != "eq" || view->indices.size() != 1) {
    tactic_error("The conclusion is not an equality.", ErrorKind::NotAnEquality);
  }
  const Term& l = view->params[1];
  const Term& r = view->indices[0];
  if (!unify(st.env, st.metas, ctx, l, r)) {
    tactic_error("Unable to unify \"" + print_term(st.env, ctx, st.metas.instantiate(l)) +
                     "\" with \"" + print_term(st.env, ctx, st.metas.instantiate(r)) + "\".",
                 ErrorKind::UnificationFailure);
  }
  close_goal(st, g, mk_app(mk_construct("eq", 1), {view->params[0], view->params[1]}));
  return {};
}

Goals symmetry(ProofState& st, int g) {
  const LocalContext ctx = goal_ctx(st, g);
  Term w = whnf(st.env, ctx, goal_type(st, g));
  auto view = as_inductive_app(st.env, w);
  if (!view || view->ind != "eq" || view->indices.size() != 1) {
    tactic_error("The conclusion is not an equality.", ErrorKind::NotAnEquality);
  }
  if (!st.env.constant("eq_sym")) tactic_error("symmetry needs eq_sym.");
  const Term& a = view->params[0];
  const Term& x = view->params[1];
  const Term& y = view->indices[0];
  int ng = new_goal(st, ctx, mk_app(mk_ind("eq"), {a, y, x}));
  close_goal(st, g, mk_app(mk_const("eq_sym"), {a, y, x, goal_term(st, ng)}));
  return {ng};
}

Goals exfalso(ProofState& st, int g) {
  if (!st.env.inductive("False")) tactic_error("exfalso needs False.");
  int ng = new_goal(st, goal_ctx(st, g), mk_ind("False"));
  close_goal(st, g, false_elim(goal_term(st, ng), goal_type(st, g)));
  return {ng};
}

Goals contradiction(ProofState& st, int g) {
  const LocalContext ctx = goal_ctx(st, g);
  Term goal = goal_type(st, g);
  const int n = static_cast<int>(ctx.size());
  auto is_false = [&](const Term& t) {
    Term w = whnf(st.env, ctx, t);
    return w.kind() == TermKind::Ind && w.name() == "False";
  };
  for (int i = 0; i < n; ++i) {
    if (is_false(ctx.type_of(i))) {
      close_goal(st, g, false_elim(mk_rel(i), goal));
      return {};
    }
  }
  for (int i = 0; i < n; ++i) {
    Term w = whnf(st.env, ctx, ctx.type_of(i));
    if (w.kind() != TermKind::Prod || occurs_rel(w.body(), 0)) continue;
    Term codomain = lift(w.body(), -1, 1);
    if (!is_false(codomain)) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (convertible(st.env, ctx, ctx.type_of(j), w.domain())) {
        close_goal(st, g, false_elim(mk_app(mk_rel(i), {mk_rel(j)}), goal));
        return {};
      }
    }
  }
  tactic_error("No such contradiction.");
}

Goals assert_tac(ProofState& st, int g, const ExprPtr& e, const std::optional<std::string>& name) {
  const LocalContext ctx = goal_ctx(st, g);
  Elaborator el(st.env, st.metas);
  Term p = st.metas.instantiate(el.type(ctx, e).term);
  std::string n = name ? *name : fresh_name("H", names_in(ctx));
  if (name && ctx.find(*name)) tactic_error(*name + " is already used.");
  int g1 = new_goal(st, ctx, p);
  int g2 = new_goal(st, ctx.push(n, p), lift(goal_type(st, g), 1));
  close_goal(st, g, mk_app(mk_lambda(n, p, goal_term(st, g2)), {goal_term(st, g1)}));
  return {g1, g2};
}

Goals simpl_tac(ProofState& st, int g, const std::optional<std::string>& hyp) {
  const LocalContext ctx = goal_ctx(st, g);
  if (!hyp) {
    return {replace_goal(st, g, ctx, simpl(st.env, ctx, goal_type(st, g)))};
  }
  std::size_t p = find_hyp(ctx, *hyp);
  LocalContext pre = ctx.prefix(p);
  Term t = simpl(st.env, pre, st.metas.instantiate(ctx.entries()[p].type));
  return {replace_goal(st, g, with_hyp_type(ctx, p, t), goal_type(st, g))};
}

Goals unfold(ProofState& st, int g, const std::vector<std::string>& names) {
  const LocalContext ctx = goal_ctx(st, g);
  Term t = goal_type(st, g);
  for (const auto& n : names) {
    const ConstantDecl* c = st.env.constant(n);
    if (!c || !c->body || !c->transparent) tactic_error(n + " is opaque or has no definition.");
    const Term body = *c->body;
    t = map_term(t, [&](const Term& x, int) -> std::optional<Term> {
      if (x.kind() == TermKind::Const && x.name() == n) return body;
      return std::nullopt;
    });
    t = beta_normalize(t);
  }
  return {replace_goal(st, g, ctx, t)};
}

Goals clear(ProofState& st, int g, const std::vector<std::string>& names) {
  int cur = g;
  for (const auto& n : names) cur = clear_hyp(st, cur, find_hyp(goal_ctx(st, cur), n));
  return {cur};
}

void close_by_oracle(ProofState& st, int g, const std::string& procedure,
                     const std::string& certificate) {
  const LocalContext ctx = goal_ctx(st, g);
  Term stmt = goal_type(st, g);
  const auto& es = ctx.entries();
  for (std::size_t i = es.size(); i-- > 0;) {
    if (es[i].body) {
      stmt = mk_let(es[i].name, *es[i].body, es[i].type, stmt);
    } else {
      stmt = mk_prod(es[i].name, st.metas.instantiate(es[i].type), stmt);
    }
  }
  std::string name;
  do {
    name = st.name + "_" + procedure + std::to_string(++st.oracle_count);
  } while (st.env.contains(name));
  ConstantDecl d;
  d.name = name;
  d.type = stmt;
  d.kind = ConstantKind::Oracle;
  d.transparent = false;
  d.oracle_procedure = procedure;
  d.certificate = certificate;
  st.env = add_constant(st.env, std::move(d));
  std::vector<Term> args;
  const std::size_t n = es.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (!es[q].body) args.push_back(mk_rel(static_cast<int>(n - 1 - q)));
  }
  close_goal(st, g, mk_app(mk_const(name), args));
}

}  // namespace hurry::tactics
