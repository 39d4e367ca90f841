#include <algorithm>
#include <cctype>

#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"
#include "hurry/tactics.hpp"
#include "hurry/typing.hpp"

namespace hurry::tactics {

namespace {

struct Target {
  Term term;
  InductiveView view;
  const InductiveDecl* decl = nullptr;
  Goals premises;  // goals for arguments supplied to a quantified term
};

Target target_of(ProofState& st, int g, const Term& t0, const Term& type0) {
  const LocalContext ctx = goal_ctx(st, g);
  Target tg;
  Term t = t0;
  Term ty = st.metas.instantiate(type0);
  for (int guard = 0; guard < 64; ++guard) {
    Term w = whnf(st.env, ctx, ty);
    if (auto v = as_inductive_app(st.env, w)) {
      tg.term = st.metas.instantiate(t);
      tg.view = *v;
      tg.decl = st.env.inductive(v->ind);
      return tg;
    }
    if (w.kind() != TermKind::Prod) break;
    if (occurs_rel(w.body(), 0)) {
      tactic_error("Unable to find an instance for the variable " + w.binder_name() + ".",
                   ErrorKind::UnificationFailure);
    }
    Term m = st.metas.fresh(ctx, w.domain(), w.binder_name());
    tg.premises.push_back(m.meta_id());
    t = mk_app(t, {m});
    ty = subst(w.body(), m);
  }
  tactic_error("The type of \"" + print_term(st.env, ctx, st.metas.instantiate(t0)) +
                   "\" is not an inductive type.",
               ErrorKind::NotAnInductiveHypothesis);
}

/// Binders of the return predicate: the indices, then (if dependent) the value.
std::vector<Binder> predicate_binders(const Target& tg, bool dependent) {
  std::vector<Binder> out;
  Term ar = instantiate(tg.decl->arity, tg.view.params);
  while (ar.kind() == TermKind::Prod) {
    out.push_back({ar.binder_name(), ar.domain()});
    ar = ar.body();
  }
  if (dependent) {
    const int ni = static_cast<int>(out.size());
    std::vector<Term> args;
    for (const auto& p : tg.view.params) args.push_back(lift(p, ni));
    for (int i = ni - 1; i >= 0; --i) args.push_back(mk_rel(i));
    out.push_back({"x", mk_app(mk_ind(tg.view.ind), std::move(args))});
  }
  return out;
}

Term close_lams(const std::vector<Binder>& bs, Term body) {
  for (std::size_t i = bs.size(); i-- > 0;) body = mk_lambda(bs[i].name, bs[i].type, body);
  return body;
}

Term motive(const Target& tg, const Term& goal, bool dependent) {
  // Abstract the value first so that occurrences inside it are not touched
  // by the index abstraction.
  Term body;
  if (dependent) {
    std::vector<Term> idx = tg.view.indices;
    Term inner = abstract_occurrences(goal, tg.term);
    // inner is under the value binder; move the index abstraction outside it.
    Term r = inner;
    const int ni = static_cast<int>(idx.size());
    for (int i = 0; i < ni; ++i) {
      r = abstract_occurrences(r, lift(idx[static_cast<std::size_t>(i)], 1 + i));
    }
    // r: binders [x, i1, ..., ik] with x outermost; reorder to [i1..ik, x].
    body = map_term(r, [&](const Term& v, int depth) -> std::optional<Term> {
      if (v.kind() != TermKind::Rel || v.rel_index() < depth) return std::nullopt;
      const int k = v.rel_index() - depth;
      if (k > ni) return std::nullopt;
      if (k == ni) return mk_rel(depth);      // x: was outermost, becomes innermost
      return mk_rel(k + 1 + depth);           // index binders shift outward by one
    });
  } else {
    body = abstract_terms(goal, tg.view.indices);
  }
  return close_lams(predicate_binders(tg, dependent), body);
}

}  // namespace

Goals elim(ProofState& st, int g, const ExprPtr& e) {
  Elaborated r = elaborate_in(st, g, e);
  Target tg = target_of(st, g, r.term, r.type);
  const LocalContext ctx = goal_ctx(st, g);
  const std::string scheme = tg.view.ind + "_ind";
  const ConstantDecl* sc = st.env.constant(scheme);
  if (!sc) tactic_error("No induction principle " + scheme + ".");
  const bool dependent = !tg.decl->sort.is_prop();
  Term goal = goal_type(st, g);
  Term p = motive(tg, goal, dependent);

  Term t = sc->type;
  std::vector<Term> args = tg.view.params;
  for (const auto& param : tg.view.params) t = subst(t.body(), param);
  // t: forall P, cases..., forall idx, forall x, P idx x
  t = subst(t.body(), p);
  args.push_back(p);
  Goals cases;
  const std::size_t nc = tg.decl->constructors.size();
  for (std::size_t i = 0; i < nc; ++i) {
    Term ct = beta_normalize(t.domain());
    int cg = new_goal(st, ctx, ct);
    cases.push_back(cg);
    args.push_back(goal_term(st, cg));
    t = lift(t.body(), -1, 1);
  }
  for (const auto& ix : tg.view.indices) args.push_back(ix);
  args.push_back(tg.term);
  close_goal(st, g, mk_app(mk_const(scheme), args));
  cases.insert(cases.end(), tg.premises.begin(), tg.premises.end());
  return cases;
}

Goals case_term(ProofState& st, int g, const Term& term, const Term& type) {
  Target tg = target_of(st, g, term, type);
  const LocalContext ctx = goal_ctx(st, g);
  Term goal = goal_type(st, g);
  Term pred = motive(tg, goal, true);
  const auto& decl = *tg.decl;
  const int np = static_cast<int>(decl.num_params());
  Goals out;
  std::vector<Term> branches;
  for (std::size_t j = 0; j < decl.constructors.size(); ++j) {
    const int ordinal = static_cast<int>(j + 1);
    const int n = static_cast<int>(decl.constructor_arity(ordinal));
    Term ct = instantiate(decl.constructors[j].type, tg.view.params);
    std::vector<Binder> bs;
    for (int k = 0; k < n; ++k) {
      bs.push_back({ct.binder_name(), ct.domain()});
      ct = ct.body();
    }
    std::vector<Term> cargs;
    for (const auto& prm : tg.view.params) cargs.push_back(lift(prm, n));
    for (int i = n - 1; i >= 0; --i) cargs.push_back(mk_rel(i));
    auto concl = app_args(ct);
    std::vector<Term> pargs(concl.begin() + np, concl.end());
    pargs.push_back(mk_app(mk_construct(tg.view.ind, ordinal), cargs));
    Term bt = beta_normalize(mk_app(lift(pred, n), pargs));
    for (int k = n; k-- > 0;) {
      const auto& b = bs[static_cast<std::size_t>(k)];
      bt = mk_prod(b.name, b.type, bt);
    }
    int bg = new_goal(st, ctx, bt);
    out.push_back(bg);
    branches.push_back(goal_term(st, bg));
  }
  close_goal(st, g, mk_match(tg.view.ind, tg.term, pred, std::move(branches)));
  out.insert(out.end(), tg.premises.begin(), tg.premises.end());
  return out;
}

Goals case_tac(ProofState& st, int g, const ExprPtr& e) {
  Elaborated r = elaborate_in(st, g, e);
  return case_term(st, g, r.term, r.type);
}

namespace {

bool ends_in_digit(const std::string& s) {
  return !s.empty() && std::isdigit(static_cast<unsigned char>(s.back()));
}

/// Names for the constructor arguments of a branch. Recursive arguments are
/// named after the variable being destructed.
std::vector<std::string> branch_names(const ProofState& st, const LocalContext& ctx,
                                      const Term& branch_type, int arity, const std::string& ind,
                                      const std::string& var,
                                      const std::vector<std::string>& given,
                                      std::set<std::string>& used) {
  std::vector<Term> doms;
  std::vector<std::string> binder_names;
  Term t = branch_type;
  LocalContext c = ctx;
  std::vector<LocalContext> ctxs;
  for (int k = 0; k < arity; ++k) {
    doms.push_back(t.domain());
    binder_names.push_back(t.binder_name());
    ctxs.push_back(c);
    c.push_in_place(t.binder_name(), t.domain());
    t = t.body();
  }
  int same = 0;
  for (const auto& d : doms) {
    Term h = app_head(d);
    if (h.kind() == TermKind::Ind && h.name() == ind) ++same;
  }
  std::vector<std::string> out;
  int seen_same = 0;
  for (int k = 0; k < arity; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    std::string base;
    if (uk < given.size() && given[uk] != "_" && given[uk] != "?") {
      base = given[uk];
      if (used.count(base)) tactic_error(base + " is already used.");
      out.push_back(base);
      used.insert(base);
      continue;
    }
    Term h = app_head(doms[uk]);
    if (!var.empty() && h.kind() == TermKind::Ind && h.name() == ind) {
      ++seen_same;
      if (same >= 2) {
        base = var + (ends_in_digit(var) ? "_" : "") + std::to_string(seen_same);
      } else {
        base = var;
      }
    } else if (!binder_names[uk].empty() && binder_names[uk] != "_") {
      base = binder_names[uk];
    } else {
      base = default_name(st.env, ctxs[uk], doms[uk]);
    }
    std::string n = fresh_name(base, used);
    used.insert(n);
    out.push_back(n);
  }
  return out;
}

}  // namespace

Goals destruct(ProofState& st, int g, const ExprPtr& e, const std::optional<IntroPattern>& pat) {
  const LocalContext ctx = goal_ctx(st, g);
  std::optional<std::size_t> var_pos;
  if (e->kind == ExprKind::Ident) var_pos = ctx.find(e->name);

  Elaborated r = elaborate_in(st, g, e);
  int cur = g;
  std::vector<std::string> reverted;
  std::string var;
  if (var_pos) {
    var = e->name;
    if (*var_pos + 1 < ctx.size()) {
      cur = revert_from(st, cur, *var_pos + 1, &reverted);
    }
    r.term = mk_rel(0);
  }
  const LocalContext cctx = goal_ctx(st, cur);
  Target tg = target_of(st, cur, r.term, var_pos ? cctx.type_of(0) : r.type);
  Goals branches = case_term(st, cur, r.term, var_pos ? cctx.type_of(0) : r.type);
  const std::size_t nc = tg.decl->constructors.size();
  Goals extra(branches.begin() + static_cast<long>(nc), branches.end());
  branches.resize(nc);

  if (pat && pat->alternatives.size() != nc && !(nc == 0 && pat->alternatives.size() == 1)) {
    tactic_error("Expects a disjunctive pattern with " + std::to_string(nc) + " branches.");
  }
  Goals out;
  for (std::size_t j = 0; j < nc; ++j) {
    int bg = branches[j];
    const int arity = static_cast<int>(tg.decl->constructor_arity(static_cast<int>(j + 1)));
    std::vector<std::string> given;
    if (pat) given = pat->alternatives[j];
    if (static_cast<int>(given.size()) > arity) {
      tactic_error("Too many names in the pattern for constructor " +
                   tg.decl->constructors[j].name + ".");
    }
    if (var_pos) {
      ProofState saved = st;
      try {
        bg = clear_hyp(st, bg, *var_pos);
      } catch (const Error&) {
        st = std::move(saved);
      }
    }
    std::set<std::string> used = names_in(goal_ctx(st, bg));
    for (const auto& n : reverted) used.insert(n);
    auto names = branch_names(st, goal_ctx(st, bg), goal_type(st, bg), arity, tg.view.ind, var,
                              given, used);
    for (const auto& n : names) bg = intro(st, bg, n);
    for (const auto& n : reverted) bg = intro(st, bg, n);
    out.push_back(bg);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

}  // namespace hurry::tactics
