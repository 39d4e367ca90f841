#include "hurry/elab.hpp"

#include "hurry/error.hpp"
#include "hurry/notation.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"

namespace hurry {

namespace {

const char* infix_head(const std::string& sym) {
  if (sym == "/\\") return "and";
  if (sym == "\\/") return "or";
  if (sym == "~") return "not";
  if (sym == "<=") return "le";
  if (sym == "<") return "lt";
  if (sym == "+") return "plus";
  if (sym == "-") return "minus";
  if (sym == "=") return "eq";
  if (sym == "::") return "cons";
  if (sym == "++") return "app";
  return nullptr;
}

Term close_prods(const std::vector<Binder>& bs, Term body) {
  for (std::size_t i = bs.size(); i-- > 0;) body = mk_prod(bs[i].name, bs[i].type, body);
  return body;
}

Term close_lams(const std::vector<Binder>& bs, Term body) {
  for (std::size_t i = bs.size(); i-- > 0;) body = mk_lambda(bs[i].name, bs[i].type, body);
  return body;
}

std::vector<std::string> flat_names(const std::vector<SurfaceBinder>& bs) {
  std::vector<std::string> out;
  for (const auto& b : bs) out.insert(out.end(), b.names.begin(), b.names.end());
  return out;
}

}  // namespace

Term Elaborator::whnf_z(const LocalContext& ctx, const Term& t) {
  return whnf(env_, ctx, metas_.instantiate(t));
}

Term Elaborator::hole_type(const LocalContext& ctx, Position pos, const std::string& label) {
  return metas_.fresh(ctx, mk_type(kMaxUniverse - 1), "the type of " + label, pos);
}

Elaborated Elaborator::infer(const LocalContext& ctx, const ExprPtr& e) {
  return elab(ctx, e, std::nullopt);
}

Term Elaborator::check(const LocalContext& ctx, const ExprPtr& e, const Term& expected) {
  return elab(ctx, e, expected).term;
}

Elaborated Elaborator::type(const LocalContext& ctx, const ExprPtr& e) {
  Elaborated r = infer(ctx, e);
  Term w = whnf_z(ctx, r.type);
  if (w.kind() == TermKind::Sort) return {r.term, w};
  if (w.kind() == TermKind::Meta) return {r.term, mk_type(kMaxUniverse - 1)};
  throw Error(ErrorKind::NotASort,
              "The term \"" + print_term(env_, ctx, metas_.instantiate(r.term)) +
                  "\" has type \"" + print_term(env_, ctx, metas_.instantiate(r.type)) +
                  "\" which should be Set, Prop or Type.",
              e->pos);
}

std::vector<Binder> Elaborator::telescope(LocalContext& ctx, const std::vector<SurfaceBinder>& bs) {
  std::vector<Binder> out;
  for (const auto& b : bs) {
    Term ty;
    if (b.type) {
      ty = type(ctx, b.type).term;
    } else {
      ty = hole_type(ctx, {}, b.names.empty() ? "_" : b.names.front());
    }
    for (std::size_t i = 0; i < b.names.size(); ++i) {
      Term t = lift(ty, static_cast<int>(i));
      out.push_back({b.names[i], t});
      ctx.push_in_place(b.names[i], t);
    }
  }
  return out;
}

void Elaborator::coerce(const LocalContext& ctx, const Term& term, const Term& actual,
                        const Term& expected, Position pos) {
  if (unify(env_, metas_, ctx, actual, expected)) return;
  Term wa = whnf_z(ctx, actual);
  Term we = whnf_z(ctx, expected);
  if (wa.kind() == TermKind::Sort && we.kind() == TermKind::Sort && sort_leq(wa.sort(), we.sort())) {
    return;
  }
  if (!metas_.instantiate(actual).has_meta() && !metas_.instantiate(expected).has_meta() &&
      convertible(env_, ctx, metas_.instantiate(actual), metas_.instantiate(expected), true)) {
    return;
  }
  throw Error(ErrorKind::TypeMismatch,
              "The term \"" + print_term(env_, ctx, metas_.instantiate(term)) + "\" has type \"" +
                  print_term(env_, ctx, metas_.instantiate(actual)) +
                  "\" while it is expected to have type \"" +
                  print_term(env_, ctx, metas_.instantiate(expected)) + "\".",
              pos);
}

Elaborated Elaborator::typed(const LocalContext& ctx, const Term& t) {
  MetaTyper typer = metas_.typer();
  return {t, infer_type(env_, ctx, metas_.instantiate(t), &typer)};
}

Elaborated Elaborator::global(const LocalContext& ctx, const std::string& name, Position pos,
                              bool explicit_args) {
  auto ref = env_.lookup(name);
  if (!ref) {
    throw Error(ErrorKind::UnknownIdentifier,
                "The reference " + name + " was not found in the current environment.", pos);
  }
  Term t;
  switch (ref->kind) {
    case GlobalKind::Constant:
      t = mk_const(name);
      break;
    case GlobalKind::Inductive:
      t = mk_ind(name);
      break;
    case GlobalKind::Constructor:
      t = mk_construct(declaration_name(*env_.declarations()[ref->index]), ref->ordinal);
      break;
  }
  Elaborated r{t, env_.type_of_global(t)};
  if (explicit_args) return r;
  const int k = implicit_arguments(name);
  for (int i = 0; i < k; ++i) {
    Term w = whnf(env_, ctx, r.type);
    if (w.kind() != TermKind::Prod) break;
    Term m = metas_.fresh(ctx, w.domain(), "the implicit argument " + w.binder_name() + " of " + name,
                          pos);
    r = {mk_app(r.term, {m}), subst(w.body(), m)};
  }
  return r;
}

Elaborated Elaborator::ident(const LocalContext& ctx, const Expr& e, bool explicit_args) {
  if (auto p = ctx.find(e.name)) {
    int idx = ctx.index_of_position(*p);
    return {mk_rel(idx), ctx.type_of(idx)};
  }
  if (auto it = pending_.find(e.name); it != pending_.end()) {
    return {mk_ind(e.name), it->second};
  }
  return global(ctx, e.name, e.pos, explicit_args);
}

Elaborated Elaborator::apply(const LocalContext& ctx, Elaborated f,
                             const std::vector<ExprPtr>& args, std::size_t first, Position pos) {
  for (std::size_t i = first; i < args.size(); ++i) {
    Term w = whnf_z(ctx, f.type);
    if (w.kind() == TermKind::Meta && !metas_.solved(w.meta_id())) {
      // Refine the hole to an arrow in its own context.
      const LocalContext mctx = metas_.info(w.meta_id()).ctx;
      Term a = hole_type(mctx, pos, "_");
      Term b = metas_.fresh(mctx.push("x", a), mk_type(kMaxUniverse - 1), "the type of _", pos);
      metas_.assign(w.meta_id(), mk_prod("x", a, b));
      w = whnf_z(ctx, f.type);
    }
    if (w.kind() != TermKind::Prod) {
      throw Error(ErrorKind::NotAFunction,
                  "Illegal application: the term \"" +
                      print_term(env_, ctx, metas_.instantiate(f.term)) + "\" of type \"" +
                      print_term(env_, ctx, metas_.instantiate(f.type)) +
                      "\" cannot be applied to more arguments.",
                  args[i]->pos.valid() ? args[i]->pos : pos);
    }
    Term a = check(ctx, args[i], w.domain());
    f = {mk_app(f.term, {a}), subst(w.body(), a)};
  }
  return f;
}

Elaborated Elaborator::apply_terms(const LocalContext& ctx, Elaborated f,
                                   std::vector<Elaborated> args, Position pos) {
  for (auto& a : args) {
    Term w = whnf_z(ctx, f.type);
    if (w.kind() != TermKind::Prod) {
      throw Error(ErrorKind::NotAFunction,
                  "Illegal application: the term \"" +
                      print_term(env_, ctx, metas_.instantiate(f.term)) +
                      "\" cannot be applied to more arguments.",
                  pos);
    }
    coerce(ctx, a.term, a.type, w.domain(), pos);
    f = {mk_app(f.term, {a.term}), subst(w.body(), a.term)};
  }
  return f;
}

Elaborated Elaborator::op(const LocalContext& ctx, const Expr& e,
                          const std::optional<Term>& expected) {
  const std::string& sym = e.name;
  (void)expected;
  if (sym == "->") {
    Elaborated a = type(ctx, e.args[0]);
    Elaborated b = type(ctx, e.args[1]);
    return {mk_arrow(a.term, b.term), mk_sort(product_sort(a.type.sort(), b.type.sort()))};
  }
  if (sym == "<>") {
    Elaborated eq = apply(ctx, global(ctx, "eq", e.pos, false), e.args, 0, e.pos);
    return apply_terms(ctx, global(ctx, "not", e.pos, false), {eq}, e.pos);
  }
  if (sym == "*") {
    Elaborated l = infer(ctx, e.args[0]);
    Term w = whnf_z(ctx, l.type);
    const char* head = w.kind() == TermKind::Sort ? "prod" : "mult";
    Elaborated f = apply_terms(ctx, global(ctx, head, e.pos, false), {l}, e.pos);
    return apply(ctx, f, e.args, 1, e.pos);
  }
  if (sym == "^") {
    std::string name;
    if (auto it = notation_.find(sym); it != notation_.end()) {
      name = it->second;
    } else if (auto jt = env_.notation_bindings().find(sym); jt != env_.notation_bindings().end()) {
      name = jt->second;
    } else {
      throw Error(ErrorKind::UnknownNotation, "Unknown interpretation for notation \"_ ^ _\".",
                  e.pos);
    }
    Expr head;
    head.kind = ExprKind::Ident;
    head.name = name;
    head.pos = e.pos;
    return apply(ctx, ident(ctx, head, false), e.args, 0, e.pos);
  }
  const char* head = infix_head(sym);
  if (!head) {
    throw Error(ErrorKind::UnknownNotation, "Unknown notation \"" + sym + "\".", e.pos);
  }
  if (!env_.contains(head)) {
    throw Error(ErrorKind::UnknownNotation,
                "Unknown interpretation for notation \"_ " + sym + " _\".", e.pos);
  }
  return apply(ctx, global(ctx, head, e.pos, false), e.args, 0, e.pos);
}

Elaborated Elaborator::binder(const LocalContext& ctx, const Expr& e,
                              const std::optional<Term>& expected) {
  if (e.kind == ExprKind::Let) {
    const std::string& name = e.binders.front().names.front();
    Term ty;
    Term v;
    if (e.type) {
      ty = type(ctx, e.type).term;
      v = check(ctx, e.value, ty);
    } else {
      Elaborated r = infer(ctx, e.value);
      v = r.term;
      ty = r.type;
    }
    std::optional<Term> inner_expected;
    if (expected) inner_expected = lift(*expected, 1);
    Elaborated body = elab(ctx.push(name, ty, v), e.body, inner_expected);
    return {mk_let(name, v, ty, body.term), subst(body.type, v)};
  }
  if (e.kind == ExprKind::Forall) {
    LocalContext inner = ctx;
    auto tele = telescope(inner, e.binders);
    Elaborated body = type(inner, e.body);
    Sort s = body.type.sort();
    MetaTyper typer = metas_.typer();
    for (std::size_t i = tele.size(); i-- > 0;) {
      Sort d = Sort::type(kMaxUniverse - 1);
      try {
        d = infer_sort(env_, inner.prefix(ctx.size() + i), metas_.instantiate(tele[i].type), &typer);
      } catch (const Error&) {
      }
      s = product_sort(d, s);
    }
    return {close_prods(tele, body.term), mk_sort(s)};
  }
  if (e.kind == ExprKind::Exists) {
    LocalContext inner = ctx;
    auto tele = telescope(inner, e.binders);
    Term body = check(inner, e.body, mk_prop());
    if (!env_.inductive("ex")) {
      throw Error(ErrorKind::UnknownNotation, "Unknown interpretation for notation \"exists\".",
                  e.pos);
    }
    for (std::size_t i = tele.size(); i-- > 0;) {
      body = mk_app(mk_ind("ex"), {tele[i].type, mk_lambda(tele[i].name, tele[i].type, body)});
    }
    return {body, mk_prop()};
  }
  // fun
  LocalContext inner = ctx;
  std::vector<Binder> tele;
  std::optional<Term> exp = expected;
  for (const auto& b : e.binders) {
    Term given;
    if (b.type) given = type(inner, b.type).term;
    for (std::size_t i = 0; i < b.names.size(); ++i) {
      std::optional<Term> w;
      if (exp) {
        Term x = whnf_z(inner, *exp);
        if (x.kind() == TermKind::Prod) w = x;
      }
      Term dom;
      if (given) {
        dom = lift(given, static_cast<int>(i));
        if (w) unify(env_, metas_, inner, dom, w->domain());
      } else if (w) {
        dom = w->domain();
      } else {
        dom = hole_type(inner, e.pos, b.names[i]);
      }
      tele.push_back({b.names[i], dom});
      inner.push_in_place(b.names[i], dom);
      exp = w ? std::optional<Term>(w->body()) : std::nullopt;
    }
  }
  Elaborated body = elab(inner, e.body, exp);
  return {close_lams(tele, body.term), close_prods(tele, body.type)};
}

Pattern Elaborator::normal_pattern(const Pattern& p, const std::string& ind) {
  if (p.kind == Pattern::Kind::Num) {
    Pattern out;
    out.kind = Pattern::Kind::Ctor;
    out.name = "O";
    out.pos = p.pos;
    for (unsigned long long i = 0; i < p.num; ++i) {
      Pattern s;
      s.kind = Pattern::Kind::Ctor;
      s.name = "S";
      s.pos = p.pos;
      s.args.push_back(out);
      out = s;
    }
    if (ind != "nat") {
      throw Error(ErrorKind::ElaborationError,
                  "Found a numeral while a constructor of " + ind + " is expected.", p.pos);
    }
    return out;
  }
  if (p.kind == Pattern::Kind::Wild) return p;
  auto ref = env_.lookup(p.name);
  if (!ref || ref->kind != GlobalKind::Constructor) {
    if (p.kind == Pattern::Kind::Ctor && !p.args.empty()) {
      throw Error(ErrorKind::ElaborationError, "Unknown constructor: " + p.name + ".", p.pos);
    }
    Pattern out = p;
    out.kind = Pattern::Kind::Name;
    return out;
  }
  std::string owner = declaration_name(*env_.declarations()[ref->index]);
  if (owner != ind) {
    throw Error(ErrorKind::ElaborationError,
                "Found a constructor of inductive type " + owner +
                    " while a constructor of " + ind + " is expected.",
                p.pos);
  }
  Pattern out = p;
  out.kind = Pattern::Kind::Ctor;
  return out;
}

Term Elaborator::compile_match(const LocalContext& ctx, std::vector<Elaborated> cols,
                               std::vector<MatchRow> rows, const Term& rtype, Position pos) {
  if (rows.empty()) {
    throw Error(ErrorKind::ElaborationError, "Non exhaustive pattern-matching.", pos);
  }
  if (cols.empty()) {
    const MatchRow& row = rows.front();
    LocalContext c = ctx;
    const int k = static_cast<int>(row.lets.size());
    for (int i = 0; i < k; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      c.push_in_place(row.lets[ui].name, lift(row.lets[ui].type, i), lift(row.values[ui], i));
    }
    Term body = check(c, row.body, lift(rtype, k));
    for (int i = k; i-- > 0;) {
      const auto ui = static_cast<std::size_t>(i);
      body = mk_let(row.lets[ui].name, lift(row.values[ui], i), lift(row.lets[ui].type, i), body);
    }
    return body;
  }

  const Elaborated col = cols.front();
  Term sty = whnf_z(ctx, col.type);
  auto view = as_inductive_app(env_, sty);
  bool any_ctor = false;
  for (const auto& r : rows) {
    const Pattern& p = r.pats.front();
    if (p.kind == Pattern::Kind::Num || p.kind == Pattern::Kind::Ctor) any_ctor = true;
    if (p.kind == Pattern::Kind::Name && env_.lookup(p.name) &&
        env_.lookup(p.name)->kind == GlobalKind::Constructor) {
      any_ctor = true;
    }
  }
  if (!any_ctor) {
    for (auto& r : rows) {
      const Pattern& p = r.pats.front();
      if (p.kind == Pattern::Kind::Name) {
        r.lets.push_back({p.name, col.type});
        r.values.push_back(col.term);
      }
      r.pats.erase(r.pats.begin());
    }
    cols.erase(cols.begin());
    return compile_match(ctx, std::move(cols), std::move(rows), rtype, pos);
  }
  if (!view) {
    throw Error(ErrorKind::ElaborationError,
                "The term \"" + print_term(env_, ctx, metas_.instantiate(col.term)) +
                    "\" has type \"" + print_term(env_, ctx, sty) +
                    "\" which is not an inductive type.",
                pos);
  }
  for (auto& r : rows) r.pats.front() = normal_pattern(r.pats.front(), view->ind);
  const InductiveDecl& decl = *env_.inductive(view->ind);
  const int np = static_cast<int>(decl.num_params());
  const int ni = static_cast<int>(decl.num_indices());
  (void)np;

  std::vector<Binder> pbinders;
  {
    Term ar = instantiate(decl.arity, view->params);
    while (ar.kind() == TermKind::Prod) {
      pbinders.push_back({ar.binder_name(), ar.domain()});
      ar = ar.body();
    }
    std::vector<Term> iargs;
    for (const auto& p : view->params) iargs.push_back(lift(p, ni));
    for (int i = ni - 1; i >= 0; --i) iargs.push_back(mk_rel(i));
    pbinders.push_back({"_", mk_app(mk_ind(view->ind), std::move(iargs))});
  }
  Term pred = close_lams(pbinders, lift(rtype, ni + 1));

  std::vector<Term> branches;
  for (std::size_t j = 0; j < decl.constructors.size(); ++j) {
    const int ordinal = static_cast<int>(j + 1);
    const std::string& cname = decl.constructors[j].name;
    const int n = static_cast<int>(decl.constructor_arity(ordinal));
    std::vector<std::string> names(static_cast<std::size_t>(n), "_");
    bool seen = false;
    for (const auto& r : rows) {
      const Pattern& p = r.pats.front();
      if (p.kind != Pattern::Kind::Ctor || p.name != cname) continue;
      if (static_cast<int>(p.args.size()) != n) {
        throw Error(ErrorKind::ElaborationError,
                    "The constructor " + cname + " expects " + std::to_string(n) + " argument" +
                        (n == 1 ? "" : "s") + ".",
                    p.pos);
      }
      if (!seen) {
        for (int k = 0; k < n; ++k) {
          const Pattern& a = p.args[static_cast<std::size_t>(k)];
          if (a.kind == Pattern::Kind::Name) names[static_cast<std::size_t>(k)] = a.name;
        }
      }
      seen = true;
    }
    Term ct = instantiate(decl.constructors[j].type, view->params);
    LocalContext bctx = ctx;
    std::vector<Binder> bbinders;
    std::vector<Term> doms;
    for (int k = 0; k < n; ++k) {
      bbinders.push_back({names[static_cast<std::size_t>(k)], ct.domain()});
      bctx.push_in_place(names[static_cast<std::size_t>(k)], ct.domain());
      doms.push_back(ct.domain());
      ct = ct.body();
    }
    std::vector<Term> cargs;
    for (const auto& prm : view->params) cargs.push_back(lift(prm, n));
    for (int i = n - 1; i >= 0; --i) cargs.push_back(mk_rel(i));
    Term capp = mk_app(mk_construct(view->ind, ordinal), cargs);

    std::vector<Elaborated> ncols;
    for (int k = 0; k < n; ++k) {
      ncols.push_back({mk_rel(n - 1 - k), lift(doms[static_cast<std::size_t>(k)], n - k)});
    }
    for (std::size_t c = 1; c < cols.size(); ++c) {
      ncols.push_back({lift(cols[c].term, n), lift(cols[c].type, n)});
    }
    std::vector<MatchRow> nrows;
    for (const auto& r : rows) {
      const Pattern& p = r.pats.front();
      if (p.kind == Pattern::Kind::Ctor && p.name != cname) continue;
      MatchRow nr;
      nr.body = r.body;
      for (std::size_t i = 0; i < r.lets.size(); ++i) {
        nr.lets.push_back({r.lets[i].name, lift(r.lets[i].type, n)});
        nr.values.push_back(lift(r.values[i], n));
      }
      if (p.kind == Pattern::Kind::Ctor) {
        nr.pats = p.args;
      } else {
        Pattern w;
        w.kind = Pattern::Kind::Wild;
        nr.pats.assign(static_cast<std::size_t>(n), w);
        if (p.kind == Pattern::Kind::Name) {
          nr.lets.push_back({p.name, lift(col.type, n)});
          nr.values.push_back(capp);
        }
      }
      nr.pats.insert(nr.pats.end(), r.pats.begin() + 1, r.pats.end());
      nrows.push_back(std::move(nr));
    }
    if (nrows.empty()) {
      throw Error(ErrorKind::ElaborationError,
                  "Non exhaustive pattern-matching: no clause found for pattern " + cname + ".",
                  pos);
    }
    Term body = compile_match(bctx, std::move(ncols), std::move(nrows), lift(rtype, n), pos);
    branches.push_back(close_lams(bbinders, body));
  }
  return mk_match(view->ind, col.term, pred, std::move(branches));
}

Elaborated Elaborator::match(const LocalContext& ctx, const Expr& e,
                             const std::optional<Term>& expected) {
  if (!e.type) {
    Elaborated s = infer(ctx, e.args[0]);
    Term rtype = expected ? *expected : hole_type(ctx, e.pos, "the match");
    std::vector<MatchRow> rows;
    for (const auto& br : e.branches) rows.push_back({{br.pattern}, br.body, {}, {}});
    Term t = compile_match(ctx, {s}, std::move(rows), rtype, e.pos);
    return {t, rtype};
  }
  Elaborated s = infer(ctx, e.args[0]);
  Term sty = whnf_z(ctx, s.type);
  auto view = as_inductive_app(env_, sty);
  if (!view) {
    throw Error(ErrorKind::ElaborationError,
                "The term \"" + print_term(env_, ctx, metas_.instantiate(s.term)) +
                    "\" has type \"" + print_term(env_, ctx, sty) +
                    "\" which is not an inductive type.",
                e.pos);
  }
  const InductiveDecl& decl = *env_.inductive(view->ind);
  const int np = static_cast<int>(decl.num_params());
  const int ni = static_cast<int>(decl.num_indices());

  // Return predicate over the indices and the matched value.
  LocalContext pctx = ctx;
  std::vector<Binder> pbinders;
  {
    Term ar = instantiate(decl.arity, view->params);
    while (ar.kind() == TermKind::Prod) {
      pbinders.push_back({ar.binder_name(), ar.domain()});
      pctx.push_in_place(ar.binder_name(), ar.domain());
      ar = ar.body();
    }
    std::vector<Term> iargs;
    for (const auto& p : view->params) iargs.push_back(lift(p, ni));
    for (int i = ni - 1; i >= 0; --i) iargs.push_back(mk_rel(i));
    Term ity = mk_app(mk_ind(view->ind), std::move(iargs));
    std::string as = e.as_name.empty() ? "_" : e.as_name;
    pbinders.push_back({as, ity});
    pctx.push_in_place(as, ity);
  }
  Term pbody;
  if (e.type) {
    pbody = type(pctx, e.type).term;
  } else if (expected) {
    pbody = lift(*expected, ni + 1);
  } else {
    pbody = lift(hole_type(ctx, e.pos, "the match"), ni + 1);
  }
  Term pred = close_lams(pbinders, pbody);

  std::vector<Term> branches;
  for (std::size_t j = 0; j < decl.constructors.size(); ++j) {
    const int ordinal = static_cast<int>(j + 1);
    const std::string& cname = decl.constructors[j].name;
    const std::size_t arity = decl.constructor_arity(ordinal);
    const MatchBranch* chosen = nullptr;
    std::vector<Pattern> args;
    for (const auto& br : e.branches) {
      const Pattern& p = br.pattern;
      if (p.kind == Pattern::Kind::Num) {
        if (view->ind != "nat") continue;
        if (p.num == 0 && ordinal == 1) {
          chosen = &br;
          break;
        }
        if (p.num > 0 && ordinal == 2) {
          throw Error(ErrorKind::ElaborationError,
                      "Nested patterns are not supported; write S p and match on p.", p.pos);
        }
        continue;
      }
      if ((p.kind == Pattern::Kind::Ctor || p.kind == Pattern::Kind::Name) && p.name == cname) {
        chosen = &br;
        args = p.args;
        break;
      }
      if (p.kind == Pattern::Kind::Wild ||
          (p.kind == Pattern::Kind::Name && !env_.lookup(p.name))) {
        chosen = &br;
        break;
      }
      if (p.kind == Pattern::Kind::Name || p.kind == Pattern::Kind::Ctor) {
        auto ref = env_.lookup(p.name);
        if (!ref || ref->kind != GlobalKind::Constructor ||
            declaration_name(*env_.declarations()[ref->index]) != view->ind) {
          throw Error(ErrorKind::ElaborationError,
                      "Found a constructor of inductive type " +
                          (ref ? declaration_name(*env_.declarations()[ref->index]) : p.name) +
                          " while a constructor of " + view->ind + " is expected.",
                      p.pos);
        }
      }
    }
    if (!chosen) {
      throw Error(ErrorKind::ElaborationError,
                  "Non exhaustive pattern-matching: no clause found for pattern " + cname + ".",
                  e.pos);
    }
    const Pattern& p = chosen->pattern;
    const bool catch_all = p.kind == Pattern::Kind::Wild ||
                           (p.kind == Pattern::Kind::Name && p.name != cname);
    if (!catch_all && p.kind != Pattern::Kind::Num && args.size() != arity) {
      throw Error(ErrorKind::ElaborationError,
                  "The constructor " + cname + " expects " + std::to_string(arity) +
                      " argument" + (arity == 1 ? "" : "s") + ".",
                  p.pos);
    }
    Term ct = instantiate(decl.constructors[j].type, view->params);
    LocalContext bctx = ctx;
    std::vector<Binder> bbinders;
    for (std::size_t k = 0; k < arity; ++k) {
      std::string name = "_";
      if (!catch_all && k < args.size()) {
        const Pattern& a = args[k];
        if (a.kind == Pattern::Kind::Name) {
          name = a.name;
        } else if (a.kind != Pattern::Kind::Wild) {
          throw Error(ErrorKind::ElaborationError,
                      "Nested patterns are not supported; match on the variable instead.", a.pos);
        }
      }
      bbinders.push_back({name, ct.domain()});
      bctx.push_in_place(name, ct.domain());
      ct = ct.body();
    }
    const int n = static_cast<int>(arity);
    std::vector<Term> cargs;
    for (const auto& prm : view->params) cargs.push_back(lift(prm, n));
    for (int i = n - 1; i >= 0; --i) cargs.push_back(mk_rel(i));
    Term capp = mk_app(mk_construct(view->ind, ordinal), cargs);
    auto concl = app_args(ct);
    std::vector<Term> pargs(concl.begin() + np, concl.end());
    pargs.push_back(capp);
    Term bexp = beta_head(mk_app(lift(pred, n), pargs));
    Term body;
    if (catch_all && p.kind == Pattern::Kind::Name) {
      Term ity = whnf(env_, bctx, lift(sty, n));
      Elaborated b = elab(bctx.push(p.name, ity, capp), chosen->body, lift(bexp, 1));
      body = mk_let(p.name, capp, ity, b.term);
    } else {
      body = check(bctx, chosen->body, bexp);
    }
    branches.push_back(close_lams(bbinders, body));
  }
  std::vector<Term> rargs = view->indices;
  rargs.push_back(s.term);
  Term rtype = beta_head(mk_app(pred, rargs));
  return {mk_match(view->ind, s.term, pred, std::move(branches)), rtype};
}

Elaborated Elaborator::elab(const LocalContext& ctx, const ExprPtr& ep,
                            const std::optional<Term>& expected) {
  const Expr& e = *ep;
  try {
    Elaborated r;
    switch (e.kind) {
      case ExprKind::Ident:
        r = ident(ctx, e, false);
        break;
      case ExprKind::Explicit:
        r = ident(ctx, e, true);
        break;
      case ExprKind::Num:
        if (!env_.inductive("nat")) {
          throw Error(ErrorKind::UnknownNotation, "No interpretation for numerals.", e.pos);
        }
        r = {make_numeral(e.num), mk_ind("nat")};
        break;
      case ExprKind::Sort: {
        Sort s = e.sort;
        r = {mk_sort(s), mk_type(s.is_type() ? s.level + 1 : 1)};
        break;
      }
      case ExprKind::Hole: {
        Term ty = expected ? *expected : hole_type(ctx, e.pos, "_");
        return {metas_.fresh(ctx, ty, "_", e.pos), ty};
      }
      case ExprKind::App: {
        const Expr& h = *e.args[0];
        Elaborated f = h.kind == ExprKind::Ident      ? ident(ctx, h, false)
                       : h.kind == ExprKind::Explicit ? ident(ctx, h, true)
                                                      : infer(ctx, e.args[0]);
        r = apply(ctx, f, e.args, 1, e.pos);
        break;
      }
      case ExprKind::Op:
        r = op(ctx, e, expected);
        break;
      case ExprKind::Pair:
        r = apply(ctx, global(ctx, "pair", e.pos, false), e.args, 0, e.pos);
        break;
      case ExprKind::Forall:
      case ExprKind::Exists:
      case ExprKind::Fun:
      case ExprKind::Let:
        r = binder(ctx, e, expected);
        break;
      case ExprKind::Match:
        r = match(ctx, e, expected);
        break;
    }
    if (expected) coerce(ctx, r.term, r.type, *expected, e.pos);
    return r;
  } catch (Error& err) {
    if (!err.position().valid()) err.set_position(e.pos);
    throw;
  }
}

void require_no_holes(const GlobalEnv& env, const MetaStore& metas, const Term& t,
                      const std::string& what) {
  (void)env;
  auto open = metas.unsolved_in(t);
  if (open.empty()) return;
  const MetaInfo& m = metas.info(open.front());
  if (m.label.rfind("the type of ", 0) == 0 && m.label != "the type of _") {
    throw Error(ErrorKind::CannotInferBinder, "Cannot infer " + m.label + " in " + what + ".",
                m.pos);
  }
  if (m.label.rfind("the implicit argument", 0) == 0) {
    throw Error(ErrorKind::ElaborationError, "Cannot infer " + m.label + " in " + what + ".",
                m.pos);
  }
  throw Error(ErrorKind::ElaborationError, "Cannot infer a term for this placeholder in " + what + ".",
              m.pos);
}

Elaborated elaborate_term(const GlobalEnv& env, const LocalContext& ctx, const ExprPtr& e,
                          const std::optional<Term>& expected) {
  MetaStore ms;
  Elaborator el(env, ms);
  Elaborated r = expected ? Elaborated{el.check(ctx, e, *expected), *expected} : el.infer(ctx, e);
  Term t = ms.instantiate(r.term);
  require_no_holes(env, ms, t, "the term");
  return {t, ms.instantiate(r.type)};
}

ConstantDecl elaborate_definition(const GlobalEnv& env, const Sentence& s) {
  MetaStore ms;
  Elaborator el(env, ms);
  LocalContext ctx;
  auto tele = el.telescope(ctx, s.binders);
  Term body;
  Term type;
  if (s.type) {
    type = el.type(ctx, s.type).term;
    body = el.check(ctx, s.term, type);
  } else {
    Elaborated r = el.infer(ctx, s.term);
    body = r.term;
    type = r.type;
  }
  for (auto& b : tele) b.type = ms.instantiate(b.type);
  ConstantDecl d;
  d.name = s.name;
  d.body = ms.instantiate(close_lams(tele, body));
  d.type = ms.instantiate(close_prods(tele, type));
  require_no_holes(env, ms, *d.body, s.name);
  require_no_holes(env, ms, d.type, s.name);
  d.kind = ConstantKind::Definition;
  return d;
}

std::optional<std::string> where_symbol(const Sentence& s) {
  if (!s.where_notation) return std::nullopt;
  std::string sym;
  for (char c : *s.where_notation) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == ' ') {
      if (!sym.empty()) break;
      continue;
    }
    sym += c;
  }
  if (sym.empty()) return std::nullopt;
  return sym;
}

ConstantDecl elaborate_fixpoint(const GlobalEnv& env, const Sentence& s) {
  MetaStore ms;
  Elaborator el(env, ms);
  if (auto sym = where_symbol(s)) {
    std::string target = s.name;
    if (s.where_term && s.where_term->kind == ExprKind::App &&
        s.where_term->args[0]->kind == ExprKind::Ident) {
      target = s.where_term->args[0]->name;
    }
    if (*sym != "^") {
      throw Error(ErrorKind::UnknownNotation,
                  "Only the \"^\" notation may be introduced by a where clause.", s.pos);
    }
    el.bind_notation(*sym, target);
  }
  LocalContext ctx;
  auto tele = el.telescope(ctx, s.binders);
  Term ret = el.type(ctx, s.type).term;
  const int n = static_cast<int>(tele.size());
  Term full = close_prods(tele, ret);

  LocalContext body_ctx;
  body_ctx.push_in_place(s.name, full);
  std::vector<Binder> lifted;
  for (int i = 0; i < n; ++i) {
    const auto& b = tele[static_cast<std::size_t>(i)];
    lifted.push_back({b.name, lift(b.type, 1, i)});
    body_ctx.push_in_place(b.name, lifted.back().type);
  }
  Term body = el.check(body_ctx, s.term, lift(ret, 1, n));
  full = ms.instantiate(full);
  Term lam = ms.instantiate(close_lams(lifted, body));
  require_no_holes(env, ms, full, s.name);
  require_no_holes(env, ms, lam, s.name);

  auto names = flat_names(s.binders);
  std::vector<int> candidates;
  if (s.struct_arg) {
    for (int i = 0; i < n; ++i) {
      if (names[static_cast<std::size_t>(i)] == *s.struct_arg) candidates.push_back(i + 1);
    }
    if (candidates.empty()) {
      throw Error(ErrorKind::NonStructuralRecursion,
                  "No argument named " + *s.struct_arg + ".", s.pos);
    }
  } else {
    LocalContext c;
    Term t = full;
    for (int i = 0; i < n; ++i) {
      if (as_inductive_app(env, whnf(env, c, t.domain()))) candidates.push_back(i + 1);
      c.push_in_place(t.binder_name(), t.domain());
      t = t.body();
    }
  }
  for (int k : candidates) {
    Term fix = mk_fix(s.name, k, full, lam);
    if (guard_check(env, fix)) {
      ConstantDecl d;
      d.name = s.name;
      d.type = full;
      d.body = fix;
      d.kind = ConstantKind::Definition;
      return d;
    }
  }
  throw Error(ErrorKind::NonStructuralRecursion,
              s.struct_arg ? "Recursive definition of " + s.name +
                                 " is ill-formed: recursive calls must be on structurally "
                                 "smaller arguments."
                           : "Cannot guess decreasing argument of fix " + s.name + ".",
              s.pos);
}

InductiveDecl elaborate_inductive(const GlobalEnv& env, const Sentence& s) {
  MetaStore ms;
  Elaborator el(env, ms);
  LocalContext ctx;
  auto params = el.telescope(ctx, s.binders);
  Term arity = el.type(ctx, s.type).term;
  el.declare_pending_inductive(s.name, ms.instantiate(close_prods(params, arity)));
  InductiveDecl d;
  d.name = s.name;
  for (auto& p : params) p.type = ms.instantiate(p.type);
  d.params = params;
  d.arity = ms.instantiate(arity);
  require_no_holes(env, ms, close_prods(params, d.arity), s.name);
  for (const auto& c : s.constructors) {
    LocalContext cctx = ctx;
    auto args = el.telescope(cctx, c.binders);
    Term concl;
    if (c.type) {
      concl = el.type(cctx, c.type).term;
    } else {
      std::vector<Term> ps;
      for (int i = static_cast<int>(params.size()) - 1; i >= 0; --i) {
        ps.push_back(mk_rel(i + static_cast<int>(args.size())));
      }
      concl = mk_app(mk_ind(s.name), std::move(ps));
    }
    Term ty = ms.instantiate(close_prods(args, concl));
    require_no_holes(env, ms, ty, c.name);
    d.constructors.push_back({c.name, ty});
  }
  return d;
}

Term elaborate_statement(const GlobalEnv& env, const Sentence& s) {
  MetaStore ms;
  Elaborator el(env, ms);
  LocalContext ctx;
  auto tele = el.telescope(ctx, s.binders);
  Term body = el.type(ctx, s.term).term;
  Term t = ms.instantiate(close_prods(tele, body));
  require_no_holes(env, ms, t, s.name);
  return t;
}

}  // namespace hurry
