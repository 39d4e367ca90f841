#include "hurry/typing.hpp"

#include <algorithm>
#include <set>

#include "hurry/error.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"

namespace hurry {

Sort product_sort(Sort domain, Sort codomain) {
  if (codomain.is_prop()) return codomain;
  if (codomain.is_set()) return domain.is_type() ? domain : Sort::set();
  return Sort::type(std::max(domain.is_type() ? domain.level : 1, codomain.level));
}

namespace {

/// Does `t` mention the inductive `name`?
bool mentions_ind(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case TermKind::Ind:
      return t.name() == name;
    case TermKind::Sort:
    case TermKind::Rel:
    case TermKind::Const:
    case TermKind::Construct:
    case TermKind::Free:
      return false;
    default:
      break;
  }
  const TermNode* n = t.node();
  return std::any_of(n->kids.begin(), n->kids.end(),
                     [&](const Term& k) { return mentions_ind(k, name); });
}

class Converter {
 public:
  explicit Converter(const GlobalEnv& env) : env_(env) {}

  bool conv(const LocalContext& ctx, const Term& t, const Term& u, bool cumul) {
    if (t == u) return true;
    Term a = whnf(env_, ctx, t, ReductionFlags::no_delta());
    Term b = whnf(env_, ctx, u, ReductionFlags::no_delta());
    if (a == b) return true;
    if (same_shape(ctx, a, b, cumul)) return true;
    for (int guard = 0; guard < 10000; ++guard) {
      auto ia = unfold_index(a);
      auto ib = unfold_index(b);
      if (!ia && !ib) break;
      bool unfold_a = ia && (!ib || *ia >= *ib);
      bool unfold_b = ib && (!ia || *ib >= *ia);
      if (unfold_a) a = whnf(env_, ctx, unfold_head(a), ReductionFlags::no_delta());
      if (unfold_b) b = whnf(env_, ctx, unfold_head(b), ReductionFlags::no_delta());
      if (a == b) return true;
      if (same_shape(ctx, a, b, cumul)) return true;
    }
    Term fa = whnf(env_, ctx, a);
    Term fb = whnf(env_, ctx, b);
    if (fa == a && fb == b) return false;
    return fa == fb || same_shape(ctx, fa, fb, cumul);
  }

 private:
  /// Declaration index of an unfoldable constant at the head, if any.
  std::optional<std::size_t> unfold_index(const Term& t) const {
    Term h = app_head(t);
    if (h.kind() != TermKind::Const) return std::nullopt;
    const auto* c = env_.constant(h.name());
    if (!c || !c->transparent || !c->body) return std::nullopt;
    return env_.lookup(h.name())->index;
  }

  Term unfold_head(const Term& t) const {
    Term h = app_head(t);
    Term body = *env_.constant(h.name())->body;
    return mk_app(body, app_args(t));
  }

  bool conv_all(const LocalContext& ctx, std::span<const Term> xs, std::span<const Term> ys) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!conv(ctx, xs[i], ys[i], false)) return false;
    }
    return true;
  }

  bool same_shape(const LocalContext& ctx, const Term& a, const Term& b, bool cumul) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TermKind::Sort:
        return cumul ? sort_leq(a.sort(), b.sort()) : a.sort() == b.sort();
      case TermKind::Prod:
        return conv(ctx, a.domain(), b.domain(), false) &&
               conv(ctx.push(a.binder_name(), a.domain()), a.body(), b.body(), cumul);
      case TermKind::Lambda:
        return conv(ctx, a.domain(), b.domain(), false) &&
               conv(ctx.push(a.binder_name(), a.domain()), a.body(), b.body(), false);
      case TermKind::App:
        return a.args().size() == b.args().size() && conv(ctx, a.head(), b.head(), false) &&
               conv_all(ctx, a.args(), b.args());
      case TermKind::Rel:
        return a.rel_index() == b.rel_index();
      case TermKind::Const:
      case TermKind::Ind:
        return a.name() == b.name();
      case TermKind::Construct:
        return a.name() == b.name() && a.ctor_index() == b.ctor_index();
      case TermKind::Match:
        return a.name() == b.name() && conv(ctx, a.scrutinee(), b.scrutinee(), false) &&
               conv(ctx, a.return_pred(), b.return_pred(), false) &&
               conv_all(ctx, a.branches(), b.branches());
      case TermKind::Fix:
        return a.fix_struct() == b.fix_struct() && conv(ctx, a.fix_type(), b.fix_type(), false) &&
               conv(ctx.push(a.name(), a.fix_type()), a.body(), b.body(), false);
      case TermKind::Meta:
        return a.meta_id() == b.meta_id() && conv_all(ctx, a.meta_args(), b.meta_args());
      case TermKind::Free:
        return a.free_id() == b.free_id();
      case TermKind::LetIn:
        return false;
    }
    return false;
  }

  const GlobalEnv& env_;
};

class Typer {
 public:
  Typer(const GlobalEnv& env, const MetaTyper* metas) : env_(env), metas_(metas) {}

  Term infer(const LocalContext& ctx, const Term& t) {
    switch (t.kind()) {
      case TermKind::Rel:
        return ctx.type_of(t.rel_index());
      case TermKind::Sort: {
        Sort s = t.sort();
        if (!s.is_type()) return mk_type(1);
        if (s.level >= kMaxUniverse) {
          fail(ErrorKind::UniverseOverflow, "universe level exceeds the fixed ladder");
        }
        return mk_type(s.level + 1);
      }
      case TermKind::Prod: {
        Sort a = sort_of(ctx, t.domain());
        Sort b = sort_of(ctx.push(t.binder_name(), t.domain()), t.body());
        return mk_sort(product_sort(a, b));
      }
      case TermKind::Lambda: {
        sort_of(ctx, t.domain());
        Term body_type = infer(ctx.push(t.binder_name(), t.domain()), t.body());
        return mk_prod(t.binder_name(), t.domain(), body_type);
      }
      case TermKind::LetIn: {
        sort_of(ctx, t.let_type());
        check(ctx, t.let_value(), t.let_type());
        Term body_type =
            infer(ctx.push(t.binder_name(), t.let_type(), t.let_value()), t.body());
        return subst(body_type, t.let_value());
      }
      case TermKind::App:
        return infer_app(ctx, t);
      case TermKind::Const:
      case TermKind::Ind:
      case TermKind::Construct:
        return env_.type_of_global(t);
      case TermKind::Match:
        return infer_match(ctx, t);
      case TermKind::Fix:
        return infer_fix(ctx, t);
      case TermKind::Meta:
        if (!metas_) fail(ErrorKind::Internal, "unresolved hole reached the kernel");
        return (*metas_)(t, ctx);
      case TermKind::Free:
        fail(ErrorKind::Internal, "free variable reached the kernel: " + t.name());
    }
    fail(ErrorKind::Internal, "unknown term kind");
  }

  void check(const LocalContext& ctx, const Term& t, const Term& expected) {
    Term actual = infer(ctx, t);
    if (!Converter(env_).conv(ctx, actual, expected, true)) {
      fail(ErrorKind::TypeMismatch, "The term " + print_term(env_, ctx, t) + " has type " +
                                        print_term(env_, ctx, actual) +
                                        " while it is expected to have type " +
                                        print_term(env_, ctx, expected));
    }
  }

  Sort sort_of(const LocalContext& ctx, const Term& t) {
    Term ty = whnf(env_, ctx, infer(ctx, t));
    if (ty.kind() != TermKind::Sort) {
      fail(ErrorKind::NotASort, "The term " + print_term(env_, ctx, t) + " is not a type");
    }
    return ty.sort();
  }

 private:
  Term infer_app(const LocalContext& ctx, const Term& t) {
    Term fty = infer(ctx, t.head());
    for (const auto& arg : t.args()) {
      Term w = whnf(env_, ctx, fty);
      if (w.kind() != TermKind::Prod) {
        fail(ErrorKind::NotAFunction, "The term " + print_term(env_, ctx, t.head()) +
                                          " of type " + print_term(env_, ctx, fty) +
                                          " cannot be applied to " + print_term(env_, ctx, arg));
      }
      check(ctx, arg, w.domain());
      fty = subst(w.body(), arg);
    }
    return fty;
  }

  Term infer_match(const LocalContext& ctx, const Term& t) {
    const auto* decl = env_.inductive(t.name());
    if (!decl) fail(ErrorKind::UnknownIdentifier, "unknown inductive " + t.name());
    Term sty = whnf(env_, ctx, infer(ctx, t.scrutinee()));
    auto view = as_inductive_app(env_, sty);
    if (!view || view->ind != t.name()) {
      fail(ErrorKind::TypeMismatch, "The matched term " + print_term(env_, ctx, t.scrutinee()) +
                                        " has type " + print_term(env_, ctx, sty) +
                                        " which is not an instance of " + t.name());
    }
    if (t.branches().size() != decl->constructors.size()) {
      fail(ErrorKind::ArityMismatch, "match on " + t.name() + " needs " +
                                         std::to_string(decl->constructors.size()) +
                                         " branches, got " + std::to_string(t.branches().size()));
    }
    const auto& params = view->params;
    const int np = static_cast<int>(params.size());

    // Return predicate: forall indices, forall (x : I params indices), s.
    Term pty = infer(ctx, t.return_pred());
    Term arity = instantiate(decl->arity, params);
    LocalContext pctx = ctx;
    int m = 0;
    Converter cv(env_);
    while (arity.kind() == TermKind::Prod) {
      Term w = whnf(env_, pctx, pty);
      if (w.kind() != TermKind::Prod || !cv.conv(pctx, arity.domain(), w.domain(), false)) {
        fail(ErrorKind::ArityMismatch, "ill-formed return predicate for match on " + t.name());
      }
      pctx = pctx.push(arity.binder_name(), arity.domain());
      pty = w.body();
      arity = arity.body();
      ++m;
    }
    {
      std::vector<Term> iargs;
      for (const auto& p : params) iargs.push_back(lift(p, m));
      for (int i = m - 1; i >= 0; --i) iargs.push_back(mk_rel(i));
      Term ind_app = mk_app(mk_ind(t.name()), std::move(iargs));
      Term w = whnf(env_, pctx, pty);
      if (w.kind() != TermKind::Prod || !cv.conv(pctx, ind_app, w.domain(), false)) {
        fail(ErrorKind::ArityMismatch, "ill-formed return predicate for match on " + t.name());
      }
      Term s = whnf(env_, pctx.push("x", ind_app), w.body());
      if (s.kind() != TermKind::Sort) {
        fail(ErrorKind::ArityMismatch, "return predicate does not end in a sort");
      }
      if (decl->sort.is_prop() && !s.sort().is_prop() && !decl->large_elimination) {
        fail(ErrorKind::IllegalElimination,
             "cannot eliminate the proposition " + t.name() + " into a non-propositional sort");
      }
    }

    for (std::size_t j = 0; j < decl->constructors.size(); ++j) {
      Term ct = instantiate(decl->constructors[j].type, params);
      std::vector<Binder> binders;
      while (ct.kind() == TermKind::Prod) {
        binders.push_back({ct.binder_name(), ct.domain()});
        ct = ct.body();
      }
      const int n = static_cast<int>(binders.size());
      auto cargs = app_args(ct);
      std::vector<Term> pred_args(cargs.begin() + np, cargs.end());
      std::vector<Term> ctor_args;
      for (const auto& p : params) ctor_args.push_back(lift(p, n));
      for (int i = n - 1; i >= 0; --i) ctor_args.push_back(mk_rel(i));
      pred_args.push_back(mk_app(mk_construct(t.name(), static_cast<int>(j + 1)), ctor_args));
      Term expected = beta_head(mk_app(lift(t.return_pred(), n), std::move(pred_args)));
      for (int i = n - 1; i >= 0; --i) {
        expected = mk_prod(binders[static_cast<std::size_t>(i)].name,
                           binders[static_cast<std::size_t>(i)].type, expected);
      }
      check(ctx, t.branches()[j], expected);
    }
    std::vector<Term> res_args = view->indices;
    res_args.push_back(t.scrutinee());
    return beta_head(mk_app(t.return_pred(), std::move(res_args)));
  }

  Term infer_fix(const LocalContext& ctx, const Term& t) {
    sort_of(ctx, t.fix_type());
    int spine = 0;
    for (Term ty = t.fix_type(); ty.kind() == TermKind::Prod; ty = ty.body()) ++spine;
    if (t.fix_struct() < 1 || t.fix_struct() > spine) {
      fail(ErrorKind::NonStructuralRecursion,
           "structural argument " + std::to_string(t.fix_struct()) + " of " + t.name() +
               " is out of range");
    }
    check(ctx.push(t.name(), t.fix_type()), t.body(), lift(t.fix_type(), 1));
    if (!guard_check(env_, t)) {
      fail(ErrorKind::NonStructuralRecursion,
           "Recursive definition of " + t.name() + " is ill-formed: recursive calls must be made on "
           "a structural subterm of the principal argument");
    }
    return t.fix_type();
  }

  const GlobalEnv& env_;
  const MetaTyper* metas_;
};

class Guard {
 public:
  Guard(const GlobalEnv& env, int k, int struct_level)
      : env_(env), k_(k), struct_level_(struct_level) {}

  bool ok(const Term& t, int depth, const std::set<int>& subs) {
    switch (t.kind()) {
      case TermKind::Rel:
        return level(t.rel_index(), depth) != 0;
      case TermKind::App:
        return ok_app(t, depth, subs);
      case TermKind::Match:
        return ok_match(t, {}, depth, subs);
      case TermKind::Prod:
      case TermKind::Lambda:
        return ok(t.domain(), depth, subs) && ok(t.body(), depth + 1, subs);
      case TermKind::LetIn: {
        if (!ok(t.let_value(), depth, subs) || !ok(t.let_type(), depth, subs)) return false;
        std::set<int> inner = subs;
        if (is_subterm(t.let_value(), depth, subs)) inner.insert(depth);
        return ok(t.body(), depth + 1, inner);
      }
      case TermKind::Fix:
        return ok(t.fix_type(), depth, subs) && ok(t.body(), depth + 1, subs);
      case TermKind::Meta:
        return std::all_of(t.meta_args().begin(), t.meta_args().end(),
                           [&](const Term& a) { return ok(a, depth, subs); });
      default:
        return true;
    }
  }

 private:
  static int level(int index, int depth) { return depth - 1 - index; }

  bool is_subterm(const Term& t, int depth, const std::set<int>& subs) const {
    Term h = app_head(t);
    return h.kind() == TermKind::Rel && subs.count(level(h.rel_index(), depth)) > 0;
  }

  bool ok_app(const Term& t, int depth, const std::set<int>& subs) {
    const Term& h = t.head();
    auto args = t.args();
    for (const auto& a : args) {
      if (!ok(a, depth, subs)) return false;
    }
    if (h.kind() == TermKind::Rel && level(h.rel_index(), depth) == 0) {
      if (args.size() < static_cast<std::size_t>(k_)) return false;
      return is_subterm(args[static_cast<std::size_t>(k_ - 1)], depth, subs);
    }
    if (h.kind() == TermKind::Match) return ok_match(h, args, depth, subs);
    return ok(h, depth, subs);
  }

  bool ok_match(const Term& m, std::span<const Term>, int depth, const std::set<int>& subs) {
    if (!ok(m.scrutinee(), depth, subs) || !ok(m.return_pred(), depth, subs)) return false;
    const Term& s = m.scrutinee();
    bool on_sub = s.kind() == TermKind::Rel &&
                  (subs.count(level(s.rel_index(), depth)) > 0 ||
                   level(s.rel_index(), depth) == struct_level_);
    const auto* decl = env_.inductive(m.name());
    for (std::size_t j = 0; j < m.branches().size(); ++j) {
      const Term& br = m.branches()[j];
      if (!on_sub || !decl || j >= decl->constructors.size()) {
        if (!ok(br, depth, subs)) return false;
        continue;
      }
      std::set<int> inner = subs;
      Term body = br;
      int d = depth;
      Term ct = decl->constructors[j].type;
      while (ct.kind() == TermKind::Prod && body.kind() == TermKind::Lambda) {
        if (!ok(body.domain(), d, inner)) return false;
        if (mentions_ind(ct.domain(), m.name())) inner.insert(d);
        body = body.body();
        ct = ct.body();
        ++d;
      }
      if (!ok(body, d, inner)) return false;
    }
    return true;
  }

  const GlobalEnv& env_;
  int k_;
  int struct_level_;
};

void add_oracles(const GlobalEnv& env, const Term& t, std::vector<std::string>& out,
                 std::set<std::string>& seen) {
  if (t.kind() == TermKind::Const) {
    if (!seen.insert(t.name()).second) return;
    const auto* c = env.constant(t.name());
    if (!c) return;
    if (c->kind == ConstantKind::Oracle) {
      out.push_back(c->name);
      return;
    }
    for (const auto& d : c->oracle_deps) {
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    if (c->transparent && c->body) add_oracles(env, *c->body, out, seen);
    return;
  }
  for (const auto& k : t.node()->kids) add_oracles(env, k, out, seen);
}

}  // namespace

bool guard_check(const GlobalEnv& env, const Term& fix) {
  if (fix.kind() != TermKind::Fix) return false;
  const int k = fix.fix_struct();
  Guard g(env, k, k);
  Term body = fix.body();
  int depth = 1;
  for (int i = 0; i < k; ++i) {
    if (body.kind() != TermKind::Lambda) return false;
    if (!g.ok(body.domain(), depth, {})) return false;
    body = body.body();
    ++depth;
  }
  return g.ok(body, depth, {});
}

Term infer_type(const GlobalEnv& env, const LocalContext& ctx, const Term& t,
                const MetaTyper* metas) {
  return Typer(env, metas).infer(ctx, t);
}

void check_type(const GlobalEnv& env, const LocalContext& ctx, const Term& t,
                const Term& expected, const MetaTyper* metas) {
  Typer(env, metas).check(ctx, t, expected);
}

Sort infer_sort(const GlobalEnv& env, const LocalContext& ctx, const Term& t,
                const MetaTyper* metas) {
  return Typer(env, metas).sort_of(ctx, t);
}

bool convertible(const GlobalEnv& env, const LocalContext& ctx, const Term& t, const Term& u,
                 bool cumulative) {
  return Converter(env).conv(ctx, t, u, cumulative);
}

ProofCheck check_proof(const GlobalEnv& env, const Term& proof, const Term& statement) {
  ProofCheck r;
  if (!well_scoped(proof, 0) || !well_scoped(statement, 0)) {
    r.message = "proof term is not closed";
    return r;
  }
  try {
    Term ty = infer_type(env, {}, proof);
    if (!convertible(env, {}, ty, statement, true)) {
      r.message = "proof has type " + print_term(env, {}, ty) + " instead of " +
                  print_term(env, {}, statement);
      return r;
    }
  } catch (const Error& e) {
    r.message = e.what();
    return r;
  }
  r.ok = true;
  r.oracles = collect_oracles(env, proof);
  return r;
}

std::vector<std::string> collect_oracles(const GlobalEnv& env, const Term& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  add_oracles(env, t, out, seen);
  return out;
}

}  // namespace hurry
