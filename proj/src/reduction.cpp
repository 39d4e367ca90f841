#include "hurry/reduction.hpp"

#include "hurry/error.hpp"

namespace hurry {

bool is_constructor_app(const Term& t) { return app_head(t).kind() == TermKind::Construct; }

std::optional<ConstructorView> as_constructor_app(const Term& t) {
  Term h = app_head(t);
  if (h.kind() != TermKind::Construct) return std::nullopt;
  return ConstructorView{h.name(), h.ctor_index(), app_args(t)};
}

std::optional<InductiveView> as_inductive_app(const GlobalEnv& env, const Term& t) {
  Term h = app_head(t);
  if (h.kind() != TermKind::Ind) return std::nullopt;
  const auto* decl = env.inductive(h.name());
  if (!decl) return std::nullopt;
  auto args = app_args(t);
  if (args.size() != decl->num_params() + decl->num_indices()) return std::nullopt;
  InductiveView v;
  v.ind = h.name();
  v.params.assign(args.begin(), args.begin() + static_cast<long>(decl->num_params()));
  v.indices.assign(args.begin() + static_cast<long>(decl->num_params()), args.end());
  return v;
}

std::optional<unsigned long long> as_numeral(const Term& t) {
  unsigned long long n = 0;
  Term cur = t;
  while (true) {
    if (cur.kind() == TermKind::Construct && cur.name() == "nat" && cur.ctor_index() == 1) {
      return n;
    }
    if (cur.kind() == TermKind::App && cur.head().kind() == TermKind::Construct &&
        cur.head().name() == "nat" && cur.head().ctor_index() == 2 && cur.args().size() == 1) {
      ++n;
      cur = cur.args()[0];
      continue;
    }
    return std::nullopt;
  }
}

Term make_numeral(unsigned long long n) {
  Term t = mk_construct("nat", 1);
  Term succ = mk_construct("nat", 2);
  for (unsigned long long i = 0; i < n; ++i) t = mk_app(succ, {t});
  return t;
}

namespace {

/// Body of a transparent constant, or nothing.
std::optional<Term> unfold_constant(const GlobalEnv& env, const std::string& name) {
  const auto* c = env.constant(name);
  if (!c || !c->transparent || !c->body) return std::nullopt;
  return *c->body;
}

/// Try to fire a fixpoint applied to `args`. `self` replaces the recursive
/// occurrences (the fix itself, or the constant that names it).
std::optional<Term> try_fix_iota(const GlobalEnv& env, const LocalContext& ctx, const Term& fix,
                                 const Term& self, std::vector<Term> args, ReductionFlags flags) {
  const auto k = static_cast<std::size_t>(fix.fix_struct());
  if (args.size() < k) return std::nullopt;
  Term a = whnf(env, ctx, args[k - 1], flags);
  if (!is_constructor_app(a)) return std::nullopt;
  args[k - 1] = a;
  return mk_app(subst(fix.body(), self), std::move(args));
}

/// One iota step on a match whose scrutinee reduces to a constructor.
std::optional<Term> try_match_iota(const GlobalEnv& env, const LocalContext& ctx, const Term& m,
                                   ReductionFlags flags) {
  Term s = whnf(env, ctx, m.scrutinee(), flags);
  auto cv = as_constructor_app(s);
  if (!cv) return std::nullopt;
  const auto* decl = env.inductive(cv->ind);
  if (!decl) return std::nullopt;
  const auto j = static_cast<std::size_t>(cv->ordinal);
  if (j == 0 || j > m.branches().size()) return std::nullopt;
  const auto np = decl->num_params();
  std::vector<Term> rest(cv->args.begin() + static_cast<long>(std::min(np, cv->args.size())),
                         cv->args.end());
  return mk_app(m.branches()[j - 1], std::move(rest));
}

}  // namespace

Term whnf(const GlobalEnv& env, const LocalContext& ctx, const Term& t, ReductionFlags flags) {
  Term cur = t;
  while (true) {
    switch (cur.kind()) {
      case TermKind::Rel: {
        if (!flags.zeta) return cur;
        if (static_cast<std::size_t>(cur.rel_index()) >= ctx.size()) return cur;
        auto b = ctx.body_of(cur.rel_index());
        if (!b) return cur;
        cur = *b;
        continue;
      }
      case TermKind::LetIn:
        if (!flags.zeta) return cur;
        cur = subst(cur.body(), cur.let_value());
        continue;
      case TermKind::Const: {
        if (!flags.delta) return cur;
        auto b = unfold_constant(env, cur.name());
        if (!b || b->kind() == TermKind::Fix) return cur;
        cur = *b;
        continue;
      }
      case TermKind::Match: {
        if (!flags.iota) return cur;
        auto r = try_match_iota(env, ctx, cur, flags);
        if (!r) return cur;
        cur = *r;
        continue;
      }
      case TermKind::App: {
        const Term& h = cur.head();
        auto args = app_args(cur);
        switch (h.kind()) {
          case TermKind::Lambda:
            if (!flags.beta) return cur;
            cur = beta_head(cur);
            continue;
          case TermKind::LetIn:
            if (!flags.zeta) return cur;
            cur = mk_app(subst(h.body(), h.let_value()), std::move(args));
            continue;
          case TermKind::Rel: {
            if (!flags.zeta || static_cast<std::size_t>(h.rel_index()) >= ctx.size()) return cur;
            auto b = ctx.body_of(h.rel_index());
            if (!b) return cur;
            cur = mk_app(*b, std::move(args));
            continue;
          }
          case TermKind::Const: {
            if (!flags.delta) return cur;
            auto b = unfold_constant(env, h.name());
            if (!b) return cur;
            if (b->kind() == TermKind::Fix) {
              if (!flags.iota) return cur;
              auto r = try_fix_iota(env, ctx, *b, h, std::move(args), flags);
              if (!r) return cur;
              cur = *r;
              continue;
            }
            cur = mk_app(*b, std::move(args));
            continue;
          }
          case TermKind::Fix: {
            if (!flags.iota) return cur;
            auto r = try_fix_iota(env, ctx, h, h, std::move(args), flags);
            if (!r) return cur;
            cur = *r;
            continue;
          }
          case TermKind::Match: {
            if (!flags.iota) return cur;
            auto r = try_match_iota(env, ctx, h, flags);
            if (!r) return cur;
            cur = mk_app(*r, std::move(args));
            continue;
          }
          default:
            return cur;
        }
      }
      default:
        return cur;
    }
  }
}

namespace {

Term normalize_rec(const GlobalEnv& env, const LocalContext& ctx, const Term& t);

std::vector<Term> normalize_all(const GlobalEnv& env, const LocalContext& ctx,
                                std::span<const Term> ts) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& x : ts) out.push_back(normalize_rec(env, ctx, x));
  return out;
}

Term normalize_rec(const GlobalEnv& env, const LocalContext& ctx, const Term& t) {
  Term w = whnf(env, ctx, t);
  switch (w.kind()) {
    case TermKind::Prod:
      return mk_prod(w.binder_name(), normalize_rec(env, ctx, w.domain()),
                     normalize_rec(env, ctx.push(w.binder_name(), w.domain()), w.body()));
    case TermKind::Lambda:
      return mk_lambda(w.binder_name(), normalize_rec(env, ctx, w.domain()),
                       normalize_rec(env, ctx.push(w.binder_name(), w.domain()), w.body()));
    case TermKind::App: {
      Term h = w.head();
      if (h.kind() != TermKind::Const) h = normalize_rec(env, ctx, h);
      return mk_app(h, normalize_all(env, ctx, w.args()));
    }
    case TermKind::Match: {
      std::vector<Term> br = normalize_all(env, ctx, w.branches());
      return mk_match(w.name(), normalize_rec(env, ctx, w.scrutinee()),
                      normalize_rec(env, ctx, w.return_pred()), std::move(br));
    }
    case TermKind::Fix:
      return mk_fix(w.name(), w.fix_struct(), normalize_rec(env, ctx, w.fix_type()),
                    normalize_rec(env, ctx.push(w.name(), w.fix_type()), w.body()));
    case TermKind::Meta:
      return mk_meta(w.meta_id(), normalize_all(env, ctx, w.meta_args()));
    default:
      return w;
  }
}

/// Constants that simpl may unfold: their body, under its leading lambdas, is
/// a fixpoint or a match.
bool simpl_unfoldable(const GlobalEnv& env, const std::string& name) {
  const auto* c = env.constant(name);
  if (!c || !c->transparent || !c->body) return false;
  Term b = *c->body;
  while (b.kind() == TermKind::Lambda) b = b.body();
  return b.kind() == TermKind::Fix || b.kind() == TermKind::Match;
}

bool stuck_shape(const Term& t) {
  TermKind k = app_head(t).kind();
  return k == TermKind::Match || k == TermKind::Fix || k == TermKind::Lambda;
}

Term simpl_head(const GlobalEnv& env, const LocalContext& ctx, const Term& t) {
  Term cur = t;
  while (true) {
    Term h = app_head(cur);
    switch (h.kind()) {
      case TermKind::Lambda:
        if (cur.kind() != TermKind::App) return cur;
        cur = beta_head(cur);
        continue;
      case TermKind::LetIn:
        cur = mk_app(subst(h.body(), h.let_value()), app_args(cur));
        continue;
      case TermKind::Match:
      case TermKind::Fix: {
        Term r = whnf(env, ctx, cur, ReductionFlags::all());
        if (stuck_shape(r)) return cur;
        return r;
      }
      case TermKind::Const: {
        if (!simpl_unfoldable(env, h.name())) return cur;
        Term r = whnf(env, ctx, cur, ReductionFlags::all());
        if (stuck_shape(r)) return cur;
        return r;
      }
      default:
        return cur;
    }
  }
}

Term simpl_rec(const GlobalEnv& env, const LocalContext& ctx, const Term& t) {
  Term w = simpl_head(env, ctx, t);
  switch (w.kind()) {
    case TermKind::Prod:
      return mk_prod(w.binder_name(), simpl_rec(env, ctx, w.domain()),
                     simpl_rec(env, ctx.push(w.binder_name(), w.domain()), w.body()));
    case TermKind::Lambda:
      return mk_lambda(w.binder_name(), simpl_rec(env, ctx, w.domain()),
                       simpl_rec(env, ctx.push(w.binder_name(), w.domain()), w.body()));
    case TermKind::LetIn:
      return simpl_rec(env, ctx, subst(w.body(), w.let_value()));
    case TermKind::App: {
      std::vector<Term> args;
      for (const auto& a : w.args()) args.push_back(simpl_rec(env, ctx, a));
      Term h = w.head();
      if (h.kind() == TermKind::Match) {
        std::vector<Term> br;
        for (const auto& b : h.branches()) br.push_back(simpl_rec(env, ctx, b));
        h = mk_match(h.name(), simpl_rec(env, ctx, h.scrutinee()), h.return_pred(), std::move(br));
      }
      return mk_app(h, std::move(args));
    }
    case TermKind::Match: {
      std::vector<Term> br;
      for (const auto& b : w.branches()) br.push_back(simpl_rec(env, ctx, b));
      return mk_match(w.name(), simpl_rec(env, ctx, w.scrutinee()), w.return_pred(),
                      std::move(br));
    }
    default:
      return w;
  }
}

}  // namespace

Term normalize(const GlobalEnv& env, const Term& t) { return normalize_rec(env, {}, t); }

Term normalize(const GlobalEnv& env, const LocalContext& ctx, const Term& t) {
  return normalize_rec(env, ctx, t);
}

Term simpl(const GlobalEnv& env, const LocalContext& ctx, const Term& t) {
  return simpl_rec(env, ctx, t);
}

}  // namespace hurry
