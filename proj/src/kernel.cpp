#include "hurry/kernel.hpp"

#include <cctype>

#include "hurry/error.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"

namespace hurry {

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  std::size_t cut = base.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(base[cut - 1]))) --cut;
  std::string stem = base.substr(0, cut);
  long n = cut < base.size() ? std::stol(base.substr(cut)) + 1 : 0;
  if (stem.empty()) stem = "x";
  while (true) {
    std::string cand = stem + std::to_string(n);
    if (!used.count(cand)) return cand;
    ++n;
  }
}

namespace {

bool is_prop_valued(const Term& type_of_head) {
  Term t = type_of_head;
  while (t.kind() == TermKind::Prod) t = t.body();
  return t.kind() == TermKind::Sort && t.sort().is_prop();
}

std::string initial(const std::string& name) {
  for (char c : name) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return "x";
}

}  // namespace

std::string default_name(const GlobalEnv& env, const LocalContext& ctx, const Term& type) {
  Term h = app_head(type);
  switch (h.kind()) {
    case TermKind::Ind: {
      const auto* d = env.inductive(h.name());
      if (d && d->sort.is_prop()) return "H";
      return initial(h.name());
    }
    case TermKind::Const: {
      const auto* c = env.constant(h.name());
      if (c && is_prop_valued(c->type)) return "H";
      return initial(h.name());
    }
    case TermKind::Rel: {
      if (static_cast<std::size_t>(h.rel_index()) < ctx.size()) {
        const auto& e = ctx.lookup(h.rel_index());
        if (is_prop_valued(e.type)) return "H";
        return initial(e.name);
      }
      return "x";
    }
    case TermKind::Free:
      return initial(h.name());
    case TermKind::Prod: {
      Term c = type;
      while (c.kind() == TermKind::Prod) c = c.body();
      if (c.kind() == TermKind::Sort) return c.sort().is_prop() ? "P" : "T";
      Term ch = app_head(c);
      if (ch.kind() == TermKind::Ind || ch.kind() == TermKind::Const) {
        if (default_name(env, {}, ch) == "H") return "H";
      }
      return "f";
    }
    case TermKind::Sort:
      return h.sort().is_prop() ? "P" : "T";
    default:
      return "x";
  }
}

namespace {

bool mentions(const Term& t, const std::string& ind) {
  if (t.kind() == TermKind::Ind) return t.name() == ind;
  for (const auto& k : t.node()->kids) {
    if (mentions(k, ind)) return true;
  }
  return false;
}

/// `t` is `I params indices` with the parameters as the outermost np
/// variables seen from `depth` binders below the parameter telescope.
bool is_own_conclusion(const Term& t, const std::string& ind, std::size_t np, std::size_t ni,
                       int depth) {
  Term h = app_head(t);
  if (h.kind() != TermKind::Ind || h.name() != ind) return false;
  auto args = app_args(t);
  if (args.size() != np + ni) return false;
  for (std::size_t i = 0; i < np; ++i) {
    const Term& a = args[i];
    if (a.kind() != TermKind::Rel ||
        a.rel_index() != depth + static_cast<int>(np) - 1 - static_cast<int>(i)) {
      return false;
    }
  }
  for (std::size_t i = np; i < args.size(); ++i) {
    if (mentions(args[i], ind)) return false;
  }
  return true;
}

/// Strict positivity of one constructor argument type found `depth` binders
/// below the parameter telescope.
bool strictly_positive(const Term& arg, const std::string& ind, std::size_t np, std::size_t ni,
                       int depth) {
  if (!mentions(arg, ind)) return true;
  Term t = arg;
  int d = depth;
  while (t.kind() == TermKind::Prod) {
    if (mentions(t.domain(), ind)) return false;
    t = t.body();
    ++d;
  }
  return is_own_conclusion(t, ind, np, ni, d);
}

struct FreeBinder {
  Term var;  // Free
  Term type;
};

Term close_pi(const std::vector<FreeBinder>& bs, Term body, bool anonymous_if_unused = true) {
  for (std::size_t i = bs.size(); i-- > 0;) {
    const auto id = bs[i].var.free_id();
    bool used = occurs_free(body, id);
    std::string name = (!used && anonymous_if_unused) ? "_" : bs[i].var.name();
    body = mk_prod(name, bs[i].type, abstract(body, id));
  }
  return body;
}

Term close_lam(const std::vector<FreeBinder>& bs, Term body) {
  for (std::size_t i = bs.size(); i-- > 0;) {
    body = mk_lambda(bs[i].var.name(), bs[i].type, abstract(body, bs[i].var.free_id()));
  }
  return body;
}

class SchemeBuilder {
 public:
  SchemeBuilder(const GlobalEnv& env, const InductiveDecl& decl) : env_(env), decl_(decl) {}

  Scheme build() {
    const bool dependent = !decl_.sort.is_prop();
    std::set<std::string> used;
    for (const auto& p : decl_.params) {
      Term ty = instantiate_params(p.type);
      Term v = mk_free(fresh_name(p.name, used));
      used.insert(v.name());
      params_.push_back({v, ty});
    }
    Term motive_var = mk_free(fresh_name("P", used));
    used.insert(motive_var.name());

    // Motive type.
    auto [ys, x] = index_binders(used, dependent);
    std::vector<FreeBinder> motive_binders = ys;
    if (dependent) motive_binders.push_back(x);
    Term motive_type = close_pi(motive_binders, mk_prop());
    motive_ = motive_var;

    // Premises.
    std::vector<FreeBinder> premises;
    std::set<std::string> fused = used;
    for (std::size_t j = 0; j < decl_.constructors.size(); ++j) {
      Term f = mk_free(fresh_name("f", fused));
      fused.insert(f.name());
      premises.push_back({f, premise_type(static_cast<int>(j + 1), used, dependent)});
    }

    // Conclusion.
    std::vector<FreeBinder> concl_binders = ys;
    concl_binders.push_back(x);
    Term concl = close_pi(concl_binders, motive_app(ys, x, dependent));

    std::vector<FreeBinder> outer = params_;
    outer.push_back({motive_var, motive_type});
    Term statement = close_pi(outer, close_pi(premises, concl), false);

    Term proof = close_lam(params_, close_lam({{motive_var, motive_type}},
                                              close_lam(premises, fixpoint(premises, used,
                                                                           dependent))));
    return {statement, proof};
  }

 private:
  Term instantiate_params(const Term& t) const {
    std::vector<Term> vals;
    for (const auto& p : params_) vals.push_back(p.var);
    return instantiate(t, vals);
  }

  std::vector<Term> param_vars() const {
    std::vector<Term> v;
    for (const auto& p : params_) v.push_back(p.var);
    return v;
  }

  Term ind_app(const std::vector<Term>& indices) const {
    std::vector<Term> args = param_vars();
    args.insert(args.end(), indices.begin(), indices.end());
    return mk_app(mk_ind(decl_.name), std::move(args));
  }

  std::pair<std::vector<FreeBinder>, FreeBinder> index_binders(std::set<std::string> used,
                                                               bool dependent) const {
    std::vector<FreeBinder> ys;
    Term ar = instantiate_params(decl_.arity);
    std::vector<Term> vals;
    while (ar.kind() == TermKind::Prod) {
      std::string base = ar.binder_name() == "_" ? default_name(env_, {}, ar.domain())
                                                 : ar.binder_name();
      Term v = mk_free(fresh_name(base, used));
      used.insert(v.name());
      ys.push_back({v, ar.domain()});
      vals.push_back(v);
      ar = subst(ar.body(), v);
    }
    Term xty = ind_app(vals);
    std::string xbase = dependent ? default_name(env_, {}, xty) : "H";
    Term xv = mk_free(fresh_name(xbase, used));
    return {ys, {xv, xty}};
  }

  Term motive_app(const std::vector<FreeBinder>& ys, const FreeBinder& x, bool dependent) const {
    std::vector<Term> args;
    for (const auto& y : ys) args.push_back(y.var);
    if (dependent) args.push_back(x.var);
    return mk_app(motive_, std::move(args));
  }

  Term motive_app_terms(std::vector<Term> indices, const Term& x, bool dependent) const {
    if (dependent) indices.push_back(x);
    return mk_app(motive_, std::move(indices));
  }

  struct CtorShape {
    std::vector<FreeBinder> args;
    std::vector<Term> indices;  // of the conclusion
  };

  CtorShape ctor_shape(int ordinal, std::set<std::string> used) const {
    CtorShape s;
    Term ct = instantiate_params(decl_.constructors[static_cast<std::size_t>(ordinal - 1)].type);
    while (ct.kind() == TermKind::Prod) {
      std::string base = ct.binder_name() == "_" ? default_name(env_, {}, ct.domain())
                                                 : ct.binder_name();
      Term v = mk_free(fresh_name(base, used));
      used.insert(v.name());
      s.args.push_back({v, ct.domain()});
      ct = subst(ct.body(), v);
    }
    auto cargs = app_args(ct);
    s.indices.assign(cargs.begin() + static_cast<long>(decl_.num_params()), cargs.end());
    return s;
  }

  /// For a recursive argument type `forall zs, I params w`, the zs binders and w.
  std::pair<std::vector<FreeBinder>, std::vector<Term>> recursive_shape(const Term& ty) const {
    std::vector<FreeBinder> zs;
    std::set<std::string> used;
    Term t = ty;
    while (t.kind() == TermKind::Prod) {
      Term v = mk_free(fresh_name(t.binder_name() == "_" ? "z" : t.binder_name(), used));
      used.insert(v.name());
      zs.push_back({v, t.domain()});
      t = subst(t.body(), v);
    }
    auto a = app_args(t);
    return {zs, std::vector<Term>(a.begin() + static_cast<long>(decl_.num_params()), a.end())};
  }

  Term ctor_value(int ordinal, const std::vector<FreeBinder>& args) const {
    std::vector<Term> v = param_vars();
    for (const auto& a : args) v.push_back(a.var);
    return mk_app(mk_construct(decl_.name, ordinal), std::move(v));
  }

  Term premise_type(int ordinal, const std::set<std::string>& used, bool dependent) const {
    CtorShape s = ctor_shape(ordinal, used);
    Term body = motive_app_terms(s.indices, ctor_value(ordinal, s.args), dependent);
    for (std::size_t i = s.args.size(); i-- > 0;) {
      const auto& a = s.args[i];
      if (mentions(a.type, decl_.name)) {
        auto [zs, w] = recursive_shape(a.type);
        std::vector<Term> zv;
        for (const auto& z : zs) zv.push_back(z.var);
        Term ih = close_pi(zs, motive_app_terms(w, mk_app(a.var, zv), dependent), false);
        body = mk_arrow(ih, body);
      }
      bool used_later = occurs_free(body, a.var.free_id());
      body = mk_prod(used_later || dependent ? a.var.name() : "_", a.type,
                     abstract(body, a.var.free_id()));
    }
    return body;
  }

  Term fixpoint(const std::vector<FreeBinder>& premises, std::set<std::string> used,
                bool dependent) const {
    for (const auto& p : premises) used.insert(p.var.name());
    Term self = mk_free(fresh_name("F", used));
    used.insert(self.name());
    auto [ys, x] = index_binders(used, true);
    std::vector<FreeBinder> fbinders = ys;
    fbinders.push_back(x);
    Term ftype = close_pi(fbinders, motive_app(ys, x, dependent), false);

    // Return predicate of the match.
    auto [ys2, x2] = index_binders(used, true);
    std::vector<FreeBinder> pbinders = ys2;
    pbinders.push_back(x2);
    Term pred = close_lam(pbinders, motive_app(ys2, x2, dependent));

    std::vector<Term> branches;
    for (std::size_t j = 0; j < decl_.constructors.size(); ++j) {
      const int ordinal = static_cast<int>(j + 1);
      CtorShape s = ctor_shape(ordinal, used);
      std::vector<Term> fargs;
      for (const auto& a : s.args) {
        fargs.push_back(a.var);
        if (!mentions(a.type, decl_.name)) continue;
        auto [zs, w] = recursive_shape(a.type);
        std::vector<Term> zv;
        for (const auto& z : zs) zv.push_back(z.var);
        std::vector<Term> call = w;
        call.push_back(mk_app(a.var, zv));
        fargs.push_back(close_lam(zs, mk_app(self, std::move(call))));
      }
      branches.push_back(close_lam(s.args, mk_app(premises[j].var, std::move(fargs))));
    }
    Term m = mk_match(decl_.name, x.var, pred, std::move(branches));
    Term body = close_lam(fbinders, m);
    return mk_fix(self.name(), static_cast<int>(ys.size() + 1), ftype,
                  abstract(body, self.free_id()));
  }

  const GlobalEnv& env_;
  const InductiveDecl& decl_;
  std::vector<FreeBinder> params_;
  Term motive_;
};

void require_fresh(const GlobalEnv& env, const std::string& name) {
  if (env.contains(name)) fail(ErrorKind::NameClash, name + " already exists.");
}

}  // namespace

Scheme derive_induction(const GlobalEnv& env, const InductiveDecl& decl) {
  return SchemeBuilder(env, decl).build();
}

GlobalEnv check_inductive(const GlobalEnv& env, InductiveDecl decl) {
  require_fresh(env, decl.name);
  require_fresh(env, decl.name + "_ind");
  std::set<std::string> ctor_names;
  for (const auto& c : decl.constructors) {
    require_fresh(env, c.name);
    if (c.name == decl.name || !ctor_names.insert(c.name).second) {
      fail(ErrorKind::NameClash, c.name + " is declared twice.");
    }
  }

  LocalContext pctx;
  for (const auto& p : decl.params) {
    if (mentions(p.type, decl.name)) {
      fail(ErrorKind::NegativeOccurrence, "parameter " + p.name + " mentions " + decl.name);
    }
    infer_sort(env, pctx, p.type);
    pctx.push_in_place(p.name, p.type);
  }
  if (mentions(decl.arity, decl.name)) {
    fail(ErrorKind::NegativeOccurrence, "the arity of " + decl.name + " mentions itself");
  }
  infer_sort(env, pctx, decl.arity);
  Term concl = decl.arity;
  while (concl.kind() == TermKind::Prod) concl = concl.body();
  if (concl.kind() != TermKind::Sort) {
    fail(ErrorKind::NotASort, "the arity of " + decl.name + " does not end in a sort");
  }
  decl.sort = concl.sort();
  decl.large_elimination = true;

  GlobalEnv tmp = env;
  tmp.add_unchecked(decl);
  const std::size_t np = decl.num_params();
  const std::size_t ni = decl.num_indices();
  bool all_args_prop = true;

  for (std::size_t j = 0; j < decl.constructors.size(); ++j) {
    const auto& c = decl.constructors[j];
    infer_sort(tmp, pctx, c.type);
    Term t = c.type;
    LocalContext cctx = pctx;
    int depth = 0;
    int position = 1;
    while (t.kind() == TermKind::Prod) {
      if (!strictly_positive(t.domain(), decl.name, np, ni, depth)) {
        fail(ErrorKind::NegativeOccurrence,
             "Non strictly positive occurrence of \"" + decl.name + "\" in argument " +
                 std::to_string(position) + " of constructor " + c.name);
      }
      Sort s = infer_sort(tmp, cctx, t.domain());
      if (!s.is_prop()) all_args_prop = false;
      if (!decl.sort.is_prop() && !s.is_prop() && !sort_leq(s, decl.sort)) {
        fail(ErrorKind::TypeMismatch, "argument " + std::to_string(position) + " of " + c.name +
                                          " lives in a universe too large for " + decl.name);
      }
      cctx.push_in_place(t.binder_name(), t.domain());
      t = t.body();
      ++depth;
      ++position;
    }
    if (!is_own_conclusion(t, decl.name, np, ni, depth)) {
      fail(ErrorKind::BadConstructorConclusion,
           "the conclusion of " + c.name + " must be " + decl.name + " applied to its parameters");
    }
  }
  if (decl.sort.is_prop()) {
    decl.large_elimination =
        decl.constructors.empty() || (decl.constructors.size() == 1 && all_args_prop);
  }

  GlobalEnv out = env;
  out.add_unchecked(decl);
  Scheme scheme = derive_induction(out, decl);
  ProofCheck pc = check_proof(out, scheme.proof, scheme.statement);
  if (!pc.ok) fail(ErrorKind::Internal, "derived scheme for " + decl.name + " rejected: " + pc.message);
  ConstantDecl ind;
  ind.name = decl.name + "_ind";
  ind.type = scheme.statement;
  ind.body = scheme.proof;
  ind.kind = ConstantKind::Definition;
  ind.transparent = true;
  out.add_unchecked(std::move(ind));
  return out;
}

GlobalEnv add_constant(const GlobalEnv& env, ConstantDecl decl) {
  require_fresh(env, decl.name);
  if (!well_scoped(decl.type, 0) || (decl.body && !well_scoped(*decl.body, 0))) {
    fail(ErrorKind::Internal, "declaration " + decl.name + " is not closed");
  }
  infer_sort(env, {}, decl.type);
  if (decl.body) check_type(env, {}, *decl.body, decl.type);
  GlobalEnv out = env;
  out.add_unchecked(std::move(decl));
  return out;
}

std::vector<std::string> recheck_environment(const GlobalEnv& env) {
  std::vector<std::string> bad;
  for (const auto& d : env.declarations()) {
    const auto* c = std::get_if<ConstantDecl>(d.get());
    if (!c || !c->body) continue;
    try {
      Term ty = infer_type(env, {}, *c->body);
      if (!convertible(env, {}, ty, c->type, true)) bad.push_back(c->name);
    } catch (const Error&) {
      bad.push_back(c->name);
    }
  }
  return bad;
}

}  // namespace hurry
