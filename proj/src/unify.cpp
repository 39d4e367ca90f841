#include <map>

#include "hurry/elab.hpp"
#include "hurry/error.hpp"
#include "hurry/reduction.hpp"

namespace hurry {

std::vector<Term> identity_instance(std::size_t n) {
  std::vector<Term> out;
  out.reserve(n);
  for (std::size_t i = n; i-- > 0;) out.push_back(mk_rel(static_cast<int>(i)));
  return out;
}

Term MetaStore::fresh(const LocalContext& ctx, Term type, std::string label, Position pos) {
  const int id = static_cast<int>(metas_.size());
  metas_.push_back({ctx, std::move(type), std::nullopt, std::move(label), pos});
  return mk_meta(id, identity_instance(ctx.size()));
}

void MetaStore::assign(int id, Term value) {
  auto& m = metas_.at(static_cast<std::size_t>(id));
  if (m.value) fail(ErrorKind::Internal, "hole ?" + std::to_string(id) + " assigned twice");
  m.value = std::move(value);
  trail_.push_back(id);
}

void MetaStore::restore(Mark mark) {
  while (trail_.size() > mark.trail) {
    const auto id = static_cast<std::size_t>(trail_.back());
    trail_.pop_back();
    if (id < metas_.size()) metas_[id].value.reset();
  }
  metas_.resize(mark.metas);
}

Term MetaStore::instantiate(const Term& t) const {
  if (!t.has_meta()) return t;
  return map_term(
      t,
      [&](const Term& x, int) -> std::optional<Term> {
        if (x.kind() != TermKind::Meta || !solved(x.meta_id())) return std::nullopt;
        std::vector<Term> args;
        for (const auto& a : x.meta_args()) args.push_back(instantiate(a));
        return instantiate(substitute_context(*info(x.meta_id()).value, args));
      },
      [](const Term& x, int) { return !x.has_meta(); });
}

Term MetaStore::type_of(const Term& meta) const {
  const auto& m = info(meta.meta_id());
  std::vector<Term> args(meta.meta_args().begin(), meta.meta_args().end());
  return substitute_context(m.type, args);
}

MetaTyper MetaStore::typer() const {
  return [this](const Term& m, const LocalContext&) { return instantiate(type_of(m)); };
}

namespace {

void collect_unsolved(const MetaStore& ms, const Term& t, std::vector<int>& out) {
  if (!t.has_meta()) return;
  if (t.kind() == TermKind::Meta) {
    if (!ms.solved(t.meta_id())) {
      bool seen = false;
      for (int i : out) seen = seen || i == t.meta_id();
      if (!seen) out.push_back(t.meta_id());
    }
  }
  for (const auto& k : t.node()->kids) collect_unsolved(ms, k, out);
}

struct InvertFailure {};

class Unifier {
 public:
  Unifier(const GlobalEnv& env, MetaStore& ms) : env_(env), ms_(ms) {}

  bool go(const LocalContext& ctx, const Term& a0, const Term& b0) {
    Term a = ms_.instantiate(a0);
    Term b = ms_.instantiate(b0);
    if (a == b) return true;
    if (!a.has_meta() && !b.has_meta()) return convertible(env_, ctx, a, b);
    if (flex(a) && solve(ctx, a, b)) return true;
    if (flex(b) && solve(ctx, b, a)) return true;
    if (flex(a) || flex(b)) return false;
    auto saved = ms_.snapshot();
    if (structural(ctx, a, b)) return true;
    ms_.restore(saved);
    Term a2 = whnf(env_, ctx, a);
    Term b2 = whnf(env_, ctx, b);
    if (a2 != a || b2 != b) return go(ctx, a2, b2);
    return false;
  }

 private:
  bool flex(const Term& t) const { return t.kind() == TermKind::Meta && !ms_.solved(t.meta_id()); }

  bool all(const LocalContext& ctx, std::span<const Term> xs, std::span<const Term> ys) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!go(ctx, xs[i], ys[i])) return false;
    }
    return true;
  }

  bool structural(const LocalContext& ctx, const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TermKind::Rel:
        return a.rel_index() == b.rel_index();
      case TermKind::Sort:
        return a.sort() == b.sort();
      case TermKind::Const:
      case TermKind::Ind:
        return a.name() == b.name();
      case TermKind::Construct:
        return a.name() == b.name() && a.ctor_index() == b.ctor_index();
      case TermKind::Free:
        return a.free_id() == b.free_id();
      case TermKind::Prod:
      case TermKind::Lambda:
        return go(ctx, a.domain(), b.domain()) &&
               go(ctx.push(a.binder_name(), a.domain()), a.body(), b.body());
      case TermKind::LetIn:
        return go(ctx, a.let_type(), b.let_type()) && go(ctx, a.let_value(), b.let_value()) &&
               go(ctx.push(a.binder_name(), a.let_type(), a.let_value()), a.body(), b.body());
      case TermKind::App:
        return a.args().size() == b.args().size() && go(ctx, a.head(), b.head()) &&
               all(ctx, a.args(), b.args());
      case TermKind::Meta:
        return a.meta_id() == b.meta_id() && all(ctx, a.meta_args(), b.meta_args());
      case TermKind::Match:
        return a.name() == b.name() && go(ctx, a.scrutinee(), b.scrutinee()) &&
               go(ctx, a.return_pred(), b.return_pred()) && all(ctx, a.branches(), b.branches());
      case TermKind::Fix:
        return a.fix_struct() == b.fix_struct() && go(ctx, a.fix_type(), b.fix_type()) &&
               go(ctx.push(a.name(), a.fix_type()), a.body(), b.body());
    }
    return false;
  }

  Term invert(const Term& t, int id, const std::map<int, int>& rel_to_index) {
    return map_term(t, [&](const Term& x, int depth) -> std::optional<Term> {
      if (x.kind() == TermKind::Rel) {
        if (x.rel_index() < depth) return x;
        auto it = rel_to_index.find(x.rel_index() - depth);
        if (it == rel_to_index.end()) throw InvertFailure{};
        return mk_rel(it->second + depth);
      }
      if (x.kind() == TermKind::Meta && x.meta_id() == id) throw InvertFailure{};
      return std::nullopt;
    });
  }

  bool solve(const LocalContext& ctx, const Term& m, const Term& t) {
    const int id = m.meta_id();
    const auto args = m.meta_args();
    const int n = static_cast<int>(args.size());
    std::map<int, int> rel_to_index;
    std::map<int, int> count;
    for (const auto& a : args) {
      if (a.kind() == TermKind::Rel) ++count[a.rel_index()];
    }
    for (int j = 0; j < n; ++j) {
      const Term& a = args[static_cast<std::size_t>(j)];
      if (a.kind() == TermKind::Rel && count[a.rel_index()] == 1) {
        rel_to_index[a.rel_index()] = n - 1 - j;
      }
    }
    std::optional<Term> value;
    try {
      value = invert(t, id, rel_to_index);
    } catch (const InvertFailure&) {
      try {
        value = invert(ms_.instantiate(normalize(env_, ctx, t)), id, rel_to_index);
      } catch (const InvertFailure&) {
        return false;
      }
    }
    auto saved = ms_.snapshot();
    ms_.assign(id, *value);
    if (!types_agree(ctx, m, t)) {
      ms_.restore(saved);
      return false;
    }
    return true;
  }

  bool types_agree(const LocalContext& ctx, const Term& m, const Term& t) {
    try {
      MetaTyper typer = ms_.typer();
      Term actual = infer_type(env_, ctx, ms_.instantiate(t), &typer);
      Term expected = ms_.instantiate(ms_.type_of(m));
      Term wa = whnf(env_, ctx, actual);
      Term we = whnf(env_, ctx, expected);
      if (wa.kind() == TermKind::Sort && we.kind() == TermKind::Sort) {
        return sort_leq(wa.sort(), we.sort());
      }
      return go(ctx, actual, expected);
    } catch (const Error&) {
      // Partial terms the kernel cannot type yet are accepted provisionally.
      return true;
    }
  }

  const GlobalEnv& env_;
  MetaStore& ms_;
};

}  // namespace

std::vector<int> MetaStore::unsolved_in(const Term& t) const {
  std::vector<int> out;
  collect_unsolved(*this, instantiate(t), out);
  return out;
}

bool unify(const GlobalEnv& env, MetaStore& metas, const LocalContext& ctx, const Term& a,
           const Term& b) {
  auto saved = metas.snapshot();
  if (Unifier(env, metas).go(ctx, a, b)) return true;
  metas.restore(saved);
  return false;
}

}  // namespace hurry
