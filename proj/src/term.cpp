#include "hurry/term.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <set>

#include "hurry/error.hpp"

namespace hurry {

bool sort_leq(Sort a, Sort b) {
  if (a == b) return true;
  switch (b.kind) {
    case SortKind::Prop:
      return false;
    case SortKind::Set:
      return false;
    case SortKind::Type:
      return a.kind != SortKind::Type || a.level <= b.level;
  }
  return false;
}

namespace {

int binder_offset(TermKind kind, std::size_t child) {
  switch (kind) {
    case TermKind::Prod:
    case TermKind::Lambda:
      return child == 1 ? 1 : 0;
    case TermKind::LetIn:
      return child == 2 ? 1 : 0;
    case TermKind::Fix:
      return child == 1 ? 1 : 0;
    default:
      return 0;
  }
}

const TermNode& at(const Term& t) {
  if (!t) fail(ErrorKind::Internal, "null term");
  return *t.node();
}

}  // namespace

Term make_node(TermNode node) {
  node.loose = 0;
  node.meta = node.kind == TermKind::Meta;
  node.fvar = node.kind == TermKind::Free;
  if (node.kind == TermKind::Rel) node.loose = node.num + 1;
  for (std::size_t i = 0; i < node.kids.size(); ++i) {
    const auto& k = at(node.kids[i]);
    node.loose = std::max(node.loose, k.loose - binder_offset(node.kind, i));
    node.meta = node.meta || k.meta;
    node.fvar = node.fvar || k.fvar;
  }
  Term t;
  t.node_ = std::make_shared<const TermNode>(std::move(node));
  return t;
}

TermKind Term::kind() const { return at(*this).kind; }
int Term::rel_index() const { return at(*this).num; }
Sort Term::sort() const { return at(*this).sort; }
const std::string& Term::binder_name() const { return at(*this).name; }
const Term& Term::domain() const { return at(*this).kids[0]; }
const Term& Term::let_value() const { return at(*this).kids[0]; }
const Term& Term::let_type() const { return at(*this).kids[1]; }
const Term& Term::body() const {
  const auto& n = at(*this);
  switch (n.kind) {
    case TermKind::LetIn:
      return n.kids[2];
    default:
      return n.kids[1];
  }
}
const Term& Term::head() const { return at(*this).kids[0]; }
std::span<const Term> Term::args() const {
  const auto& k = at(*this).kids;
  return std::span<const Term>(k).subspan(1);
}
const std::string& Term::name() const { return at(*this).name; }
int Term::ctor_index() const { return at(*this).num; }
const Term& Term::scrutinee() const { return at(*this).kids[0]; }
const Term& Term::return_pred() const { return at(*this).kids[1]; }
std::span<const Term> Term::branches() const {
  const auto& k = at(*this).kids;
  return std::span<const Term>(k).subspan(2);
}
int Term::fix_struct() const { return at(*this).num; }
const Term& Term::fix_type() const { return at(*this).kids[0]; }
int Term::meta_id() const { return at(*this).num; }
std::span<const Term> Term::meta_args() const { return at(*this).kids; }
std::uint64_t Term::free_id() const { return at(*this).free; }
int Term::loose_bound() const { return at(*this).loose; }
bool Term::has_meta() const { return at(*this).meta; }
bool Term::has_free() const { return at(*this).fvar; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a || !b) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.loose != y.loose || x.kids.size() != y.kids.size()) return false;
  switch (x.kind) {
    case TermKind::Rel:
      return x.num == y.num;
    case TermKind::Sort:
      return x.sort == y.sort;
    case TermKind::Const:
    case TermKind::Ind:
      return x.name == y.name;
    case TermKind::Construct:
      return x.name == y.name && x.num == y.num;
    case TermKind::Match:
      if (x.name != y.name) return false;
      break;
    case TermKind::Fix:
    case TermKind::Meta:
      if (x.num != y.num) return false;
      break;
    case TermKind::Free:
      return x.free == y.free;
    default:
      break;
  }
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (!(x.kids[i] == y.kids[i])) return false;
  }
  return true;
}

Term mk_rel(int index) {
  if (index < 0) fail(ErrorKind::Internal, "negative de Bruijn index");
  TermNode n;
  n.kind = TermKind::Rel;
  n.num = index;
  return make_node(std::move(n));
}

Term mk_sort(Sort s) {
  TermNode n;
  n.kind = TermKind::Sort;
  n.sort = s;
  return make_node(std::move(n));
}

Term mk_prop() { return mk_sort(Sort::prop()); }
Term mk_set() { return mk_sort(Sort::set()); }
Term mk_type(int level) { return mk_sort(Sort::type(level)); }

Term mk_prod(std::string name, Term domain, Term codomain) {
  TermNode n;
  n.kind = TermKind::Prod;
  n.name = std::move(name);
  n.kids = {std::move(domain), std::move(codomain)};
  return make_node(std::move(n));
}

Term mk_arrow(Term domain, Term codomain) {
  return mk_prod("_", std::move(domain), lift(codomain, 1));
}

Term mk_lambda(std::string name, Term domain, Term body) {
  TermNode n;
  n.kind = TermKind::Lambda;
  n.name = std::move(name);
  n.kids = {std::move(domain), std::move(body)};
  return make_node(std::move(n));
}

Term mk_let(std::string name, Term value, Term type, Term body) {
  TermNode n;
  n.kind = TermKind::LetIn;
  n.name = std::move(name);
  n.kids = {std::move(value), std::move(type), std::move(body)};
  return make_node(std::move(n));
}

Term mk_app(Term head, std::vector<Term> args) {
  if (args.empty()) return head;
  TermNode n;
  n.kind = TermKind::App;
  if (head.kind() == TermKind::App) {
    n.kids.assign(at(head).kids.begin(), at(head).kids.end());
  } else {
    n.kids.push_back(std::move(head));
  }
  for (auto& a : args) n.kids.push_back(std::move(a));
  return make_node(std::move(n));
}

Term mk_app(Term head, std::initializer_list<Term> args) {
  return mk_app(std::move(head), std::vector<Term>(args));
}

Term mk_const(std::string name) {
  TermNode n;
  n.kind = TermKind::Const;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Term mk_ind(std::string name) {
  TermNode n;
  n.kind = TermKind::Ind;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Term mk_construct(std::string ind, int ordinal) {
  TermNode n;
  n.kind = TermKind::Construct;
  n.name = std::move(ind);
  n.num = ordinal;
  return make_node(std::move(n));
}

Term mk_match(std::string ind, Term scrutinee, Term return_pred, std::vector<Term> branches) {
  TermNode n;
  n.kind = TermKind::Match;
  n.name = std::move(ind);
  n.kids.reserve(branches.size() + 2);
  n.kids.push_back(std::move(scrutinee));
  n.kids.push_back(std::move(return_pred));
  for (auto& b : branches) n.kids.push_back(std::move(b));
  return make_node(std::move(n));
}

Term mk_fix(std::string name, int struct_arg, Term type, Term body) {
  TermNode n;
  n.kind = TermKind::Fix;
  n.name = std::move(name);
  n.num = struct_arg;
  n.kids = {std::move(type), std::move(body)};
  return make_node(std::move(n));
}

Term mk_meta(int id, std::vector<Term> instance) {
  TermNode n;
  n.kind = TermKind::Meta;
  n.num = id;
  n.kids = std::move(instance);
  return make_node(std::move(n));
}

std::uint64_t fresh_free_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

Term mk_free_with_id(std::uint64_t id, std::string name) {
  TermNode n;
  n.kind = TermKind::Free;
  n.free = id;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Term mk_free(std::string name) { return mk_free_with_id(fresh_free_id(), std::move(name)); }

Term app_head(const Term& t) { return t.kind() == TermKind::App ? t.head() : t; }

std::vector<Term> app_args(const Term& t) {
  if (t.kind() != TermKind::App) return {};
  auto a = t.args();
  return {a.begin(), a.end()};
}

namespace {

using LeafFn = std::function<std::optional<Term>(const Term&, int)>;

/// Rebuild `t`, asking `leaf` first at every node; `skip` prunes subtrees that
/// cannot change.
Term transform(const Term& t, int depth, const LeafFn& leaf,
               const std::function<bool(const Term&, int)>& skip) {
  if (skip(t, depth)) return t;
  if (auto r = leaf(t, depth)) return *r;
  const auto& n = at(t);
  if (n.kids.empty()) return t;
  std::vector<Term> kids;
  kids.reserve(n.kids.size());
  bool changed = false;
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    kids.push_back(transform(n.kids[i], depth + binder_offset(n.kind, i), leaf, skip));
    changed = changed || kids.back().node() != n.kids[i].node();
  }
  if (!changed) return t;
  TermNode copy;
  copy.kind = n.kind;
  copy.num = n.num;
  copy.free = n.free;
  copy.sort = n.sort;
  copy.name = n.name;
  copy.kids = std::move(kids);
  // App nodes whose head became an App must be re-flattened.
  if (copy.kind == TermKind::App && copy.kids[0].kind() == TermKind::App) {
    Term head = copy.kids[0];
    std::vector<Term> rest(copy.kids.begin() + 1, copy.kids.end());
    return mk_app(head, std::move(rest));
  }
  return make_node(std::move(copy));
}

}  // namespace

Term map_term(const Term& t, const TermLeafFn& leaf,
              const std::function<bool(const Term&, int)>& skip) {
  if (!skip) return transform(t, 0, leaf, [](const Term&, int) { return false; });
  return transform(t, 0, leaf, skip);
}

Term lift(const Term& t, int by, int cutoff) {
  if (by == 0 || t.loose_bound() <= cutoff) return t;
  return transform(
      t, 0,
      [&](const Term& x, int depth) -> std::optional<Term> {
        if (x.kind() == TermKind::Rel && x.rel_index() >= cutoff + depth) {
          int k = x.rel_index() + by;
          if (k < 0) fail(ErrorKind::Internal, "de Bruijn index underflow in lift");
          return mk_rel(k);
        }
        return std::nullopt;
      },
      [&](const Term& x, int depth) { return x.loose_bound() <= cutoff + depth; });
}

Term instantiate(const Term& t, std::span<const Term> values) {
  const int n = static_cast<int>(values.size());
  if (n == 0 || t.loose_bound() == 0) return t;
  return transform(
      t, 0,
      [&](const Term& x, int depth) -> std::optional<Term> {
        if (x.kind() != TermKind::Rel) return std::nullopt;
        int i = x.rel_index();
        if (i < depth) return x;
        if (i < depth + n) return lift(values[n - 1 - (i - depth)], depth);
        return mk_rel(i - n);
      },
      [&](const Term& x, int depth) { return x.loose_bound() <= depth; });
}

Term subst(const Term& t, const Term& replacement) {
  return instantiate(t, std::span<const Term>(&replacement, 1));
}

Term substitute_context(const Term& t, std::span<const Term> values) {
  const int n = static_cast<int>(values.size());
  if (t.loose_bound() > n) fail(ErrorKind::Internal, "context substitution out of range");
  return instantiate(t, values);
}

Term abstract(const Term& t, std::span<const std::uint64_t> ids) {
  if (ids.empty() || !t.has_free()) return t;
  const int n = static_cast<int>(ids.size());
  // Make room for the new binders, then plug the variables in.
  Term shifted = lift(t, n);
  return transform(
      shifted, 0,
      [&](const Term& x, int depth) -> std::optional<Term> {
        if (x.kind() != TermKind::Free) return std::nullopt;
        for (int j = 0; j < n; ++j) {
          if (ids[j] == x.free_id()) return mk_rel(depth + n - 1 - j);
        }
        return x;
      },
      [](const Term& x, int) { return !x.has_free(); });
}

Term abstract(const Term& t, std::uint64_t id) {
  return abstract(t, std::span<const std::uint64_t>(&id, 1));
}

Term replace_free(const Term& t, std::uint64_t id, const Term& value) {
  if (!t.has_free()) return t;
  return transform(
      t, 0,
      [&](const Term& x, int depth) -> std::optional<Term> {
        if (x.kind() == TermKind::Free && x.free_id() == id) return lift(value, depth);
        return std::nullopt;
      },
      [](const Term& x, int) { return !x.has_free(); });
}

namespace {

bool any_node(const Term& t, int depth, const std::function<bool(const Term&, int)>& pred,
              const std::function<bool(const Term&, int)>& skip) {
  if (skip(t, depth)) return false;
  if (pred(t, depth)) return true;
  const auto& n = at(t);
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    if (any_node(n.kids[i], depth + binder_offset(n.kind, i), pred, skip)) return true;
  }
  return false;
}

void collect_rels(const Term& t, int depth, std::set<int>& out) {
  if (t.loose_bound() <= depth) return;
  if (t.kind() == TermKind::Rel) {
    out.insert(t.rel_index() - depth);
    return;
  }
  const auto& n = at(t);
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    collect_rels(n.kids[i], depth + binder_offset(n.kind, i), out);
  }
}

}  // namespace

bool occurs_rel(const Term& t, int index) {
  return any_node(
      t, 0,
      [&](const Term& x, int depth) {
        return x.kind() == TermKind::Rel && x.rel_index() == index + depth;
      },
      [&](const Term& x, int depth) { return x.loose_bound() <= index + depth; });
}

bool occurs_free(const Term& t, std::uint64_t id) {
  return any_node(
      t, 0, [&](const Term& x, int) { return x.kind() == TermKind::Free && x.free_id() == id; },
      [](const Term& x, int) { return !x.has_free(); });
}

bool occurs_meta(const Term& t, int id) {
  return any_node(
      t, 0, [&](const Term& x, int) { return x.kind() == TermKind::Meta && x.meta_id() == id; },
      [](const Term& x, int) { return !x.has_meta(); });
}

std::vector<int> free_rels(const Term& t) {
  std::set<int> out;
  collect_rels(t, 0, out);
  return {out.begin(), out.end()};
}

bool well_scoped(const Term& t, int depth) {
  if (t.loose_bound() > depth || t.has_meta() || t.has_free()) return false;
  // App heads are never applications themselves.
  return !any_node(
      t, 0,
      [](const Term& x, int) {
        return x.kind() == TermKind::App &&
               (x.head().kind() == TermKind::App || x.args().empty());
      },
      [](const Term&, int) { return false; });
}

Term beta_head(const Term& t) {
  Term cur = t;
  while (cur.kind() == TermKind::App && cur.head().kind() == TermKind::Lambda) {
    auto args = cur.args();
    Term f = cur.head();
    std::size_t used = 0;
    std::vector<Term> vals;
    while (used < args.size() && f.kind() == TermKind::Lambda) {
      vals.push_back(args[used]);
      f = f.body();
      ++used;
    }
    f = instantiate(f, vals);
    cur = mk_app(f, std::vector<Term>(args.begin() + static_cast<long>(used), args.end()));
  }
  return cur;
}

Term beta_normalize(const Term& t) {
  return transform(
      t, 0,
      [](const Term& x, int) -> std::optional<Term> {
        if (x.kind() == TermKind::App && x.head().kind() == TermKind::Lambda) {
          return beta_normalize(beta_head(x));
        }
        if (x.kind() == TermKind::App) {
          // Normalize children first; the head may become a lambda.
          std::vector<Term> args;
          for (const auto& a : x.args()) args.push_back(beta_normalize(a));
          Term h = beta_normalize(x.head());
          Term r = mk_app(h, std::move(args));
          if (h.kind() == TermKind::Lambda) return beta_normalize(beta_head(r));
          return r;
        }
        return std::nullopt;
      },
      [](const Term&, int) { return false; });
}

}  // namespace hurry
