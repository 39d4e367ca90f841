#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hurry {

enum class SortKind : std::uint8_t { Prop, Set, Type };

inline constexpr int kMaxUniverse = 8;

struct Sort {
  SortKind kind = SortKind::Prop;
  int level = 0;  // >= 1 iff kind == Type

  static Sort prop() { return {SortKind::Prop, 0}; }
  static Sort set() { return {SortKind::Set, 0}; }
  static Sort type(int level) { return {SortKind::Type, level}; }

  bool is_prop() const { return kind == SortKind::Prop; }
  bool is_set() const { return kind == SortKind::Set; }
  bool is_type() const { return kind == SortKind::Type; }

  friend bool operator==(const Sort&, const Sort&) = default;
};

/// Cumulativity: Prop <= Type i, Set <= Type i, Type i <= Type j when i <= j.
bool sort_leq(Sort a, Sort b);

enum class TermKind : std::uint8_t {
  Rel,
  Sort,
  Prod,
  Lambda,
  LetIn,
  App,
  Const,
  Ind,
  Construct,
  Match,
  Fix,
  Meta,  // hole of a proof or elaboration problem, applied to an instance
  Free,  // named free variable used while building terms; never reaches the kernel
};

struct TermNode;

/// Immutable de Bruijn term. Copies share structure.
class Term {
 public:
  Term() = default;

  explicit operator bool() const { return node_ != nullptr; }
  TermKind kind() const;

  // Rel
  int rel_index() const;
  // Sort
  Sort sort() const;
  // Prod / Lambda / LetIn
  const std::string& binder_name() const;
  const Term& domain() const;     // Prod, Lambda
  const Term& let_value() const;  // LetIn
  const Term& let_type() const;   // LetIn
  const Term& body() const;       // Prod, Lambda, LetIn, Fix (under the fix binder)
  // App
  const Term& head() const;
  std::span<const Term> args() const;
  // Const / Ind / Construct / Match / Fix / Free
  const std::string& name() const;
  int ctor_index() const;  // 1-based
  // Match
  const Term& scrutinee() const;
  const Term& return_pred() const;
  std::span<const Term> branches() const;
  // Fix
  int fix_struct() const;  // 1-based
  const Term& fix_type() const;
  // Meta
  int meta_id() const;
  std::span<const Term> meta_args() const;
  // Free
  std::uint64_t free_id() const;

  /// 1 + largest loose de Bruijn index; 0 when closed.
  int loose_bound() const;
  bool has_meta() const;
  bool has_free() const;

  const TermNode* node() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  friend Term make_node(TermNode node);
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind = TermKind::Rel;
  int num = 0;  // rel index, ctor ordinal, fix struct ordinal, meta id
  std::uint64_t free = 0;
  Sort sort;
  std::string name;
  std::vector<Term> kids;
  int loose = 0;
  bool meta = false;
  bool fvar = false;
};

// Builders. mk_app flattens nested applications and drops empty argument lists.
Term mk_rel(int index);
Term mk_sort(Sort s);
Term mk_prop();
Term mk_set();
Term mk_type(int level);
Term mk_prod(std::string name, Term domain, Term codomain);
Term mk_arrow(Term domain, Term codomain);  // non-dependent: codomain is lifted
Term mk_lambda(std::string name, Term domain, Term body);
Term mk_let(std::string name, Term value, Term type, Term body);
Term mk_app(Term head, std::vector<Term> args);
Term mk_app(Term head, std::initializer_list<Term> args);
Term mk_const(std::string name);
Term mk_ind(std::string name);
Term mk_construct(std::string ind, int ordinal);
Term mk_match(std::string ind, Term scrutinee, Term return_pred, std::vector<Term> branches);
Term mk_fix(std::string name, int struct_arg, Term type, Term body);
Term mk_meta(int id, std::vector<Term> instance);
Term mk_free(std::string name);
Term mk_free_with_id(std::uint64_t id, std::string name);

/// Head and arguments of a (possibly non-)application.
Term app_head(const Term& t);
std::vector<Term> app_args(const Term& t);

// De Bruijn plumbing.
Term lift(const Term& t, int by, int cutoff = 0);
/// Replace index 0 with `replacement`, decrementing the other loose indices.
Term subst(const Term& t, const Term& replacement);
/// Instantiate the innermost `values.size()` binders: the last value replaces
/// index 0, the first replaces index n-1. Remaining indices drop by n.
Term instantiate(const Term& t, std::span<const Term> values);
/// Parallel substitution of every loose index: index i becomes values[n-1-i].
/// Indices >= n are an internal error.
Term substitute_context(const Term& t, std::span<const Term> values);
/// Replace each free variable ids[j] by a bound index, as if binders for
/// ids[0..n) were wrapped around `t` (ids.back() is innermost).
Term abstract(const Term& t, std::span<const std::uint64_t> ids);
Term abstract(const Term& t, std::uint64_t id);
/// Replace Free(id) by the given term everywhere.
Term replace_free(const Term& t, std::uint64_t id, const Term& value);

bool occurs_rel(const Term& t, int index);
bool occurs_free(const Term& t, std::uint64_t id);
bool occurs_meta(const Term& t, int id);
/// Collect the loose de Bruijn indices of `t`.
std::vector<int> free_rels(const Term& t);

/// Scope check: every index refers to one of `depth` enclosing entries and no
/// metas or free variables remain.
bool well_scoped(const Term& t, int depth);

/// Beta-normal form (no delta, no iota).
Term beta_normalize(const Term& t);
/// Reduce head beta-redexes only.
Term beta_head(const Term& t);

std::uint64_t fresh_free_id();

/// Rebuild `t`, asking `leaf` first at every node (with the number of binders
/// crossed); a returned term replaces the node. `skip` prunes subtrees.
using TermLeafFn = std::function<std::optional<Term>(const Term&, int)>;
Term map_term(const Term& t, const TermLeafFn& leaf,
              const std::function<bool(const Term&, int)>& skip = nullptr);

}  // namespace hurry
