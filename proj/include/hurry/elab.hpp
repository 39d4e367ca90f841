#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hurry/env.hpp"
#include "hurry/syntax.hpp"
#include "hurry/term.hpp"
#include "hurry/typing.hpp"

namespace hurry {

/// A hole: its own context and type, and its solution once known. A use of
/// hole ?n in some context is Meta(n, instance), where the instance gives one
/// term per entry of the hole's context.
struct MetaInfo {
  LocalContext ctx;
  Term type;
  std::optional<Term> value;
  std::string label;  // binder or goal name, for messages
  Position pos;
};

class MetaStore {
 public:
  /// New hole over `ctx`, used with the identity instance.
  Term fresh(const LocalContext& ctx, Term type, std::string label = {}, Position pos = {});

  const MetaInfo& info(int id) const { return metas_.at(static_cast<std::size_t>(id)); }
  bool solved(int id) const { return info(id).value.has_value(); }
  void assign(int id, Term value);
  std::size_t size() const { return metas_.size(); }

  /// Replace every solved hole by its (instantiated) solution.
  Term instantiate(const Term& t) const;
  /// Type of a Meta node in the context where it occurs.
  Term type_of(const Term& meta) const;
  MetaTyper typer() const;
  /// Unsolved holes occurring in `t`, in order of first occurrence.
  std::vector<int> unsolved_in(const Term& t) const;

  /// Undo point: later holes and later assignments are dropped on restore.
  struct Mark {
    std::size_t metas = 0;
    std::size_t trail = 0;
  };
  Mark snapshot() const { return {metas_.size(), trail_.size()}; }
  void restore(Mark m);

 private:
  std::vector<MetaInfo> metas_;
  std::vector<int> trail_;
};

/// [Rel(n-1), ..., Rel(0)]: the instance of a hole used in its own context.
std::vector<Term> identity_instance(std::size_t n);

/// First-order unification modulo conversion; holes are solved by pattern
/// inversion of their instance. On failure no assignment is kept.
bool unify(const GlobalEnv& env, MetaStore& metas, const LocalContext& ctx, const Term& a,
           const Term& b);

struct Elaborated {
  Term term;
  Term type;
};

class Elaborator {
 public:
  Elaborator(const GlobalEnv& env, MetaStore& metas) : env_(env), metas_(metas) {}

  /// Make `name` resolve to an inductive that is being declared.
  void declare_pending_inductive(const std::string& name, Term full_type) {
    pending_[name] = std::move(full_type);
  }
  /// Resolve the infix symbol to the given local or global name.
  void bind_notation(const std::string& symbol, const std::string& name) {
    notation_[symbol] = name;
  }

  Elaborated infer(const LocalContext& ctx, const ExprPtr& e);
  Term check(const LocalContext& ctx, const ExprPtr& e, const Term& expected);
  /// Elaborate a type; the second component is its sort (Prop if unknown).
  Elaborated type(const LocalContext& ctx, const ExprPtr& e);
  /// Elaborate a binder telescope, pushing each binder onto `ctx`.
  std::vector<Binder> telescope(LocalContext& ctx, const std::vector<SurfaceBinder>& bs);

  /// Unify with `expected` (sorts up to cumulativity) or throw TypeMismatch.
  void coerce(const LocalContext& ctx, const Term& term, const Term& actual,
              const Term& expected, Position pos);

  const GlobalEnv& env() const { return env_; }
  MetaStore& metas() { return metas_; }

 private:
  Elaborated ident(const LocalContext& ctx, const Expr& e, bool explicit_args);
  Elaborated global(const LocalContext& ctx, const std::string& name, Position pos,
                    bool explicit_args);
  Elaborated typed(const LocalContext& ctx, const Term& t);
  Elaborated apply(const LocalContext& ctx, Elaborated f, const std::vector<ExprPtr>& args,
                   std::size_t first, Position pos);
  Elaborated apply_terms(const LocalContext& ctx, Elaborated f, std::vector<Elaborated> args,
                         Position pos);
  Elaborated op(const LocalContext& ctx, const Expr& e, const std::optional<Term>& expected);
  Elaborated binder(const LocalContext& ctx, const Expr& e, const std::optional<Term>& expected);
  Elaborated match(const LocalContext& ctx, const Expr& e, const std::optional<Term>& expected);
  struct MatchRow {
    std::vector<Pattern> pats;
    ExprPtr body;
    std::vector<Binder> lets;  // pattern variables bound to matched subterms
    std::vector<Term> values;
  };
  Term compile_match(const LocalContext& ctx, std::vector<Elaborated> cols,
                     std::vector<MatchRow> rows, const Term& rtype, Position pos);
  Pattern normal_pattern(const Pattern& p, const std::string& ind);
  Elaborated elab(const LocalContext& ctx, const ExprPtr& e, const std::optional<Term>& expected);
  Term hole_type(const LocalContext& ctx, Position pos, const std::string& label);
  Term whnf_z(const LocalContext& ctx, const Term& t);

  const GlobalEnv& env_;
  MetaStore& metas_;
  std::map<std::string, Term> pending_;
  std::map<std::string, std::string> notation_;
};

/// Fully elaborate a closed term (or one over `ctx`); no holes may remain.
Elaborated elaborate_term(const GlobalEnv& env, const LocalContext& ctx, const ExprPtr& e,
                          const std::optional<Term>& expected = std::nullopt);

/// Declarations from sentences. They are elaborated but not yet admitted.
ConstantDecl elaborate_definition(const GlobalEnv& env, const Sentence& s);
ConstantDecl elaborate_fixpoint(const GlobalEnv& env, const Sentence& s);
InductiveDecl elaborate_inductive(const GlobalEnv& env, const Sentence& s);
/// Infix symbol introduced by a Fixpoint's `where` clause, if any.
std::optional<std::string> where_symbol(const Sentence& s);
/// Statement of a Theorem/Lemma: its binders closed over the conclusion.
Term elaborate_statement(const GlobalEnv& env, const Sentence& s);

/// Throw CannotInferBinder / ElaborationError if `t` still has holes.
void require_no_holes(const GlobalEnv& env, const MetaStore& metas, const Term& t,
                      const std::string& what);

}  // namespace hurry
