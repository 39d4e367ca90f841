#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hurry/term.hpp"

namespace hurry {

struct Binder {
  std::string name;
  Term type;
};

/// One hypothesis or local definition. The type (and body) live in the
/// context formed by the entries before it.
struct ContextEntry {
  std::string name;
  Term type;
  std::optional<Term> body;
};

/// Ordered local context; the last entry is de Bruijn index 0.
class LocalContext {
 public:
  LocalContext() = default;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  LocalContext push(std::string name, Term type, std::optional<Term> body = std::nullopt) const;
  void push_in_place(std::string name, Term type, std::optional<Term> body = std::nullopt);

  /// Entry for de Bruijn index i (0 = last pushed).
  const ContextEntry& lookup(int index) const;
  /// Type of index i, lifted into the full context.
  Term type_of(int index) const;
  std::optional<Term> body_of(int index) const;

  const std::vector<ContextEntry>& entries() const { return entries_; }
  /// Entry position (0 = first pushed) of a display name, searching from the end.
  std::optional<std::size_t> find(const std::string& name) const;
  /// de Bruijn index of a position.
  int index_of_position(std::size_t position) const {
    return static_cast<int>(entries_.size() - 1 - position);
  }
  std::vector<std::string> names() const;
  LocalContext prefix(std::size_t length) const;

 private:
  std::vector<ContextEntry> entries_;
};

enum class ConstantKind { Definition, Theorem, Axiom, Oracle };

struct ConstantDecl {
  std::string name;
  Term type;
  std::optional<Term> body;
  ConstantKind kind = ConstantKind::Definition;
  bool transparent = true;
  // Oracle entries: which procedure produced them and its evidence.
  std::string oracle_procedure;
  std::string certificate;
  // Theorems: oracle constants their proofs depend on.
  std::vector<std::string> oracle_deps;
};

struct InductiveDecl {
  std::string name;
  std::vector<Binder> params;
  Term arity;                        // under the parameter telescope
  std::vector<Binder> constructors;  // types under the parameter telescope

  // Filled in on admission.
  Sort sort;
  bool large_elimination = true;

  std::size_t num_params() const { return params.size(); }
  /// Number of index binders in the arity.
  std::size_t num_indices() const;
  /// Full type of the inductive: forall params, arity.
  Term full_type() const;
  /// Full type of constructor j (1-based): forall params, ctor type.
  Term constructor_full_type(int ordinal) const;
  /// Number of non-parameter arguments of constructor j (1-based).
  std::size_t constructor_arity(int ordinal) const;
};

using Declaration = std::variant<ConstantDecl, InductiveDecl>;

enum class GlobalKind { Constant, Inductive, Constructor };

struct GlobalRef {
  GlobalKind kind;
  std::size_t index;  // position in the declaration list
  int ordinal = 0;    // constructor ordinal
};

/// Ordered declaration store. Values are cheap to copy and never mutated once
/// shared: extension builds a new environment.
class GlobalEnv {
 public:
  GlobalEnv() = default;

  std::optional<GlobalRef> lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup(name).has_value(); }

  const ConstantDecl* constant(const std::string& name) const;
  const InductiveDecl* inductive(const std::string& name) const;
  /// Name of constructor `ordinal` of inductive `ind`.
  std::string constructor_name(const std::string& ind, int ordinal) const;

  /// Type of a global reference term (Const, Ind, Construct).
  Term type_of_global(const Term& t) const;

  const std::vector<std::shared_ptr<const Declaration>>& declarations() const { return decls_; }
  std::size_t size() const { return decls_.size(); }

  /// Unchecked insertion; callers go through the kernel admission functions.
  void add_unchecked(Declaration decl);

  // Package bookkeeping and notation rebinding.
  const std::set<std::string>& packages() const { return packages_; }
  void mark_package(const std::string& name) { packages_.insert(name); }
  bool has_package(const std::string& name) const { return packages_.count(name) > 0; }
  const std::map<std::string, std::string>& notation_bindings() const { return notation_bindings_; }
  void bind_notation(const std::string& symbol, const std::string& constant) {
    notation_bindings_[symbol] = constant;
  }

 private:
  std::vector<std::shared_ptr<const Declaration>> decls_;
  std::unordered_map<std::string, GlobalRef> names_;
  std::set<std::string> packages_;
  std::map<std::string, std::string> notation_bindings_;
};

const std::string& declaration_name(const Declaration& d);

}  // namespace hurry
