#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hurry/error.hpp"
#include "hurry/term.hpp"

namespace hurry {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
  Ident,
  Explicit,  // @ident
  Num,
  Sort,
  Hole,
  App,       // args[0] is the head
  Op,        // infix or prefix notation; name holds the symbol
  Pair,
  Forall,
  Exists,
  Fun,
  Let,
  Match,
};

struct SurfaceBinder {
  std::vector<std::string> names;
  ExprPtr type;  // null when left to inference
};

struct Pattern {
  enum class Kind { Wild, Name, Ctor, Num } kind = Kind::Wild;
  std::string name;  // Name / Ctor head
  unsigned long long num = 0;
  std::vector<Pattern> args;
  Position pos;
};

struct MatchBranch {
  Pattern pattern;
  ExprPtr body;
};

struct Expr {
  ExprKind kind = ExprKind::Hole;
  Position pos;
  std::string name;
  unsigned long long num = 0;
  Sort sort;
  std::vector<ExprPtr> args;
  std::vector<SurfaceBinder> binders;
  ExprPtr body;
  ExprPtr value;  // Let
  ExprPtr type;   // Let annotation, Match return clause
  std::string as_name;  // Match "as"
  std::vector<MatchBranch> branches;
};

struct IntroPattern {
  // Alternatives separated by '|', each a list of names ("_" and "?" allowed).
  std::vector<std::vector<std::string>> alternatives;
};

struct Tactic;
using TacticPtr = std::shared_ptr<const Tactic>;

enum class TacticKind {
  Intro,
  Intros,
  Exact,
  Assumption,
  Apply,
  Split,
  Left,
  Right,
  Exists,
  Elim,
  Case,
  Destruct,
  Rewrite,
  Reflexivity,
  Symmetry,
  Assert,
  Simpl,
  Ring,
  Omega,
  Auto,
  Trivial,
  Intuition,
  Discriminate,
  Injection,
  Inversion,
  Clear,
  Subst,
  Unfold,
  Exfalso,
  Contradiction,
  Seq,     // children[0]; children[1] on every resulting goal
  Try,
  Repeat,
};

struct Tactic {
  TacticKind kind = TacticKind::Assumption;
  Position pos;
  std::vector<std::string> names;
  std::vector<ExprPtr> exprs;          // main argument first; `with` bindings after
  std::optional<IntroPattern> pattern;  // destruct ... as
  bool backwards = false;               // rewrite <-
  std::vector<TacticPtr> children;
  std::string text;                     // source text, for replay reports
};

enum class SentenceKind {
  Check,
  Eval,
  Definition,
  Fixpoint,
  Inductive,
  TheoremStart,
  Proof,
  Qed,
  Tactic,
  RequireImport,
  Search,
  SearchPattern,
  SearchRewrite,
  Locate,
  Abort,
};

struct ConstructorSyntax {
  std::string name;
  std::vector<SurfaceBinder> binders;
  ExprPtr type;
  Position pos;
};

struct Sentence {
  SentenceKind kind = SentenceKind::Check;
  Position pos;
  std::string text;
  std::string keyword;   // Theorem / Lemma / ...
  std::string name;
  std::string strategy;  // Eval compute / simpl
  std::vector<SurfaceBinder> binders;
  ExprPtr type;
  ExprPtr term;
  std::optional<std::string> struct_arg;
  std::optional<std::string> where_notation;  // "n ^ m"
  ExprPtr where_term;
  std::vector<ConstructorSyntax> constructors;
  std::vector<std::string> names;  // Require Import
  TacticPtr tactic;
};

/// A sentence's source text (terminating period excluded) and its position.
struct SourceSentence {
  std::string text;
  Position pos;
};

/// Split a document into period-terminated sentences, skipping comments.
/// A trailing unterminated fragment is returned with `complete == false`.
struct SplitResult {
  std::vector<SourceSentence> sentences;
  std::optional<SourceSentence> incomplete;
};
SplitResult split_sentences(const std::string& source);

/// Parse one sentence (with or without its final period).
Sentence parse_sentence(const std::string& text, Position origin = {1, 1});

/// Parse a standalone term.
ExprPtr parse_expr(const std::string& text);

}  // namespace hurry
