#include <cctype>
#include <set>

#include "hurry/notation.hpp"
#include "hurry/syntax.hpp"

namespace hurry {

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Position pos;
};

const char* const kSymbols[] = {":=", "=>", "->", "<-", "<=", ">=", "<>", "/\\", "\\/", "::",
                                "++", "(",  ")",  "{",  "}",  "[",  "]",  ":",   ",",   ".",
                                "|",  ";",  "~",  "=",  "<",  ">",  "+",  "-",   "*",   "^",
                                "@",  "!",  "?",  "%"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  Lexer(const std::string& src, Position origin) : src_(src), line_(origin.line), col_(origin.column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t;
      t.pos = {line_, col_};
      if (i_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[i_];
      if (ident_start(c)) {
        std::size_t j = i_;
        while (j < src_.size() && ident_char(src_[j])) ++j;
        t.kind = Tok::Ident;
        t.text = src_.substr(i_, j - i_);
        advance(j - i_);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i_;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        t.kind = Tok::Number;
        t.text = src_.substr(i_, j - i_);
        advance(j - i_);
      } else if (c == '"') {
        std::size_t j = i_ + 1;
        while (j < src_.size() && src_[j] != '"') ++j;
        if (j >= src_.size()) throw Error(ErrorKind::SyntaxError, "unterminated string", t.pos);
        t.kind = Tok::String;
        t.text = src_.substr(i_ + 1, j - i_ - 1);
        advance(j + 1 - i_);
      } else {
        bool found = false;
        for (const char* s : kSymbols) {
          std::string sym(s);
          if (src_.compare(i_, sym.size(), sym) == 0) {
            t.kind = Tok::Symbol;
            t.text = sym;
            advance(sym.size());
            found = true;
            break;
          }
        }
        if (!found) {
          throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'",
                      t.pos);
        }
      }
      out.push_back(t);
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && i_ < src_.size(); ++k, ++i_) {
      if (src_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_blank() {
    while (i_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
        advance(1);
      } else if (src_.compare(i_, 2, "(*") == 0) {
        Position start{line_, col_};
        int depth = 0;
        do {
          if (src_.compare(i_, 2, "(*") == 0) {
            ++depth;
            advance(2);
          } else if (src_.compare(i_, 2, "*)") == 0) {
            --depth;
            advance(2);
          } else {
            advance(1);
          }
        } while (depth > 0 && i_ < src_.size());
        if (depth > 0) throw Error(ErrorKind::SyntaxError, "unterminated comment", start);
      } else {
        return;
      }
    }
  }

  const std::string& src_;
  std::size_t i_ = 0;
  int line_;
  int col_;
};

const std::set<std::string> kKeywords = {"forall", "fun",  "exists", "let",   "in",
                                         "match",  "with", "end",    "as",    "return",
                                         "fix",    "struct", "where", "Prop", "Set", "Type"};

struct InfixInfo {
  int level;
  Assoc assoc;
};

std::optional<InfixInfo> infix_info(const std::string& sym) {
  if (sym == "->") return InfixInfo{level::kArrow, Assoc::Right};
  if (sym == "<>") return InfixInfo{level::kRel, Assoc::None};
  if (const auto* e = find_infix(sym)) return InfixInfo{e->level, e->assoc};
  return std::nullopt;
}

std::shared_ptr<Expr> node(ExprKind k, Position pos) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->pos = pos;
  return e;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Symbol && peek(k).text == s;
  }
  bool is_word(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  Token next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }

  [[noreturn]] void error(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::SyntaxError, "Syntax error: expected " + expected + " but found " + found,
                t.pos);
  }

  void expect_sym(const std::string& s) {
    if (!is_sym(s)) error("'" + s + "'");
    next();
  }
  void expect_word(const std::string& s) {
    if (!is_word(s)) error("'" + s + "'");
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) error("an identifier");
    return next().text;
  }
  void expect_end() {
    if (is_sym(".")) next();
    if (!at_end()) error("end of sentence");
  }

  // ---------------------------------------------------------------- terms

  ExprPtr expr(int max_level = level::kBinder) {
    auto [lhs, lhs_level] = prefix(max_level);
    while (true) {
      if (peek().kind != Tok::Symbol) break;
      auto info = infix_info(peek().text);
      if (!info || info->level > max_level) break;
      bool allowed = info->assoc == Assoc::Left ? lhs_level <= info->level
                                                : lhs_level < info->level;
      if (!allowed) break;
      Token op = next();
      int rhs_max = info->assoc == Assoc::Right ? info->level : info->level - 1;
      if (op.text == "->") rhs_max = level::kBinder;
      ExprPtr rhs = expr(rhs_max);
      auto e = node(ExprKind::Op, op.pos);
      e->name = op.text;
      e->args = {lhs, rhs};
      lhs = e;
      lhs_level = info->level;
    }
    return lhs;
  }

  bool starts_primary() const {
    const Token& t = peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Ident) {
      return !kKeywords.count(t.text) || t.text == "Prop" || t.text == "Set" ||
             t.text == "Type" || t.text == "match";
    }
    return is_sym("(") || is_sym("@");
  }

  std::pair<ExprPtr, int> prefix(int max_level) {
    const Token& t = peek();
    if (t.kind == Tok::Ident &&
        (t.text == "forall" || t.text == "fun" || t.text == "exists" || t.text == "let")) {
      return {binder_form(), level::kBinder};
    }
    if (is_sym("~")) {
      Token op = next();
      auto e = node(ExprKind::Op, op.pos);
      e->name = "~";
      e->args = {expr(level::kNot)};
      return {e, level::kNot};
    }
    (void)max_level;
    ExprPtr head = primary();
    if (!starts_primary()) return {head, level::kAtom};
    auto app = node(ExprKind::App, head->pos);
    app->args.push_back(head);
    while (starts_primary()) app->args.push_back(primary());
    return {app, level::kApp};
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      Token n = next();
      auto e = node(ExprKind::Num, n.pos);
      e->num = std::stoull(n.text);
      return e;
    }
    if (is_sym("@")) {
      Token at = next();
      auto e = node(ExprKind::Explicit, at.pos);
      e->name = ident();
      return e;
    }
    if (is_sym("(")) {
      Token open = next();
      ExprPtr inner = expr();
      if (is_sym(",")) {
        auto p = node(ExprKind::Pair, open.pos);
        p->args.push_back(inner);
        while (is_sym(",")) {
          next();
          p->args.push_back(expr());
        }
        expect_sym(")");
        // (a, b, c) nests to the left.
        while (p->args.size() > 2) {
          auto q = node(ExprKind::Pair, open.pos);
          q->args = {p->args[0], p->args[1]};
          std::vector<ExprPtr> rest = {q};
          rest.insert(rest.end(), p->args.begin() + 2, p->args.end());
          p->args = rest;
        }
        return p;
      }
      expect_sym(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "Prop" || t.text == "Set" || t.text == "Type") {
        Token s = next();
        auto e = node(ExprKind::Sort, s.pos);
        e->sort = s.text == "Prop" ? Sort::prop() : s.text == "Set" ? Sort::set() : Sort::type(1);
        return e;
      }
      if (t.text == "match") return match_expr();
      if (t.text == "_") {
        Token h = next();
        return node(ExprKind::Hole, h.pos);
      }
      if (!kKeywords.count(t.text)) {
        Token id = next();
        auto e = node(ExprKind::Ident, id.pos);
        e->name = id.text;
        return e;
      }
    }
    error("a term");
  }

  std::vector<SurfaceBinder> binders(bool allow_simple_typed) {
    std::vector<SurfaceBinder> out;
    while (true) {
      if (is_sym("(")) {
        next();
        SurfaceBinder b;
        while (!is_sym(":")) b.names.push_back(binder_name());
        if (b.names.empty()) error("a binder name");
        expect_sym(":");
        b.type = expr();
        expect_sym(")");
        out.push_back(std::move(b));
        continue;
      }
      if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) {
        SurfaceBinder b;
        while (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) {
          b.names.push_back(next().text);
        }
        if (allow_simple_typed && is_sym(":")) {
          next();
          b.type = expr();
          out.push_back(std::move(b));
          return out;
        }
        for (auto& n : b.names) out.push_back({{n}, nullptr});
        continue;
      }
      return out;
    }
  }

  std::string binder_name() {
    if (peek().kind != Tok::Ident || (kKeywords.count(peek().text) && peek().text != "_")) {
      error("a binder name");
    }
    return next().text;
  }

  ExprPtr binder_form() {
    Token kw = next();
    if (kw.text == "let") {
      auto e = node(ExprKind::Let, kw.pos);
      SurfaceBinder b;
      b.names.push_back(ident());
      auto params = binders(false);
      if (is_sym(":")) {
        next();
        e->type = expr();
      }
      expect_sym(":=");
      ExprPtr value = expr();
      if (!params.empty()) {
        auto f = node(ExprKind::Fun, kw.pos);
        f->binders = params;
        f->body = value;
        value = f;
      }
      e->value = value;
      e->binders.push_back(b);
      expect_word("in");
      e->body = expr();
      return e;
    }
    ExprKind k = kw.text == "forall" ? ExprKind::Forall
                 : kw.text == "fun"  ? ExprKind::Fun
                                     : ExprKind::Exists;
    auto e = node(k, kw.pos);
    e->binders = binders(true);
    if (e->binders.empty()) error("a binder");
    if (k == ExprKind::Fun) {
      expect_sym("=>");
    } else {
      expect_sym(",");
    }
    e->body = expr();
    return e;
  }

  Pattern pattern(bool allow_args) {
    Pattern p;
    p.pos = peek().pos;
    if (is_sym("(")) {
      next();
      p = pattern(true);
      expect_sym(")");
      return p;
    }
    if (peek().kind == Tok::Number) {
      p.kind = Pattern::Kind::Num;
      p.num = std::stoull(next().text);
      return p;
    }
    if (is_word("_")) {
      next();
      return p;
    }
    std::string head = ident();
    std::vector<Pattern> args;
    if (allow_args) {
      while (is_sym("(") || peek().kind == Tok::Number ||
             (peek().kind == Tok::Ident && !kKeywords.count(peek().text))) {
        args.push_back(pattern(false));
      }
    }
    p.name = head;
    if (args.empty()) {
      p.kind = Pattern::Kind::Name;
    } else {
      p.kind = Pattern::Kind::Ctor;
      p.args = std::move(args);
    }
    return p;
  }

  ExprPtr match_expr() {
    Token kw = next();
    auto e = node(ExprKind::Match, kw.pos);
    e->args.push_back(expr());
    if (is_word("as")) {
      next();
      e->as_name = ident();
    }
    if (is_word("return")) {
      next();
      e->type = expr();
    }
    expect_word("with");
    if (is_sym("|")) next();
    while (!is_word("end")) {
      MatchBranch br;
      br.pattern = pattern(true);
      expect_sym("=>");
      br.body = expr();
      e->branches.push_back(std::move(br));
      if (is_sym("|")) {
        next();
        continue;
      }
      if (!is_word("end")) error("'|' or 'end'");
    }
    next();
    return e;
  }

  // -------------------------------------------------------------- tactics

  TacticPtr tactic_expr() {
    TacticPtr left = tactic_atom();
    while (is_sym(";")) {
      Token semi = next();
      auto seq = std::make_shared<Tactic>();
      seq->kind = TacticKind::Seq;
      seq->pos = semi.pos;
      seq->children = {left, tactic_atom()};
      left = seq;
    }
    return left;
  }

  std::vector<std::string> idents_until_end() {
    std::vector<std::string> out;
    while (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) out.push_back(next().text);
    return out;
  }

  IntroPattern intro_pattern() {
    IntroPattern p;
    expect_sym("[");
    p.alternatives.emplace_back();
    while (!is_sym("]")) {
      if (is_sym("|")) {
        next();
        p.alternatives.emplace_back();
        continue;
      }
      if (is_sym("?")) {
        next();
        p.alternatives.back().push_back("?");
        continue;
      }
      p.alternatives.back().push_back(binder_name());
    }
    next();
    return p;
  }

  TacticPtr tactic_atom() {
    auto t = std::make_shared<Tactic>();
    t->pos = peek().pos;
    if (is_sym("(")) {
      next();
      TacticPtr inner = tactic_expr();
      expect_sym(")");
      return inner;
    }
    if (peek().kind != Tok::Ident) error("a tactic");
    const std::string w = next().text;
    auto arg = [&] { t->exprs.push_back(expr()); };
    if (w == "try" || w == "repeat") {
      t->kind = w == "try" ? TacticKind::Try : TacticKind::Repeat;
      t->children.push_back(tactic_atom());
    } else if (w == "intro") {
      t->kind = TacticKind::Intro;
      t->names = idents_until_end();
      if (t->names.size() > 1) error("at most one name");
    } else if (w == "intros") {
      t->kind = TacticKind::Intros;
      t->names = idents_until_end();
    } else if (w == "exact") {
      t->kind = TacticKind::Exact;
      arg();
    } else if (w == "assumption") {
      t->kind = TacticKind::Assumption;
    } else if (w == "apply") {
      t->kind = TacticKind::Apply;
      arg();
      if (is_word("with")) {
        next();
        while (starts_primary()) t->exprs.push_back(primary());
        if (t->exprs.size() < 2) error("a binding after 'with'");
      }
    } else if (w == "split") {
      t->kind = TacticKind::Split;
    } else if (w == "left") {
      t->kind = TacticKind::Left;
    } else if (w == "right") {
      t->kind = TacticKind::Right;
    } else if (w == "exists") {
      t->kind = TacticKind::Exists;
      arg();
    } else if (w == "elim" || w == "induction") {
      t->kind = TacticKind::Elim;
      arg();
    } else if (w == "case") {
      t->kind = TacticKind::Case;
      arg();
    } else if (w == "destruct") {
      t->kind = TacticKind::Destruct;
      arg();
      if (is_word("as")) {
        next();
        t->pattern = intro_pattern();
      }
    } else if (w == "rewrite") {
      t->kind = TacticKind::Rewrite;
      if (is_sym("<-")) {
        next();
        t->backwards = true;
      } else if (is_sym("->")) {
        next();
      }
      arg();
      if (is_word("in")) {
        next();
        t->names.push_back(ident());
      }
    } else if (w == "reflexivity") {
      t->kind = TacticKind::Reflexivity;
    } else if (w == "symmetry") {
      t->kind = TacticKind::Symmetry;
    } else if (w == "assert") {
      t->kind = TacticKind::Assert;
      if (is_sym("(") && peek(1).kind == Tok::Ident && is_sym(":", 2)) {
        next();
        t->names.push_back(ident());
        expect_sym(":");
        arg();
        expect_sym(")");
      } else {
        arg();
        if (is_word("as")) {
          next();
          t->names.push_back(ident());
        }
      }
    } else if (w == "simpl") {
      t->kind = TacticKind::Simpl;
      if (is_word("in")) {
        next();
        t->names.push_back(ident());
      }
    } else if (w == "ring") {
      t->kind = TacticKind::Ring;
    } else if (w == "omega") {
      t->kind = TacticKind::Omega;
    } else if (w == "auto" || w == "eauto") {
      t->kind = TacticKind::Auto;
      if (is_word("with")) {
        next();
        t->names = idents_until_end();
      }
    } else if (w == "trivial") {
      t->kind = TacticKind::Trivial;
      if (is_word("with")) {
        next();
        t->names = idents_until_end();
      }
    } else if (w == "intuition" || w == "tauto") {
      t->kind = TacticKind::Intuition;
    } else if (w == "discriminate") {
      t->kind = TacticKind::Discriminate;
      t->names = idents_until_end();
    } else if (w == "injection") {
      t->kind = TacticKind::Injection;
      t->names.push_back(ident());
    } else if (w == "inversion") {
      t->kind = TacticKind::Inversion;
      t->names.push_back(ident());
    } else if (w == "clear") {
      t->kind = TacticKind::Clear;
      t->names = idents_until_end();
      if (t->names.empty()) error("a hypothesis name");
    } else if (w == "subst") {
      t->kind = TacticKind::Subst;
      t->names = idents_until_end();
    } else if (w == "unfold") {
      t->kind = TacticKind::Unfold;
      t->names.push_back(ident());
      while (is_sym(",")) {
        next();
        t->names.push_back(ident());
      }
    } else if (w == "exfalso") {
      t->kind = TacticKind::Exfalso;
    } else if (w == "contradiction") {
      t->kind = TacticKind::Contradiction;
    } else {
      throw Error(ErrorKind::SyntaxError, "Unknown tactic or command " + w, t->pos);
    }
    return t;
  }

  // ------------------------------------------------------------ sentences

  Sentence sentence() {
    Sentence s;
    s.pos = peek().pos;
    if (peek().kind != Tok::Ident) error("a command or tactic");
    const std::string w = peek().text;
    if (w == "Check") {
      next();
      s.kind = SentenceKind::Check;
      s.term = expr();
    } else if (w == "Eval") {
      next();
      s.kind = SentenceKind::Eval;
      s.strategy = ident();
      if (s.strategy != "compute" && s.strategy != "simpl" && s.strategy != "cbv") {
        throw Error(ErrorKind::SyntaxError, "unknown reduction strategy " + s.strategy, s.pos);
      }
      expect_word("in");
      s.term = expr();
    } else if (w == "Definition") {
      next();
      s.kind = SentenceKind::Definition;
      s.name = ident();
      s.binders = binders(false);
      if (is_sym(":")) {
        next();
        s.type = expr();
      }
      expect_sym(":=");
      s.term = expr();
    } else if (w == "Fixpoint") {
      next();
      s.kind = SentenceKind::Fixpoint;
      s.name = ident();
      s.binders = binders(false);
      if (is_sym("{")) {
        next();
        expect_word("struct");
        s.struct_arg = ident();
        expect_sym("}");
      }
      expect_sym(":");
      s.type = expr();
      expect_sym(":=");
      s.term = expr();
      if (is_word("where")) {
        next();
        if (peek().kind != Tok::String) error("a notation string");
        s.where_notation = next().text;
        expect_sym(":=");
        s.where_term = expr();
      }
    } else if (w == "Inductive") {
      next();
      s.kind = SentenceKind::Inductive;
      s.name = ident();
      s.binders = binders(false);
      expect_sym(":");
      s.type = expr();
      expect_sym(":=");
      if (is_sym("|")) next();
      while (peek().kind == Tok::Ident) {
        ConstructorSyntax c;
        c.pos = peek().pos;
        c.name = ident();
        c.binders = binders(false);
        if (is_sym(":")) {
          next();
          c.type = expr();
        }
        s.constructors.push_back(std::move(c));
        if (!is_sym("|")) break;
        next();
      }
    } else if (w == "Theorem" || w == "Lemma" || w == "Example" || w == "Remark" ||
               w == "Fact" || w == "Corollary" || w == "Proposition") {
      next();
      s.kind = SentenceKind::TheoremStart;
      s.keyword = w;
      s.name = ident();
      s.binders = binders(false);
      expect_sym(":");
      s.term = expr();
    } else if (w == "Proof") {
      next();
      s.kind = SentenceKind::Proof;
    } else if (w == "Qed" || w == "Defined" || w == "Save") {
      next();
      s.kind = SentenceKind::Qed;
    } else if (w == "Abort") {
      next();
      s.kind = SentenceKind::Abort;
    } else if (w == "Require") {
      next();
      s.kind = SentenceKind::RequireImport;
      if (is_word("Import") || is_word("Export")) next();
      s.names = idents_until_end();
      if (s.names.empty()) error("a package name");
    } else if (w == "Search") {
      next();
      s.kind = SentenceKind::Search;
      s.name = ident();
    } else if (w == "SearchPattern") {
      next();
      s.kind = SentenceKind::SearchPattern;
      s.term = expr();
    } else if (w == "SearchRewrite") {
      next();
      s.kind = SentenceKind::SearchRewrite;
      s.term = expr();
    } else if (w == "Locate") {
      next();
      s.kind = SentenceKind::Locate;
      if (peek().kind != Tok::String) error("a notation string");
      s.name = next().text;
    } else {
      s.kind = SentenceKind::Tactic;
      s.tactic = tactic_expr();
    }
    expect_end();
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

bool blank_or_end(const std::string& s, std::size_t i) {
  return i >= s.size() || std::isspace(static_cast<unsigned char>(s[i]));
}

}  // namespace

SplitResult split_sentences(const std::string& source) {
  SplitResult r;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto step = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < source.size(); ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  std::string current;
  Position start;
  bool in_sentence = false;
  while (i < source.size()) {
    char c = source[i];
    if (source.compare(i, 2, "(*") == 0) {
      int depth = 0;
      do {
        if (source.compare(i, 2, "(*") == 0) {
          ++depth;
          step(2);
        } else if (source.compare(i, 2, "*)") == 0) {
          --depth;
          step(2);
        } else {
          step(1);
        }
      } while (depth > 0 && i < source.size());
      if (in_sentence) current += ' ';
      continue;
    }
    if (!in_sentence) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        step(1);
        continue;
      }
      in_sentence = true;
      start = {line, col};
      current.clear();
    }
    if (c == '"') {
      std::size_t j = source.find('"', i + 1);
      std::size_t len = (j == std::string::npos ? source.size() : j + 1) - i;
      current += source.substr(i, len);
      step(len);
      continue;
    }
    if (c == '.' && blank_or_end(source, i + 1)) {
      r.sentences.push_back({current, start});
      in_sentence = false;
      step(1);
      continue;
    }
    current += c;
    step(1);
  }
  if (in_sentence) {
    std::size_t a = current.find_first_not_of(" \t\r\n");
    if (a != std::string::npos) r.incomplete = SourceSentence{current, start};
  }
  return r;
}

Sentence parse_sentence(const std::string& text, Position origin) {
  Parser p(Lexer(text, origin).run());
  Sentence s = p.sentence();
  s.text = text;
  return s;
}

ExprPtr parse_expr(const std::string& text) {
  Parser p(Lexer(text, {1, 1}).run());
  ExprPtr e = p.expr();
  p.expect_end();
  return e;
}

}  // namespace hurry
