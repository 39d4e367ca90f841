#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "hurry/arith.hpp"
#include "hurry/error.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"
#include "hurry/tactics.hpp"

namespace hurry::arith {

std::vector<Constraint> expand(const LinearSystem& sys) {
  std::vector<Constraint> out;
  for (const auto& c : sys.constraints) {
    out.push_back({c.coeffs, c.constant, Relation::Le});
    if (c.rel == Relation::Eq) {
      Constraint neg{c.coeffs, -c.constant, Relation::Le};
      for (auto& a : neg.coeffs) a = -a;
      out.push_back(std::move(neg));
    }
  }
  for (std::size_t i = 0; i < sys.num_vars; ++i) {
    Constraint nn{std::vector<Int>(sys.num_vars, 0), 0, Relation::Le};
    nn.coeffs[i] = -1;
    out.push_back(std::move(nn));
  }
  return out;
}

namespace {

using Row = Constraint;

Int ceil_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a > 0) == (b > 0))) q += 1;
  return q;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a > 0) != (b > 0))) q -= 1;
  return q;
}

Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool no_vars(const Row& r) {
  return std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const Int& a) { return a == 0; });
}

bool contradictory(const Row& r) { return no_vars(r) && r.constant > 0; }
bool trivial(const Row& r) { return no_vars(r) && r.constant <= 0; }

Row tighten(const Row& r) {
  Int g = 0;
  for (const auto& a : r.coeffs) g = gcd(g, a);
  if (g <= 1) return r;
  Row out = r;
  for (auto& a : out.coeffs) a /= g;
  out.constant = ceil_div(r.constant, g);
  return out;
}

std::optional<Row> combine(const std::vector<Row>& rows,
                           const std::vector<std::pair<std::size_t, Int>>& terms,
                           std::size_t n) {
  if (terms.empty()) return std::nullopt;
  Row out{std::vector<Int>(n, 0), 0, Relation::Le};
  for (const auto& [i, m] : terms) {
    if (i >= rows.size() || m < 0 || rows[i].coeffs.size() != n) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) out.coeffs[k] += m * rows[i].coeffs[k];
    out.constant += m * rows[i].constant;
  }
  return out;
}

Row bound_row(std::size_t n, std::size_t var, const Int& bound, bool upper) {
  Row r{std::vector<Int>(n, 0), 0, Relation::Le};
  if (upper) {
    r.coeffs[var] = 1;
    r.constant = -bound;
  } else {
    r.coeffs[var] = -1;
    r.constant = bound + 1;
  }
  return r;
}

Rational ceil_rat(const Rational& q) {
  return Rational(ceil_div(numerator(q), denominator(q)));
}

Rational floor_rat(const Rational& q) {
  return Rational(floor_div(numerator(q), denominator(q)));
}

class Solver {
 public:
  explicit Solver(std::size_t n) : n_(n) {}

  /// Either fills `model` or returns a refutation of `rows`.
  Refutation solve(const std::vector<Row>& rows, std::optional<std::vector<Int>>& model,
                   int depth) {
    if (++nodes_ > kMaxNodes || depth > kMaxDepth) {
      throw Error(ErrorKind::SearchExhausted, "omega: search limit reached.");
    }
    Refutation leaf;
    std::optional<std::size_t> branch_var;
    Rational branch_value;
    if (eliminate(rows, leaf, branch_var, branch_value, model)) return leaf;
    if (model) return {};
    const Int lo = numerator(floor_rat(branch_value));
    Refutation split;
    split.split = true;
    split.var = *branch_var;
    split.bound = lo;
    for (bool upper : {true, false}) {
      std::vector<Row> child = rows;
      child.push_back(bound_row(n_, *branch_var, lo, upper));
      split.children.push_back(solve(child, model, depth + 1));
      if (model) return {};
    }
    return split;
  }

 private:
  static constexpr int kMaxNodes = 4000;
  static constexpr int kMaxDepth = 200;
  static constexpr std::size_t kMaxRows = 20000;

  /// Fourier-Motzkin on `rows`. True with `leaf` filled on refutation;
  /// otherwise either an integral model or a fractional variable to split.
  bool eliminate(const std::vector<Row>& rows, Refutation& leaf,
                 std::optional<std::size_t>& branch_var, Rational& branch_value,
                 std::optional<std::vector<Int>>& model) {
    std::vector<Row> list = rows;
    auto add = [&](Row r, Step s) {
      list.push_back(std::move(r));
      leaf.steps.push_back(std::move(s));
      return list.size() - 1;
    };
    auto tightened = [&](std::size_t i) {
      Row t = tighten(list[i]);
      if (t == list[i]) return i;
      Step s;
      s.kind = Step::Kind::Tighten;
      s.source = i;
      return add(std::move(t), std::move(s));
    };
    auto finish = [&](std::size_t i) {
      if (i + 1 != list.size()) {
        Step s;
        s.terms = {{i, 1}};
        add(list[i], std::move(s));
      }
      return true;
    };

    std::map<std::vector<Int>, std::size_t> seen;
    std::vector<std::size_t> active;
    auto admit = [&](std::size_t i, std::vector<std::size_t>& into,
                     std::map<std::vector<Int>, std::size_t>& index) {
      auto it = index.find(list[i].coeffs);
      if (it == index.end()) {
        index.emplace(list[i].coeffs, into.size());
        into.push_back(i);
      } else if (list[into[it->second]].constant < list[i].constant) {
        into[it->second] = i;
      }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t j = tightened(i);
      if (contradictory(list[j])) return finish(j);
      if (trivial(list[j])) continue;
      admit(j, active, seen);
    }

    struct Level {
      std::size_t var;
      std::vector<std::size_t> rows;
    };
    std::vector<Level> levels;
    std::vector<bool> done(n_, false);
    for (std::size_t round = 0; round < n_; ++round) {
      std::size_t best = n_;
      std::size_t best_cost = 0;
      for (std::size_t v = 0; v < n_; ++v) {
        if (done[v]) continue;
        std::size_t p = 0, q = 0;
        for (std::size_t i : active) {
          if (list[i].coeffs[v] > 0) ++p;
          if (list[i].coeffs[v] < 0) ++q;
        }
        if (best == n_ || p * q < best_cost) {
          best = v;
          best_cost = p * q;
        }
      }
      const std::size_t v = best;
      done[v] = true;
      levels.push_back({v, active});
      std::vector<std::size_t> next;
      std::map<std::vector<Int>, std::size_t> index;
      std::vector<std::size_t> pos, neg;
      for (std::size_t i : active) {
        const Int& a = list[i].coeffs[v];
        if (a > 0) {
          pos.push_back(i);
        } else if (a < 0) {
          neg.push_back(i);
        } else {
          admit(i, next, index);
        }
      }
      for (std::size_t p : pos) {
        for (std::size_t q : neg) {
          const Int a = list[p].coeffs[v];
          const Int b = -list[q].coeffs[v];
          const Int g = gcd(a, b);
          Step s;
          s.terms = {{p, b / g}, {q, a / g}};
          Row r = *combine(list, s.terms, n_);
          if (trivial(r)) continue;
          std::size_t i = tightened(add(std::move(r), std::move(s)));
          if (contradictory(list[i])) return finish(i);
          admit(i, next, index);
        }
      }
      if (next.size() > kMaxRows) {
        throw Error(ErrorKind::SearchExhausted, "omega: search limit reached.");
      }
      active = std::move(next);
    }

    // Satisfiable over the rationals: pick the smallest point level by level.
    std::vector<Rational> x(n_, 0);
    for (std::size_t k = levels.size(); k-- > 0;) {
      const std::size_t v = levels[k].var;
      std::optional<Rational> lo, hi;
      for (std::size_t i : levels[k].rows) {
        const Row& r = list[i];
        const Int& a = r.coeffs[v];
        if (a == 0) continue;
        Rational rest = r.constant;
        for (std::size_t u = 0; u < n_; ++u) {
          if (u != v) rest += Rational(r.coeffs[u]) * x[u];
        }
        Rational b = -rest / Rational(a);
        if (a > 0) {
          if (!hi || b < *hi) hi = b;
        } else {
          if (!lo || b > *lo) lo = b;
        }
      }
      Rational val = lo ? *lo : Rational(0);
      Rational up = ceil_rat(val);
      if (!hi || up <= *hi) val = up;
      x[v] = val;
      if (denominator(val) != 1 && !branch_var) {
        branch_var = v;
        branch_value = val;
      }
    }
    if (branch_var) return false;
    std::vector<Int> m;
    for (const auto& q : x) m.push_back(numerator(q));
    model = std::move(m);
    return false;
  }

  std::size_t n_;
  int nodes_ = 0;
};

bool check(const std::vector<Row>& base, const Refutation& r, std::size_t n) {
  if (r.split) {
    if (r.children.size() != 2 || r.var >= n || !r.steps.empty()) return false;
    for (int k = 0; k < 2; ++k) {
      std::vector<Row> child = base;
      child.push_back(bound_row(n, r.var, r.bound, k == 0));
      if (!check(child, r.children[static_cast<std::size_t>(k)], n)) return false;
    }
    return true;
  }
  if (!r.children.empty()) return false;
  std::vector<Row> list = base;
  for (const auto& s : r.steps) {
    if (s.kind == Step::Kind::Tighten) {
      if (s.source >= list.size()) return false;
      list.push_back(tighten(list[s.source]));
    } else {
      auto row = combine(list, s.terms, n);
      if (!row) return false;
      list.push_back(std::move(*row));
    }
  }
  return !list.empty() && contradictory(list.back());
}

// ----------------------------------------------------------- s-expressions

struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

std::optional<Sexp> read_sexp(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size()) return std::nullopt;
  if (s[i] == '(') {
    ++i;
    Sexp out;
    out.is_list = true;
    while (true) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i >= s.size()) return std::nullopt;
      if (s[i] == ')') {
        ++i;
        return out;
      }
      auto kid = read_sexp(s, i);
      if (!kid) return std::nullopt;
      out.list.push_back(std::move(*kid));
    }
  }
  if (s[i] == ')') return std::nullopt;
  Sexp out;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
         s[i] != ')') {
    out.atom += s[i++];
  }
  return out;
}

std::optional<Int> read_int(const Sexp& e) {
  if (e.is_list || e.atom.empty()) return std::nullopt;
  std::size_t start = e.atom[0] == '-' ? 1 : 0;
  if (start == e.atom.size()) return std::nullopt;
  for (std::size_t k = start; k < e.atom.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(e.atom[k]))) return std::nullopt;
  }
  return Int(e.atom);
}

std::optional<std::size_t> read_index(const Sexp& e) {
  auto v = read_int(e);
  if (!v || *v < 0) return std::nullopt;
  return static_cast<std::size_t>(*v);
}

bool head_is(const Sexp& e, const char* name) {
  return e.is_list && !e.list.empty() && !e.list[0].is_list && e.list[0].atom == name;
}

std::optional<LinearSystem> read_system(const Sexp& e) {
  if (!head_is(e, "system") || e.list.size() < 2) return std::nullopt;
  auto n = read_index(e.list[1]);
  if (!n) return std::nullopt;
  LinearSystem sys;
  sys.num_vars = *n;
  for (std::size_t k = 2; k < e.list.size(); ++k) {
    const Sexp& c = e.list[k];
    if (!(head_is(c, "le") || head_is(c, "eq")) || c.list.size() != 3 || !c.list[1].is_list) {
      return std::nullopt;
    }
    Constraint con;
    con.rel = head_is(c, "eq") ? Relation::Eq : Relation::Le;
    for (const auto& a : c.list[1].list) {
      auto v = read_int(a);
      if (!v) return std::nullopt;
      con.coeffs.push_back(*v);
    }
    if (con.coeffs.size() != *n) return std::nullopt;
    auto k0 = read_int(c.list[2]);
    if (!k0) return std::nullopt;
    con.constant = *k0;
    sys.constraints.push_back(std::move(con));
  }
  return sys;
}

std::optional<Refutation> read_refutation(const Sexp& e) {
  Refutation r;
  if (head_is(e, "split")) {
    if (e.list.size() != 5) return std::nullopt;
    auto v = read_index(e.list[1]);
    auto b = read_int(e.list[2]);
    auto left = read_refutation(e.list[3]);
    auto right = read_refutation(e.list[4]);
    if (!v || !b || !left || !right) return std::nullopt;
    r.split = true;
    r.var = *v;
    r.bound = *b;
    r.children.push_back(std::move(*left));
    r.children.push_back(std::move(*right));
    return r;
  }
  if (!head_is(e, "leaf")) return std::nullopt;
  for (std::size_t k = 1; k < e.list.size(); ++k) {
    const Sexp& s = e.list[k];
    Step step;
    if (head_is(s, "tighten") && s.list.size() == 2) {
      auto i = read_index(s.list[1]);
      if (!i) return std::nullopt;
      step.kind = Step::Kind::Tighten;
      step.source = *i;
    } else if (head_is(s, "comb")) {
      for (std::size_t j = 1; j < s.list.size(); ++j) {
        const Sexp& t = s.list[j];
        if (!t.is_list || t.list.size() != 2) return std::nullopt;
        auto i = read_index(t.list[0]);
        auto m = read_int(t.list[1]);
        if (!i || !m) return std::nullopt;
        step.terms.emplace_back(*i, *m);
      }
    } else {
      return std::nullopt;
    }
    r.steps.push_back(std::move(step));
  }
  return r;
}

}  // namespace

Decision decide(const LinearSystem& sys) {
  Solver solver(sys.num_vars);
  std::optional<std::vector<Int>> model;
  Decision d;
  d.certificate = solver.solve(expand(sys), model, 0);
  if (model) {
    d.model = std::move(*model);
    d.certificate = {};
  } else {
    d.refuted = true;
  }
  return d;
}

bool verify_certificate(const LinearSystem& sys, const Refutation& cert) {
  for (const auto& c : sys.constraints) {
    if (c.coeffs.size() != sys.num_vars) return false;
  }
  return check(expand(sys), cert, sys.num_vars);
}

std::string to_sexpr(const LinearSystem& sys) {
  std::ostringstream out;
  out << "(system " << sys.num_vars;
  for (const auto& c : sys.constraints) {
    out << (c.rel == Relation::Eq ? " (eq (" : " (le (");
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) out << (k ? " " : "") << c.coeffs[k];
    out << ") " << c.constant << ")";
  }
  out << ")";
  return out.str();
}

std::string to_sexpr(const Refutation& cert) {
  std::ostringstream out;
  if (cert.split) {
    out << "(split " << cert.var << " " << cert.bound << " " << to_sexpr(cert.children[0]) << " "
        << to_sexpr(cert.children[1]) << ")";
    return out.str();
  }
  out << "(leaf";
  for (const auto& s : cert.steps) {
    if (s.kind == Step::Kind::Tighten) {
      out << " (tighten " << s.source << ")";
    } else {
      out << " (comb";
      for (const auto& [i, m] : s.terms) out << " (" << i << " " << m << ")";
      out << ")";
    }
  }
  out << ")";
  return out.str();
}

std::optional<std::vector<std::pair<LinearSystem, Refutation>>> parse_omega_certificate(
    const std::string& text) {
  std::size_t i = 0;
  auto root = read_sexp(text, i);
  if (!root || !head_is(*root, "omega")) return std::nullopt;
  std::vector<std::pair<LinearSystem, Refutation>> out;
  for (std::size_t k = 1; k < root->list.size(); ++k) {
    const Sexp& c = root->list[k];
    if (!head_is(c, "case") || c.list.size() != 3) return std::nullopt;
    auto sys = read_system(c.list[1]);
    auto ref = read_refutation(c.list[2]);
    if (!sys || !ref) return std::nullopt;
    out.emplace_back(std::move(*sys), std::move(*ref));
  }
  return out;
}

}  // namespace hurry::arith

namespace hurry::tactics {

using namespace arith;

namespace {

struct Lin {
  std::map<int, Int> coef;
  Int constant;

  Lin& operator+=(const Lin& o) {
    for (const auto& [v, c] : o.coef) coef[v] += c;
    constant += o.constant;
    return *this;
  }
  Lin scaled(const Int& k) const {
    Lin r;
    for (const auto& [v, c] : coef) r.coef[v] = c * k;
    r.constant = constant * k;
    return r;
  }
  bool is_constant() const {
    return std::all_of(coef.begin(), coef.end(), [](const auto& p) { return p.second == 0; });
  }
};

struct Literal {
  Lin expr;  // expr <= 0 or expr = 0
  Relation rel;
};

struct Formula {
  enum class Kind { True, False, Lit, And, Or, Not, Unknown } kind = Kind::Unknown;
  std::optional<Literal> lit;
  std::vector<Formula> kids;
};

bool head_is(const Term& t, TermKind k, const char* name, std::size_t nargs) {
  Term h = app_head(t);
  return h.kind() == k && h.name() == name && app_args(t).size() == nargs;
}

class Translator {
 public:
  Translator(ProofState& st, const LocalContext& ctx) : st_(st), ctx_(ctx) {}

  AtomTable atoms;

  Lin linear(const Term& t) {
    if (auto n = as_numeral(t)) return {{}, Int(*n)};
    if (t.kind() == TermKind::App && head_is(t, TermKind::Construct, "nat", 1) &&
        t.head().ctor_index() == 2) {
      Lin r = linear(t.args()[0]);
      r.constant += 1;
      return r;
    }
    if (head_is(t, TermKind::Const, "plus", 2)) {
      Lin r = linear(t.args()[0]);
      r += linear(t.args()[1]);
      return r;
    }
    if (head_is(t, TermKind::Const, "mult", 2)) {
      Lin a = linear(t.args()[0]);
      Lin b = linear(t.args()[1]);
      if (a.is_constant()) return b.scaled(a.constant);
      if (b.is_constant()) return a.scaled(b.constant);
      throw Error(ErrorKind::NonLinearTerm,
                  "omega: nonlinear term " + print_term(st_.env, ctx_, t) + ".");
    }
    if (head_is(t, TermKind::Const, "minus", 2)) {
      throw Error(ErrorKind::ContainsSubtraction,
                  "omega: subtraction is not supported (" + print_term(st_.env, ctx_, t) + ").");
    }
    Lin r;
    r.coef[atoms.intern(t)] = 1;
    return r;
  }

  Formula formula(const Term& t0, int depth = 0) {
    Formula unknown;
    if (depth > 32) return unknown;
    Term t = whnf(st_.env, ctx_, st_.metas.instantiate(t0));
    if (t.kind() == TermKind::Prod) {
      if (occurs_rel(t.body(), 0)) return unknown;
      Formula dom = formula(t.domain(), depth + 1);
      if (dom.kind == Formula::Kind::Unknown) return unknown;
      Formula cod = formula(lift(t.body(), -1, 1), depth + 1);
      if (cod.kind == Formula::Kind::Unknown) return unknown;
      Formula neg{Formula::Kind::Not, std::nullopt, {std::move(dom)}};
      return {Formula::Kind::Or, std::nullopt, {std::move(neg), std::move(cod)}};
    }
    if (head_is(t, TermKind::Ind, "True", 0)) return {Formula::Kind::True, std::nullopt, {}};
    if (head_is(t, TermKind::Ind, "False", 0)) return {Formula::Kind::False, std::nullopt, {}};
    if (head_is(t, TermKind::Ind, "and", 2) || head_is(t, TermKind::Ind, "or", 2)) {
      auto args = app_args(t);
      Formula a = formula(args[0], depth + 1);
      Formula b = formula(args[1], depth + 1);
      if (a.kind == Formula::Kind::Unknown || b.kind == Formula::Kind::Unknown) return unknown;
      const bool conj = app_head(t).name() == "and";
      return {conj ? Formula::Kind::And : Formula::Kind::Or, std::nullopt,
              {std::move(a), std::move(b)}};
    }
    if (head_is(t, TermKind::Ind, "le", 2)) {
      auto args = app_args(t);
      Lin e = linear(args[0]);
      e += linear(args[1]).scaled(-1);
      return {Formula::Kind::Lit, Literal{std::move(e), Relation::Le}, {}};
    }
    if (head_is(t, TermKind::Ind, "eq", 3)) {
      auto args = app_args(t);
      Term ty = whnf(st_.env, ctx_, args[0]);
      if (ty.kind() != TermKind::Ind || ty.name() != "nat") return unknown;
      Lin e = linear(args[1]);
      e += linear(args[2]).scaled(-1);
      return {Formula::Kind::Lit, Literal{std::move(e), Relation::Eq}, {}};
    }
    return unknown;
  }

 private:
  ProofState& st_;
  const LocalContext& ctx_;
};

using Conj = std::vector<Literal>;
using Dnf = std::vector<Conj>;

constexpr std::size_t kMaxCases = 512;

Dnf product(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Conj c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
      if (out.size() > kMaxCases) {
        throw Error(ErrorKind::SearchExhausted, "omega: too many cases.");
      }
    }
  }
  return out;
}

Dnf dnf(const Formula& f, bool positive) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
      return positive ? Dnf{Conj{}} : Dnf{};
    case K::False:
      return positive ? Dnf{} : Dnf{Conj{}};
    case K::Not:
      return dnf(f.kids[0], !positive);
    case K::And:
    case K::Or: {
      const bool conj = (f.kind == K::And) == positive;
      Dnf a = dnf(f.kids[0], positive);
      Dnf b = dnf(f.kids[1], positive);
      if (conj) return product(a, b);
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case K::Lit: {
      const Literal& l = *f.lit;
      if (positive) return {Conj{l}};
      // not (e <= 0): 1 - e <= 0.  not (e = 0): e + 1 <= 0 or 1 - e <= 0.
      Lin flipped = l.expr.scaled(-1);
      flipped.constant += 1;
      Literal gt{flipped, Relation::Le};
      if (l.rel == Relation::Le) return {Conj{gt}};
      Lin lt = l.expr;
      lt.constant += 1;
      return {Conj{Literal{lt, Relation::Le}}, Conj{gt}};
    }
    case K::Unknown:
      break;
  }
  throw Error(ErrorKind::Internal, "omega: untranslated formula.");
}

Constraint to_constraint(const Literal& l, std::size_t n) {
  Constraint c{std::vector<Int>(n, 0), l.expr.constant, l.rel};
  for (const auto& [v, k] : l.expr.coef) c.coeffs[static_cast<std::size_t>(v)] += k;
  return c;
}

}  // namespace

Goals omega(ProofState& st, int g) {
  if (!st.env.has_package("Omega")) {
    tactic_error("The omega tactic is not available; Require Import Omega first.");
  }
  int cur = intros(st, g);
  const LocalContext ctx = goal_ctx(st, cur);
  Translator tr(st, ctx);

  Formula goal = tr.formula(goal_type(st, cur));
  if (goal.kind == Formula::Kind::Unknown) {
    tactic_error("omega: the goal is not a linear arithmetic formula over nat.");
  }
  Dnf cases = dnf(goal, false);
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const auto& e = ctx.entries()[i];
    if (e.body) continue;
    Formula h;
    try {
      h = tr.formula(ctx.type_of(hyp_index(ctx, i)));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NonLinearTerm && err.kind() != ErrorKind::ContainsSubtraction) {
        throw;
      }
      continue;
    }
    if (h.kind == Formula::Kind::Unknown) continue;
    cases = product(cases, dnf(h, true));
  }

  const std::size_t n = tr.atoms.size();
  std::vector<std::string> names;
  for (const auto& a : tr.atoms.atoms()) names.push_back(print_term(st.env, ctx, a));

  std::string cert = "(omega";
  for (const auto& c : cases) {
    LinearSystem sys;
    sys.num_vars = n;
    for (const auto& l : c) sys.constraints.push_back(to_constraint(l, n));
    Decision d = decide(sys);
    if (!d.refuted) {
      std::string model;
      for (std::size_t v = 0; v < n; ++v) {
        model += (v ? ", " : "") + names[v] + " = " + d.model[v].str();
      }
      tactic_error("omega could not prove the goal" +
                       (model.empty() ? std::string(".") : "; counterexample: " + model + "."),
                   ErrorKind::NotProvable);
    }
    if (!verify_certificate(sys, d.certificate)) {
      throw Error(ErrorKind::Internal, "omega produced a certificate that does not verify.");
    }
    cert += " (case " + to_sexpr(sys) + " " + to_sexpr(d.certificate) + ")";
  }
  cert += ")";
  close_by_oracle(st, cur, "omega", cert);
  return {};
}

}  // namespace hurry::tactics
