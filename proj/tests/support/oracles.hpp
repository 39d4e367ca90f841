#pragma once

// Reference implementations used to judge the decision procedures. They
// share no code with the library: expressions, linear systems and formulas
// are generated and evaluated here directly.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline std::string squash(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------ semiring

struct Poly {
  enum Kind { Num, Var, Add, Mul } kind = Num;
  unsigned value = 0;
  std::shared_ptr<Poly> l, r;
};
using PolyPtr = std::shared_ptr<Poly>;

inline PolyPtr num(unsigned v) { return std::make_shared<Poly>(Poly{Poly::Num, v, {}, {}}); }
inline PolyPtr var(unsigned i) { return std::make_shared<Poly>(Poly{Poly::Var, i, {}, {}}); }
inline PolyPtr add(PolyPtr a, PolyPtr b) {
  return std::make_shared<Poly>(Poly{Poly::Add, 0, std::move(a), std::move(b)});
}
inline PolyPtr mul(PolyPtr a, PolyPtr b) {
  return std::make_shared<Poly>(Poly{Poly::Mul, 0, std::move(a), std::move(b)});
}

inline const char* kVarNames[] = {"x", "y", "z"};

inline std::string show(const PolyPtr& p) {
  switch (p->kind) {
    case Poly::Num:
      return std::to_string(p->value);
    case Poly::Var:
      return kVarNames[p->value];
    case Poly::Add:
      return "(" + show(p->l) + " + " + show(p->r) + ")";
    case Poly::Mul:
      return "(" + show(p->l) + " * " + show(p->r) + ")";
  }
  return "";
}

inline std::uint64_t eval(const PolyPtr& p, const std::vector<std::uint64_t>& env) {
  switch (p->kind) {
    case Poly::Num:
      return p->value;
    case Poly::Var:
      return env[p->value];
    case Poly::Add:
      return eval(p->l, env) + eval(p->r, env);
    case Poly::Mul:
      return eval(p->l, env) * eval(p->r, env);
  }
  return 0;
}

/// Highest power of each variable, bounding how many points decide equality.
inline std::vector<int> degrees(const PolyPtr& p) {
  switch (p->kind) {
    case Poly::Num:
      return {0, 0, 0};
    case Poly::Var: {
      std::vector<int> d{0, 0, 0};
      d[p->value] = 1;
      return d;
    }
    case Poly::Add: {
      auto a = degrees(p->l), b = degrees(p->r);
      for (int i = 0; i < 3; ++i) a[i] = std::max(a[i], b[i]);
      return a;
    }
    case Poly::Mul: {
      auto a = degrees(p->l), b = degrees(p->r);
      for (int i = 0; i < 3; ++i) a[i] += b[i];
      return a;
    }
  }
  return {0, 0, 0};
}

inline PolyPtr random_poly(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int k = pick(rng);
  if (depth == 0 || k < 3) {
    if (k % 2 == 0) return num(static_cast<unsigned>(pick(rng) % 4));
    return var(static_cast<unsigned>(pick(rng) % 3));
  }
  if (k < 7) return add(random_poly(rng, depth - 1), random_poly(rng, depth - 1));
  return mul(random_poly(rng, depth - 1), random_poly(rng, depth - 1));
}

/// An equal expression obtained by algebraic rewriting.
inline PolyPtr reshape(std::mt19937& rng, const PolyPtr& p) {
  std::uniform_int_distribution<int> coin(0, 3);
  switch (p->kind) {
    case Poly::Num:
      if (p->value >= 2 && coin(rng) == 0) return add(num(1), num(p->value - 1));
      return p;
    case Poly::Var:
      if (coin(rng) == 0) return mul(num(1), p);
      return p;
    case Poly::Add: {
      auto l = reshape(rng, p->l), r = reshape(rng, p->r);
      if (coin(rng) < 2) return add(r, l);
      return add(l, r);
    }
    case Poly::Mul: {
      auto l = reshape(rng, p->l), r = reshape(rng, p->r);
      if (r->kind == Poly::Add && coin(rng) < 2) return add(mul(l, r->l), mul(l, r->r));
      if (coin(rng) < 2) return mul(r, l);
      return mul(l, r);
    }
  }
  return p;
}

/// Equality of two expressions on every assignment of {0..3} to x, y, z.
inline bool agree_everywhere(const PolyPtr& a, const PolyPtr& b) {
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y)
      for (std::uint64_t z = 0; z < 4; ++z) {
        if (eval(a, {x, y, z}) != eval(b, {x, y, z})) return false;
      }
  return true;
}

// -------------------------------------------------------------- linear

struct Row {
  std::vector<long> coeffs;
  long constant = 0;
  bool equality = false;  // coeffs.x + constant (= | <=) 0
};

struct System {
  std::size_t vars = 0;
  long box = 0;  // every variable is also bounded by box
  std::vector<Row> rows;
};

inline bool satisfies(const System& s, const std::vector<long>& x) {
  for (const auto& r : s.rows) {
    long v = r.constant;
    for (std::size_t i = 0; i < s.vars; ++i) v += r.coeffs[i] * x[i];
    if (r.equality ? v != 0 : v > 0) return false;
  }
  return true;
}

/// Exhaustive search over the box; complete because the box rows are part of
/// the system.
inline bool feasible(const System& s) {
  std::vector<long> x(s.vars, 0);
  while (true) {
    if (satisfies(s, x)) return true;
    std::size_t i = 0;
    while (i < s.vars && x[i] == s.box) x[i++] = 0;
    if (i == s.vars) return false;
    ++x[i];
  }
}

inline System random_system(std::mt19937& rng) {
  std::uniform_int_distribution<int> nv(1, 3), nb(1, 5), nr(1, 4), co(-3, 3), cst(-8, 8),
      eq(0, 4);
  System s;
  s.vars = static_cast<std::size_t>(nv(rng));
  s.box = nb(rng);
  for (std::size_t i = 0; i < s.vars; ++i) {
    Row r;
    r.coeffs.assign(s.vars, 0);
    r.coeffs[i] = 1;
    r.constant = -s.box;
    s.rows.push_back(r);
  }
  const int m = nr(rng);
  for (int k = 0; k < m; ++k) {
    Row r;
    for (std::size_t i = 0; i < s.vars; ++i) r.coeffs.push_back(co(rng));
    r.constant = cst(rng);
    r.equality = eq(rng) == 0;
    s.rows.push_back(r);
  }
  return s;
}

// -------------------------------------------------------- propositional

struct Formula {
  enum Kind { Atom, Bot, And, Or, Imp, Not } kind = Atom;
  int atom = 0;
  std::shared_ptr<Formula> l, r;
};
using FPtr = std::shared_ptr<Formula>;

inline FPtr atom(int i) { return std::make_shared<Formula>(Formula{Formula::Atom, i, {}, {}}); }
inline FPtr bot() { return std::make_shared<Formula>(Formula{Formula::Bot, 0, {}, {}}); }
inline FPtr bin(Formula::Kind k, FPtr a, FPtr b) {
  return std::make_shared<Formula>(Formula{k, 0, std::move(a), std::move(b)});
}
inline FPtr neg(FPtr a) { return std::make_shared<Formula>(Formula{Formula::Not, 0, std::move(a), {}}); }

inline std::string show(const FPtr& f) {
  static const char* names[] = {"A", "B", "C"};
  switch (f->kind) {
    case Formula::Atom:
      return names[f->atom];
    case Formula::Bot:
      return "False";
    case Formula::And:
      return "(" + show(f->l) + " /\\ " + show(f->r) + ")";
    case Formula::Or:
      return "(" + show(f->l) + " \\/ " + show(f->r) + ")";
    case Formula::Imp:
      return "(" + show(f->l) + " -> " + show(f->r) + ")";
    case Formula::Not:
      return "(~ " + show(f->l) + ")";
  }
  return "";
}

inline FPtr random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 11);
  const int k = pick(rng);
  if (depth == 0 || k < 2) return k == 0 && depth > 0 ? bot() : atom(pick(rng) % 3);
  if (k < 5) return bin(Formula::Imp, random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  if (k < 7) return bin(Formula::And, random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  if (k < 9) return bin(Formula::Or, random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  if (k < 10) return neg(random_formula(rng, depth - 1));
  return atom(pick(rng) % 3);
}

/// Two-world Kripke frame root <= top. `val[w]` is the set of atoms (bitmask)
/// forced at world w; monotone means val[0] is a subset of val[1].
inline bool forces(const FPtr& f, int w, const int val[2]) {
  switch (f->kind) {
    case Formula::Atom:
      return (val[w] >> f->atom) & 1;
    case Formula::Bot:
      return false;
    case Formula::And:
      return forces(f->l, w, val) && forces(f->r, w, val);
    case Formula::Or:
      return forces(f->l, w, val) || forces(f->r, w, val);
    case Formula::Imp:
    case Formula::Not:
      for (int v = w; v < 2; ++v) {
        const bool prem = forces(f->l, v, val);
        const bool conc = f->kind == Formula::Not ? false : forces(f->r, v, val);
        if (prem && !conc) return false;
      }
      return true;
  }
  return false;
}

/// A monotone two-world model whose root does not force `f`.
inline bool refuted(const FPtr& f) {
  for (int lo = 0; lo < 8; ++lo)
    for (int hi = 0; hi < 8; ++hi) {
      if ((lo & hi) != lo) continue;
      const int val[2] = {lo, hi};
      if (!forces(f, 0, val)) return true;
    }
  return false;
}

}  // namespace oracle
