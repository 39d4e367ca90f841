#include <algorithm>
#include <random>
#include <sstream>

#include "hurry/arith.hpp"
#include "hurry/error.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"
#include "hurry/tactics.hpp"

namespace hurry::arith {

int AtomTable::intern(const Term& t) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == t) return static_cast<int>(i);
  }
  atoms_.push_back(t);
  return static_cast<int>(atoms_.size() - 1);
}

Polynomial Polynomial::constant(const Int& c) {
  Polynomial p;
  if (c != 0) p.terms[{}] = c;
  return p;
}

Polynomial Polynomial::atom(int id) {
  Polynomial p;
  p.terms[{id}] = 1;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms) {
    Int& slot = r.terms[m];
    slot += c;
    if (slot == 0) r.terms.erase(m);
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms) {
    for (const auto& [m2, c2] : o.terms) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      std::sort(m.begin(), m.end());
      Int& slot = r.terms[m];
      slot += c1 * c2;
      if (slot == 0) r.terms.erase(m);
    }
  }
  return r;
}

Int Polynomial::eval(const std::vector<Int>& values) const {
  Int total = 0;
  for (const auto& [m, c] : terms) {
    Int v = c;
    for (int a : m) v *= values.at(static_cast<std::size_t>(a));
    total += v;
  }
  return total;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::vector<std::pair<Monomial, Int>> order(terms.begin(), terms.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first.size() > b.first.size();
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : order) {
    if (!first) out << " + ";
    first = false;
    if (m.empty()) {
      out << c;
      continue;
    }
    if (c != 1) out << c << " * ";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out << " * ";
      const auto id = static_cast<std::size_t>(m[i]);
      out << (id < names.size() ? names[id] : "x" + std::to_string(id));
    }
  }
  return out.str();
}

namespace {

bool is_binary(const Term& t, const char* name) {
  return t.kind() == TermKind::App && t.head().kind() == TermKind::Const &&
         t.head().name() == name && t.args().size() == 2;
}

bool is_succ(const Term& t) {
  return t.kind() == TermKind::App && t.head().kind() == TermKind::Construct &&
         t.head().name() == "nat" && t.head().ctor_index() == 2 && t.args().size() == 1;
}

bool is_zero(const Term& t) {
  return t.kind() == TermKind::Construct && t.name() == "nat" && t.ctor_index() == 1;
}

}  // namespace

Polynomial ring_normalize(const Term& t, AtomTable& atoms) {
  if (auto n = as_numeral(t)) return Polynomial::constant(Int(*n));
  if (is_zero(t)) return {};
  if (is_succ(t)) return ring_normalize(t.args()[0], atoms) + Polynomial::constant(1);
  if (is_binary(t, "plus")) {
    return ring_normalize(t.args()[0], atoms) + ring_normalize(t.args()[1], atoms);
  }
  if (is_binary(t, "mult")) {
    return ring_normalize(t.args()[0], atoms) * ring_normalize(t.args()[1], atoms);
  }
  if (is_binary(t, "minus")) {
    throw Error(ErrorKind::UnsupportedOperator, "ring does not handle subtraction.");
  }
  return Polynomial::atom(atoms.intern(t));
}

Term substitute_atoms(const Term& t, AtomTable& atoms, const std::vector<unsigned>& values) {
  if (as_numeral(t) || is_zero(t)) return t;
  if (is_succ(t)) return mk_app(t.head(), {substitute_atoms(t.args()[0], atoms, values)});
  if (is_binary(t, "plus") || is_binary(t, "mult")) {
    return mk_app(t.head(), {substitute_atoms(t.args()[0], atoms, values),
                             substitute_atoms(t.args()[1], atoms, values)});
  }
  return make_numeral(values.at(static_cast<std::size_t>(atoms.intern(t))));
}

}  // namespace hurry::arith

namespace hurry::tactics {

using namespace arith;

Goals ring(ProofState& st, int g) {
  const LocalContext ctx = goal_ctx(st, g);
  Term goal = whnf(st.env, ctx, goal_type(st, g));
  Term h = app_head(goal);
  auto args = app_args(goal);
  if (h.kind() != TermKind::Ind || h.name() != "eq" || args.size() != 3) {
    tactic_error("ring: the goal is not an equality.", ErrorKind::NotAnEquality);
  }
  Term ty = whnf(st.env, ctx, args[0]);
  if (ty.kind() != TermKind::Ind || ty.name() != "nat") {
    tactic_error("ring: only equalities over nat are supported.", ErrorKind::UnsupportedOperator);
  }
  AtomTable atoms;
  Polynomial lhs = ring_normalize(args[1], atoms);
  Polynomial rhs = ring_normalize(args[2], atoms);
  std::vector<std::string> names;
  for (const auto& a : atoms.atoms()) names.push_back(print_term(st.env, ctx, a));
  if (lhs != rhs) {
    tactic_error("ring: normal forms differ: " + lhs.to_string(names) + " <> " +
                     rhs.to_string(names) + ".",
                 ErrorKind::NormalFormsDiffer);
  }
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<unsigned> pick(0, 3);
  for (int round = 0; round < 8; ++round) {
    std::vector<unsigned> values(atoms.size());
    for (auto& v : values) v = pick(rng);
    auto l = as_numeral(normalize(st.env, substitute_atoms(args[1], atoms, values)));
    auto r = as_numeral(normalize(st.env, substitute_atoms(args[2], atoms, values)));
    if (!l || !r || *l != *r) {
      tactic_error("ring: evaluation check failed.", ErrorKind::NormalFormsDiffer);
    }
  }
  close_by_oracle(st, g, "ring", "(ring " + lhs.to_string(names) + ")");
  return {};
}

}  // namespace hurry::tactics
