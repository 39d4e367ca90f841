#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hurry/env.hpp"
#include "hurry/term.hpp"

namespace hurry::arith {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Opaque subterms numbered by first occurrence.
class AtomTable {
 public:
  int intern(const Term& t);
  const std::vector<Term>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<Term> atoms_;
};

// ------------------------------------------------------------------- ring

/// Sorted multiset of atom ids.
using Monomial = std::vector<int>;

/// Sum of monomials with nonzero natural coefficients.
struct Polynomial {
  std::map<Monomial, Int> terms;

  static Polynomial constant(const Int& c);
  static Polynomial atom(int id);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Int eval(const std::vector<Int>& values) const;
  /// Highest degree first, constant last; atoms printed with `names`.
  std::string to_string(const std::vector<std::string>& names) const;
};

/// Semiring normal form of a nat expression built from +, *, S, numerals and
/// atoms. Subtraction raises UnsupportedOperator.
Polynomial ring_normalize(const Term& t, AtomTable& atoms);

/// `t` with every atom replaced by the numeral values[id].
Term substitute_atoms(const Term& t, AtomTable& atoms, const std::vector<unsigned>& values);

// ------------------------------------------------------------------ omega

enum class Relation { Le, Eq };

/// coeffs . x + constant  (<= 0 | = 0)
struct Constraint {
  std::vector<Int> coeffs;
  Int constant;
  Relation rel = Relation::Le;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Every variable ranges over the naturals.
struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<Constraint> constraints;
};

/// Inequalities a certificate refers to, by index: each Le constraint, each
/// Eq constraint as two inequalities, then x_i >= 0 for every variable.
std::vector<Constraint> expand(const LinearSystem& sys);

struct Step {
  enum class Kind { Comb, Tighten } kind = Kind::Comb;
  std::vector<std::pair<std::size_t, Int>> terms;  // Comb: (row, multiplier)
  std::size_t source = 0;                          // Tighten: row
};

/// Refutation tree. A split on x_var at `bound` refutes the left child with
/// x_var <= bound appended to the rows and the right child with
/// x_var >= bound + 1 appended. A leaf appends its steps; the last row must
/// then read c <= 0 with c > 0 and no variables.
struct Refutation {
  bool split = false;
  std::size_t var = 0;
  Int bound;
  std::vector<Step> steps;
  std::vector<Refutation> children;
};

struct Decision {
  bool refuted = false;
  Refutation certificate;
  std::vector<Int> model;  // when not refuted
};

/// Integer feasibility by Fourier-Motzkin elimination with tightening and
/// branching on fractional points. Throws SearchExhausted past its budget.
Decision decide(const LinearSystem& sys);

bool verify_certificate(const LinearSystem& sys, const Refutation& cert);

std::string to_sexpr(const LinearSystem& sys);
std::string to_sexpr(const Refutation& cert);

/// Cases of an omega oracle certificate: `(omega (case SYSTEM REFUTATION) ...)`.
std::optional<std::vector<std::pair<LinearSystem, Refutation>>> parse_omega_certificate(
    const std::string& text);

}  // namespace hurry::arith
