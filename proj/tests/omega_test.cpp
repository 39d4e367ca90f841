#include <random>

#include "doctest.h"
#include "hurry/arith.hpp"
#include "hurry/error.hpp"
#include "hurry/session.hpp"
#include "support/oracles.hpp"

using namespace hurry;
using namespace hurry::arith;

namespace {

LinearSystem convert(const oracle::System& s) {
  LinearSystem out;
  out.num_vars = s.vars;
  for (const auto& r : s.rows) {
    Constraint c;
    for (long v : r.coeffs) c.coeffs.emplace_back(v);
    c.constant = r.constant;
    c.rel = r.equality ? Relation::Eq : Relation::Le;
    out.constraints.push_back(c);
  }
  return out;
}

bool model_ok(const oracle::System& s, const std::vector<Int>& model) {
  std::vector<long> x;
  for (const auto& v : model) {
    if (v < 0) return false;
    x.push_back(static_cast<long>(v));
  }
  return x.size() == s.vars && oracle::satisfies(s, x);
}

}  // namespace

TEST_CASE("omega agrees with enumeration and its certificates verify") {
  std::mt19937 rng(7);
  int refuted = 0;
  for (int i = 0; i < 300; ++i) {
    oracle::System s = oracle::random_system(rng);
    LinearSystem sys = convert(s);
    Decision d = decide(sys);
    const bool sat = oracle::feasible(s);
    INFO("case " << i << ": " << to_sexpr(sys));
    CHECK(d.refuted == !sat);
    if (d.refuted) {
      ++refuted;
      CHECK(verify_certificate(sys, d.certificate));
    } else {
      CHECK(model_ok(s, d.model));
    }
  }
  CHECK(refuted > 30);
}

TEST_CASE("tampered certificates are rejected") {
  // x >= 2 and x <= 1
  LinearSystem sys;
  sys.num_vars = 1;
  sys.constraints.push_back({{Int(-1)}, Int(2), Relation::Le});
  sys.constraints.push_back({{Int(1)}, Int(-1), Relation::Le});
  Decision d = decide(sys);
  REQUIRE(d.refuted);
  REQUIRE(verify_certificate(sys, d.certificate));

  Refutation neg;
  Step st;
  st.terms = {{0, Int(1)}, {1, Int(-1)}};
  neg.steps.push_back(st);
  CHECK_FALSE(verify_certificate(sys, neg));

  Refutation zero;
  st.terms = {{0, Int(0)}, {1, Int(0)}};
  zero.steps = {st};
  CHECK_FALSE(verify_certificate(sys, zero));

  Refutation good;
  st.terms = {{0, Int(1)}, {1, Int(1)}};
  good.steps = {st};
  CHECK(verify_certificate(sys, good));

  Refutation out_of_range;
  st.terms = {{7, Int(1)}};
  out_of_range.steps = {st};
  CHECK_FALSE(verify_certificate(sys, out_of_range));
}

TEST_CASE("certificates round-trip through their text form") {
  LinearSystem sys;
  sys.num_vars = 2;
  sys.constraints.push_back({{Int(2), Int(-2)}, Int(1), Relation::Eq});
  Decision d = decide(sys);
  REQUIRE(d.refuted);
  const std::string text = "(omega (case " + to_sexpr(sys) + " " + to_sexpr(d.certificate) + "))";
  auto parsed = parse_omega_certificate(text);
  REQUIRE(parsed);
  REQUIRE(parsed->size() == 1);
  CHECK(verify_certificate((*parsed)[0].first, (*parsed)[0].second));
}

TEST_CASE("omega tactic") {
  Session s;
  REQUIRE(s.exec("Require Import Omega.").ok);
  const std::size_t base = s.executed();
  auto attempt = [&](const std::string& stmt) {
    ExecResult r = s.exec_text("Theorem t : " + stmt + ". Proof. intros. omega. Qed.");
    s.back(base);
    return r;
  };
  CHECK(attempt("forall x y : nat, x <= y -> y <= x -> x = y").ok);
  CHECK(attempt("forall x : nat, 2 * x <> 1").ok);
  CHECK(attempt("forall x y : nat, x < y \\/ x = y \\/ y < x").ok);
  CHECK(attempt("forall f : nat -> nat, forall x, f x + 1 <= f x + 2").ok);

  ExecResult r = attempt("forall x : nat, x <= 5 -> x <= 4");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NotProvable);
  CHECK(std::string(r.error->what()).find("x = 5") != std::string::npos);

  r = attempt("forall x y : nat, x * y <= x");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NonLinearTerm);

  r = attempt("forall x y : nat, x - y <= x");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::ContainsSubtraction);
}

TEST_CASE("omega needs its package") {
  Session s;
  ExecResult r = s.exec_text("Theorem t : forall x : nat, x <= x. Proof. intros. omega.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::TacticFailure);
}
