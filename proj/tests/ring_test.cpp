#include <random>

#include "doctest.h"
#include "hurry/error.hpp"
#include "hurry/session.hpp"
#include "support/oracles.hpp"

using namespace hurry;

namespace {

bool ring_proves(Session& s, const std::string& lhs, const std::string& rhs) {
  ExecResult r = s.exec_text("Theorem t : forall x y z : nat, " + lhs + " = " + rhs +
                             ". Proof. intros x y z. ring. Qed.");
  s.back(0);
  return r.ok;
}

bool low_degree(const oracle::PolyPtr& p) {
  for (int d : oracle::degrees(p)) {
    if (d > 3) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ring agrees with exhaustive evaluation") {
  Session s;
  std::mt19937 rng(20240611);
  int disagreements = 0;
  int identities = 0;
  for (int i = 0; i < 300;) {
    auto a = oracle::random_poly(rng, 3);
    auto b = (i % 3 == 0) ? oracle::random_poly(rng, 3) : oracle::reshape(rng, a);
    if (i % 3 == 2) b = oracle::add(b, oracle::num(i % 2));
    if (!low_degree(a) || !low_degree(b)) continue;
    ++i;
    const bool expected = oracle::agree_everywhere(a, b);
    identities += expected;
    if (ring_proves(s, oracle::show(a), oracle::show(b)) != expected) {
      ++disagreements;
      INFO(oracle::show(a) << " = " << oracle::show(b));
      CHECK(false);
    }
  }
  CHECK(disagreements == 0);
  CHECK(identities > 100);
}

TEST_CASE("ring errors") {
  Session s;
  s.exec_text("Theorem t : forall x : nat, x - 1 = x. Proof. intros x.");
  ExecResult r = s.exec("ring.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::UnsupportedOperator);
  s.back(0);
  s.exec_text("Theorem t : forall x : nat, x + 1 = x. Proof. intros x.");
  r = s.exec("ring.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NormalFormsDiffer);
  s.back(0);
  s.exec_text("Theorem t : forall x : nat, x <= x + 1. Proof. intros x.");
  r = s.exec("ring.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NotAnEquality);
}

TEST_CASE("ring leaves an oracle with its normal form") {
  Session s;
  ExecResult r =
      s.exec_text("Theorem t : forall x y : nat, (x + y) * (x + y) = x * x + 2 * x * y + y * y. "
                  "Proof. intros x y. ring. Qed.");
  REQUIRE(r.ok);
  CHECK(r.output.find("Oracles: t_ring1") != std::string::npos);
  const ConstantDecl* c = s.env().constant("t_ring1");
  REQUIRE(c);
  CHECK(c->oracle_procedure == "ring");
  CHECK(c->certificate.rfind("(ring ", 0) == 0);
}
