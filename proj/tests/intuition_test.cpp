#include <random>

#include "doctest.h"
#include "hurry/error.hpp"
#include "hurry/session.hpp"
#include "support/oracles.hpp"

using namespace hurry;

namespace {

bool intuition_proves(Session& s, const std::string& formula) {
  ExecResult r = s.exec_text("Theorem t : forall A B C : Prop, " + formula +
                             ". Proof. intros A B C. intuition. Qed.");
  s.back(0);
  return r.ok;
}

}  // namespace

TEST_CASE("intuition never proves a formula with a Kripke countermodel") {
  Session s;
  std::mt19937 rng(1234);
  int proved = 0;
  int refuted = 0;
  for (int i = 0; i < 200; ++i) {
    auto f = oracle::random_formula(rng, 3);
    const bool bad = oracle::refuted(f);
    refuted += bad;
    const bool ok = intuition_proves(s, oracle::show(f));
    proved += ok;
    if (bad) {
      INFO(oracle::show(f));
      CHECK_FALSE(ok);
    }
  }
  CHECK(proved > 10);
  CHECK(refuted > 10);
}

TEST_CASE("exercise 5.6 by intuition") {
  Session s;
  const char* statements[] = {
      "forall A B C:Prop, A/\\(B/\\C)->(A/\\B)/\\C",
      "forall A B C D: Prop,(A->B)/\\(C->D)/\\A/\\C -> B/\\D",
      "forall A: Prop, ~(A/\\~A)",
      "forall A B C: Prop, A\\/(B\\/C)->(A\\/B)\\/C",
      "forall A: Prop, ~~(A\\/~A)",
      "forall A B: Prop, (A\\/B)/\\~A -> B",
  };
  for (const char* st : statements) {
    INFO(st);
    CHECK(s.exec_text(std::string("Theorem t : ") + st + ". Proof. intuition. Qed.").ok);
    s.back(0);
  }
}

TEST_CASE("intuition fails on classical laws") {
  Session s;
  for (const char* st : {"forall A B : Prop, ((A -> B) -> A) -> A", "forall A : Prop, A \\/ ~A",
                         "forall A : Prop, ~~A -> A"}) {
    INFO(st);
    ExecResult r = s.exec_text(std::string("Theorem t : ") + st + ". Proof. intuition.");
    CHECK_FALSE(r.ok);
    REQUIRE(r.error);
    CHECK(r.error->kind() == ErrorKind::SearchExhausted);
    s.back(0);
  }
}

TEST_CASE("intuition treats quantified statements as atoms") {
  Session s;
  CHECK(s.exec_text("Theorem t : forall P : nat -> Prop, (forall x, P x) /\\ True -> "
                    "(forall x, P x). Proof. intuition. Qed.")
            .ok);
}
