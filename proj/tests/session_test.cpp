#include "doctest.h"
#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/session.hpp"
#include "support/oracles.hpp"

using namespace hurry;

namespace {

const std::string kCorpus = HURRY_CORPUS_DIR;

}  // namespace

TEST_CASE("tactic outside a proof") {
  Session s;
  ExecResult r = s.exec("split.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NoProofInProgress);
  CHECK(s.executed() == 0);
}

TEST_CASE("back restores snapshots") {
  Session s;
  REQUIRE(s.exec("Definition a := 1.").ok);
  REQUIRE(s.exec("Definition b := 2.").ok);
  const std::size_t size2 = s.env().size();
  REQUIRE(s.exec("Definition c := 3.").ok);
  const std::string third = s.transcript().back().output;
  s.back(2);
  CHECK(s.executed() == 2);
  CHECK(s.env().size() == size2);
  CHECK_FALSE(s.env().contains("c"));
  ExecResult again = s.exec("Definition c := 3.");
  CHECK(again.output == third);
  CHECK(s.env().contains("c"));
  s.back(0);
  CHECK_FALSE(s.env().contains("a"));
  CHECK(s.user_declarations().empty());
  try {
    s.back(99);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
}

TEST_CASE("undo steps back through tactics") {
  Session s;
  REQUIRE(s.exec_text("Theorem t : forall a b : Prop, a /\\ b -> b /\\ a. Proof. intros a b H.").ok);
  REQUIRE(s.exec("split.").ok);
  CHECK(s.goals().size() == 2);
  s.undo();
  CHECK(s.goals().size() == 1);
  s.undo();
  s.undo();
  try {
    s.undo();
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NothingToUndo);
  }
}

TEST_CASE("failed sentences leave the state alone") {
  Session s;
  REQUIRE(s.exec_text("Theorem t : 1 = 1. Proof.").ok);
  const std::size_t n = s.executed();
  const std::string goals = s.goals_text();
  ExecResult r = s.exec("Qed.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::OpenGoalsRemain);
  r = s.exec("discriminate.");
  REQUIRE(r.error);
  CHECK(s.executed() == n);
  CHECK(s.goals_text() == goals);
  CHECK(r.output.rfind("Error: line 1, column", 0) == 0);
}

TEST_CASE("goal display") {
  Session s;
  ExecResult r = s.exec_text(
      "Theorem example2 : forall a b:Prop, a /\\ b -> b /\\ a. Proof. intros a b H. split.");
  REQUIRE(r.ok);
  CHECK(s.goals_text() ==
        "2 subgoals\n  \n  a : Prop\n  b : Prop\n  H : a /\\ b\n"
        "  ============================\n   b\n\nsubgoal 2 is:\n a\n");
}

TEST_CASE("packages") {
  Session s;
  ExecResult r = s.exec("Require Import NoSuchPkg.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::UnknownPackage);
  REQUIRE(s.exec("Require Import Arith.").ok);
  const std::size_t n = s.env().size();
  REQUIRE(s.exec("Require Import Arith.").ok);
  CHECK(s.env().size() == n);
  for (const char* lemma :
       {"le_n", "le_S", "plus_comm", "plus_assoc", "mult_1_r", "mult_plus_distr_l",
        "mult_plus_distr_r", "plus_reg_l", "le_plus_l", "le_plus_minus", "plus_le_compat_l",
        "plus_le_compat_r", "plus_le_compat"}) {
    CHECK(s.env().contains(lemma));
  }
  for (const auto& d : s.env().declarations()) {
    if (const auto* c = std::get_if<ConstantDecl>(d.get())) {
      INFO(c->name);
      CHECK(c->oracle_deps.empty());
      CHECK(c->kind != ConstantKind::Oracle);
    }
  }
  CHECK(recheck_environment(s.env()).empty());
}

TEST_CASE("no prelude") {
  SessionOptions o;
  o.prelude = false;
  o.load_path = default_load_path();
  Session s(o);
  CHECK(s.env().size() == 0);
  CHECK_FALSE(s.exec("Check 3.").ok);
  CHECK(s.exec("Inductive unit : Set := tt : unit.").ok);
}

TEST_CASE("load cycles") {
  const std::string dir = std::string(HURRY_CORPUS_DIR) + "/cycle";
  SessionOptions o;
  o.load_path = default_load_path();
  o.load_path.push_back(dir);
  Session s(o);
  ExecResult r = s.exec("Require Import CycleA.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::LoadCycle);
}

TEST_CASE("batch checking is deterministic") {
  SessionOptions o;
  o.load_path = default_load_path();
  for (const char* f : {"terms.v", "example2.v", "bin.v", "even.v"}) {
    INFO(f);
    FileReport a = run_file(kCorpus + "/" + f, o);
    FileReport b = run_file(kCorpus + "/" + f, o);
    CHECK(a.ok);
    CHECK(a.transcript == b.transcript);
  }
}

TEST_CASE("open proof at end of file") {
  SessionOptions o;
  o.load_path = default_load_path();
  FileReport r = run_source("Theorem t : True.\nProof.\n", o);
  CHECK_FALSE(r.ok);
  REQUIRE(r.error);
  CHECK(std::string(r.error->what()) == "open proof at end of file");
  r = run_source("Check 1.\nCheck (1 1).\n", o);
  CHECK_FALSE(r.ok);
  REQUIRE(r.error);
  CHECK(r.error->position().line == 2);
}
