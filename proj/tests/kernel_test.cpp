#include "doctest.h"
#include "hurry/elab.hpp"
#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/printer.hpp"
#include "hurry/reduction.hpp"
#include "hurry/session.hpp"
#include "hurry/syntax.hpp"

using namespace hurry;

namespace {

Term elaborate(const GlobalEnv& env, const std::string& text) {
  MetaStore metas;
  Elaborator el(env, metas);
  Elaborated r = el.infer({}, parse_expr(text));
  return metas.instantiate(r.term);
}

std::string eval(Session& s, const std::string& t) {
  ExecResult r = s.exec("Eval compute in " + t + ".");
  REQUIRE(r.ok);
  return r.output;
}

}  // namespace

TEST_CASE("reduction") {
  Session s;
  CHECK(eval(s, "2 - 3") == "= 0 : nat");
  CHECK(eval(s, "7 - 3") == "= 4 : nat");
  CHECK(eval(s, "3 * 4 + 1") == "= 13 : nat");
  CHECK(eval(s, "let f := fun x => (x * 3, x) in f 3") == "= (9, 3) : nat * nat");
  CHECK(eval(s, "fst (1, 2)") == "= 1 : nat");
}

TEST_CASE("derived induction schemes") {
  Session s;
  REQUIRE(s.exec_text("Inductive bin : Set := L : bin | N : bin -> bin -> bin.").ok);
  REQUIRE(s.exec_text("Inductive even : nat -> Prop := even0 : even 0 "
                      "| evenS : forall x:nat, even x -> even (S (S x)).")
              .ok);
  const GlobalEnv& env = s.env();
  Term bin_expected = elaborate(env,
                             "forall P : bin -> Prop, P L -> (forall b : bin, P b -> forall b0 : "
                             "bin, P b0 -> P (N b b0)) -> forall b : bin, P b");
  Term even_expected = elaborate(env,
                              "forall P : nat -> Prop, P 0 -> (forall x : nat, even x -> P x -> P "
                              "(S (S x))) -> forall n : nat, even n -> P n");
  CHECK(env.constant("bin_ind")->type == bin_expected);
  CHECK(env.constant("even_ind")->type == even_expected);
  CHECK(recheck_environment(env).empty());
}

TEST_CASE("kernel rejections") {
  Session s;
  ExecResult r = s.exec("Inductive bad : Set := mk : (bad -> nat) -> bad.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NegativeOccurrence);
  r = s.exec("Fixpoint f (n : nat) : nat := f n.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NonStructuralRecursion);
  r = s.exec("Check (fun x : nat => x x).");
  REQUIRE(r.error);
  r = s.exec("Inductive nat : Set := Z : nat.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::NameClash);
  CHECK(s.executed() == 0);
}

TEST_CASE("recheck notices a corrupted proof") {
  Session s;
  REQUIRE(s.exec_text("Theorem t : True. Proof. exact I. Qed.").ok);
  GlobalEnv env = s.env();
  CHECK(recheck_environment(env).empty());
  ConstantDecl bogus;
  bogus.name = "bogus";
  bogus.type = mk_ind("False");
  bogus.body = mk_construct("True", 1);
  bogus.kind = ConstantKind::Theorem;
  GlobalEnv bad = env;
  bad.add_unchecked(bogus);
  auto failures = recheck_environment(bad);
  REQUIRE(failures.size() == 1);
  CHECK(failures[0] == "bogus");
}

TEST_CASE("printing") {
  Session s;
  REQUIRE(s.exec("Require Import List.").ok);
  auto check = [&](const std::string& in, const std::string& out) {
    ExecResult r = s.exec("Check " + in + ".");
    REQUIRE(r.ok);
    CHECK(r.output == out);
  };
  check("(3,4)", "(3, 4) : nat * nat");
  check("(fun x:nat => x = 3)", "fun x : nat => x = 3 : nat -> Prop");
  check("(cons 3 (cons 2 (cons 1 nil)))", "3 :: 2 :: 1 :: nil : list nat");
  check("(forall x:nat, x < 3 \\/ (exists y:nat, x = y + 3))",
        "forall x : nat, x < 3 \\/ (exists y : nat, x = y + 3) : Prop");
  check("(1 + 2) * 3", "(1 + 2) * 3 : nat");
  check("1 + (2 + 3)", "1 + (2 + 3) : nat");
  check("~ (True /\\ False)", "~ (True /\\ False) : Prop");
}
