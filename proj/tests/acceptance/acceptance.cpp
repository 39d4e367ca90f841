// One PASS/FAIL line per primary acceptance criterion. Exit status is
// nonzero if any primary criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hurry/arith.hpp"
#include "hurry/elab.hpp"
#include "hurry/error.hpp"
#include "hurry/kernel.hpp"
#include "hurry/session.hpp"
#include "hurry/syntax.hpp"
#include "../support/oracles.hpp"

using namespace hurry;

namespace {

const std::string kCorpus = HURRY_CORPUS_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

SessionOptions options() {
  SessionOptions o;
  o.load_path = default_load_path();
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << "s";
  return out.str();
}

Outcome transcript_fidelity() {
  Outcome o;
  // Reference responses of the tutorial transcript.
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"Check True.", "True : Prop"},
      {"Check False.", "False : Prop"},
      {"Check 3.", "3 : nat"},
      {"Check (3+4).", "3 + 4 : nat"},
      {"Check (3=5).", "3=5 : Prop"},
      {"Check (3,4).", "(3,4) : nat * nat"},
      {"Check ((3=5)/\\True).", "3 = 5 /\\ True : Prop"},
      {"Check nat -> Prop.", "nat -> Prop : Type"},
      {"Check (3 <= 6).", "3 <= 6 : Prop"},
      {"Check (fun x:nat => x = 3).", "fun x : nat => x = 3 : nat -> Prop"},
      {"Check (forall x:nat, x < 3 \\/ (exists y:nat, x = y + 3)).",
       "forall x : nat, x < 3 \\/ (exists y : nat, x = y + 3) : Prop"},
      {"Check (let f := fun x => (x * 3,x) in f 3).",
       "let f := fun x : nat => (x * 3, x) in f 3 : nat * nat"},
      {"Locate \"_ <= _\".",
       "Notation Scope \"x <= y\" := le x y : nat_scope (default interpretation)"},
      {"Check and.", "and : Prop -> Prop -> Prop"},
      {"Eval compute in let f := fun x => (x * 3, x) in f 3.", "= (9, 3) : nat * nat"},
      {"Definition example1 (x : nat) := x*x+2*x+1.", "example1 is defined"},
      {"Check example1.", "example1 : nat -> nat"},
      {"Eval compute in example1 1.", "= 4 : nat"},
      {"Search True.", "I : True"},
      {"Check (le_n 0).", "le_n 0 : 0 <= 0"},
      {"Check (le_S 0 0).", "le_S 0 0 : 0 <= 0 -> 0 <= 1"},
      {"Check (le_S 0 0 (le_n 0)).", "le_S 0 0 (le_n 0) : 0 <= 1"},
  };
  auto t0 = std::chrono::steady_clock::now();
  Session s(options());
  for (const auto& [in, want] : cases) {
    ExecResult r = s.exec(in);
    if (oracle::squash(r.output) != oracle::squash(want)) {
      o.fail(in + " gave \"" + r.output + "\"");
    }
  }
  FileReport f = run_file(kCorpus + "/terms.v", options());
  if (!f.ok) o.fail("terms.v did not replay");
  const double dt = seconds_since(t0);
  if (dt >= 1.0) o.fail("took " + fmt_seconds(dt));
  if (o.ok) o.detail = std::to_string(cases.size()) + " responses, " + fmt_seconds(dt);
  return o;
}

/// Runs a corpus file sentence by sentence and returns the final environment.
std::optional<GlobalEnv> replay(const std::string& file, Outcome& o) {
  Session s(options());
  ExecResult r = s.exec_text(oracle::read_file(kCorpus + "/" + file));
  if (!r.ok) {
    o.fail(file + ": " + (r.error ? describe(*r.error) : "failed"));
    return std::nullopt;
  }
  if (s.in_proof()) {
    o.fail(file + ": open proof at end of file");
    return std::nullopt;
  }
  return s.env();
}

Outcome proof_corpus() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::vector<std::string>>> files = {
      {"example2.v", {"example2"}},
      {"bin.v", {"example3_size", "flatten_aux_size", "flatten_size"}},
      {"even.v", {"even_mult", "even_mult'", "not_even_1"}},
      {"omega_example.v", {"omega_example"}},
      {"quantifiers.v", {"ex1", "ex2"}},
  };
  int theorems = 0;
  for (const auto& [file, names] : files) {
    FileReport rep = run_file(kCorpus + "/" + file, options());
    if (!rep.ok) {
      o.fail(file + " exited with failure");
      continue;
    }
    auto env = replay(file, o);
    if (!env) continue;
    auto bad = recheck_environment(*env);
    if (!bad.empty()) o.fail(file + ": kernel re-check rejects " + bad.front());
    for (const auto& n : names) {
      const ConstantDecl* c = env->constant(n);
      if (!c || c->kind != ConstantKind::Theorem || !c->body) {
        o.fail(file + ": " + n + " is not a sealed theorem");
        continue;
      }
      ++theorems;
      for (const auto& dep : c->oracle_deps) {
        const ConstantDecl* oc = env->constant(dep);
        if (!oc || (oc->oracle_procedure != "ring" && oc->oracle_procedure != "omega")) {
          o.fail(n + " depends on non-ring/omega oracle " + dep);
        }
      }
    }
    for (const char* clean : {"example3_size", "not_even_1", "ex2", "example2"}) {
      if (const ConstantDecl* c = env->constant(clean); c && !c->oracle_deps.empty()) {
        o.fail(std::string(clean) + " lists oracles");
      }
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 10.0) o.fail("took " + fmt_seconds(dt));
  if (o.ok) o.detail = std::to_string(theorems) + " theorems re-checked, " + fmt_seconds(dt);
  return o;
}

Outcome schemes() {
  Outcome o;
  Session s(options());
  if (!s.exec("Inductive bin : Set := L : bin | N : bin -> bin -> bin.").ok ||
      !s.exec("Inductive even : nat -> Prop := even0 : even 0 | evenS : forall x:nat, even x -> "
              "even (S (S x)).")
           .ok) {
    o.fail("declarations rejected");
    return o;
  }
  auto same = [&](const std::string& name, const std::string& expected) {
    MetaStore metas;
    Elaborator el(s.env(), metas);
    Term t = metas.instantiate(el.infer({}, parse_expr(expected)).term);
    const ConstantDecl* c = s.env().constant(name);
    if (!c || !(c->type == t)) o.fail(name + " differs from the reference statement");
  };
  same("bin_ind",
       "forall P : bin -> Prop, P L -> (forall b : bin, P b -> forall b0 : bin, P b0 -> P (N b "
       "b0)) -> forall b : bin, P b");
  same("even_ind",
       "forall P : nat -> Prop, P 0 -> (forall x : nat, even x -> P x -> P (S (S x))) -> forall "
       "n : nat, even n -> P n");
  if (o.ok) o.detail = "bin_ind, even_ind alpha-equal";
  return o;
}

Outcome rejections() {
  Outcome o;
  struct Case {
    std::string setup;
    std::string sentence;
    ErrorKind kind;
  };
  const std::vector<Case> cases = {
      {"", "Inductive bad : Set := mk : (bad -> nat) -> bad.", ErrorKind::NegativeOccurrence},
      {"", "Fixpoint f (n : nat) : nat := f n.", ErrorKind::NonStructuralRecursion},
      {"Theorem t : 1 = 1. Proof.", "Qed.", ErrorKind::OpenGoalsRemain},
      {"Theorem t : forall x : nat, x = x -> True. Proof. intros x H.", "discriminate H.",
       ErrorKind::NotAConstructorClash},
      {"Require Import Omega. Theorem t : forall x y : nat, x * y <= x. Proof. intros.", "omega.",
       ErrorKind::NonLinearTerm},
  };
  for (const auto& c : cases) {
    Session s(options());
    if (!c.setup.empty() && !s.exec_text(c.setup).ok) {
      o.fail("setup failed for " + c.sentence);
      continue;
    }
    const std::size_t n = s.executed();
    const std::size_t decls = s.env().size();
    const std::string goals = s.goals_text();
    ExecResult r = s.exec(c.sentence);
    if (r.ok || !r.error) {
      o.fail(c.sentence + " was accepted");
      continue;
    }
    if (r.error->kind() != c.kind) {
      o.fail(c.sentence + " failed with " + std::string(to_string(r.error->kind())));
    }
    if (s.executed() != n || s.env().size() != decls || s.goals_text() != goals) {
      o.fail(c.sentence + " changed the state");
    }
  }
  if (o.ok) o.detail = std::to_string(cases.size()) + " rejections";
  return o;
}

Outcome decision_oracles() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(0xacce55);

  // (a) ring
  Session s(options());
  int ring_cases = 0;
  int ring_bad = 0;
  while (ring_cases < 1000) {
    auto a = oracle::random_poly(rng, 3);
    auto b = (ring_cases % 3 == 0) ? oracle::random_poly(rng, 3) : oracle::reshape(rng, a);
    if (ring_cases % 3 == 2) b = oracle::add(b, oracle::num(ring_cases % 2));
    bool low = true;
    for (const auto& p : {a, b})
      for (int d : oracle::degrees(p)) low = low && d <= 3;
    if (!low) continue;
    ++ring_cases;
    const bool expected = oracle::agree_everywhere(a, b);
    ExecResult r = s.exec_text("Theorem t : forall x y z : nat, " + oracle::show(a) + " = " +
                               oracle::show(b) + ". Proof. intros x y z. ring. Qed.");
    s.back(0);
    if (r.ok != expected) ++ring_bad;
  }
  if (ring_bad) o.fail("ring disagreed on " + std::to_string(ring_bad) + " identities");

  // (b) omega
  int omega_bad = 0;
  for (int i = 0; i < 200; ++i) {
    oracle::System sys = oracle::random_system(rng);
    arith::LinearSystem ls;
    ls.num_vars = sys.vars;
    for (const auto& row : sys.rows) {
      arith::Constraint c;
      for (long v : row.coeffs) c.coeffs.emplace_back(v);
      c.constant = row.constant;
      c.rel = row.equality ? arith::Relation::Eq : arith::Relation::Le;
      ls.constraints.push_back(c);
    }
    arith::Decision d = arith::decide(ls);
    const bool sat = oracle::feasible(sys);
    if (d.refuted == sat) ++omega_bad;
    if (d.refuted && !arith::verify_certificate(ls, d.certificate)) ++omega_bad;
  }
  if (omega_bad) o.fail("omega disagreed on " + std::to_string(omega_bad) + " systems");

  // (c) intuition
  int unsound = 0;
  for (int i = 0; i < 200; ++i) {
    auto f = oracle::random_formula(rng, 3);
    if (!oracle::refuted(f)) continue;
    ExecResult r = s.exec_text("Theorem t : forall A B C : Prop, " + oracle::show(f) +
                               ". Proof. intros A B C. intuition. Qed.");
    s.back(0);
    if (r.ok) ++unsound;
  }
  if (unsound) o.fail("intuition proved " + std::to_string(unsound) + " refuted formulas");
  const char* ex56[] = {
      "forall A B C:Prop, A/\\(B/\\C)->(A/\\B)/\\C",
      "forall A B C D: Prop,(A->B)/\\(C->D)/\\A/\\C -> B/\\D",
      "forall A: Prop, ~(A/\\~A)",
      "forall A B C: Prop, A\\/(B\\/C)->(A\\/B)\\/C",
      "forall A: Prop, ~~(A\\/~A)",
      "forall A B: Prop, (A\\/B)/\\~A -> B",
  };
  for (const char* st : ex56) {
    ExecResult r = s.exec_text(std::string("Theorem t : ") + st + ". Proof. intuition. Qed.");
    s.back(0);
    if (!r.ok) o.fail(std::string("intuition failed on ") + st);
  }
  ExecResult peirce =
      s.exec_text("Theorem t : forall A B : Prop, ((A -> B) -> A) -> A. Proof. intuition. Qed.");
  s.back(0);
  if (peirce.ok) o.fail("intuition proved Peirce's law");

  const double dt = seconds_since(t0);
  if (dt >= 60.0) o.fail("took " + fmt_seconds(dt));
  if (o.ok) o.detail = "1000 ring, 200 omega, 200 intuition cases, " + fmt_seconds(dt);
  return o;
}

Outcome exercise_632() {
  Outcome o;
  auto env = replay("sum_n.v", o);
  if (env) {
    const ConstantDecl* c = env->constant("sum_n_closed");
    if (!c || !c->body) o.fail("sum_n_closed not sealed");
    if (!recheck_environment(*env).empty()) o.fail("kernel re-check failed");
    MetaStore metas;
    Elaborator el(*env, metas);
    Term stmt = metas.instantiate(
        el.infer({}, parse_expr("forall n:nat, 2 * sum_n n = n*n + n")).term);
    if (c && !(c->type == stmt)) o.fail("statement differs from the exercise");
  }
  if (o.ok) o.detail = "sum_n_closed sealed";
  return o;
}

Outcome stretch_sum_of_powers() {
  Outcome o;
  FileReport r = run_file(kCorpus + "/sum_of_powers.v", options());
  if (!r.ok) o.fail(r.error ? describe(*r.error) : "failed");
  return o;
}

Outcome queries() {
  Outcome o;
  Session s(options());
  auto names = [&](const std::string& q) {
    std::vector<std::string> out;
    ExecResult r = s.exec(q);
    if (!r.ok) {
      o.fail(q + " failed");
      return out;
    }
    std::istringstream in(r.output);
    std::string line;
    while (std::getline(in, line)) out.push_back(line.substr(0, line.find(" : ")));
    return out;
  };
  auto expect = [&](const std::string& q, const std::vector<std::string>& want) {
    auto got = names(q);
    std::size_t at = 0;
    for (const auto& w : want) {
      auto it = std::find(got.begin() + static_cast<long>(at), got.end(), w);
      if (it == got.end()) {
        o.fail(q + " misses " + w);
        return;
      }
      at = static_cast<std::size_t>(it - got.begin()) + 1;
    }
    if (names(q) != got) o.fail(q + " is not deterministic");
  };
  expect("Search True.", {"I"});
  expect("Search le.", {"le_n", "le_S"});
  if (!s.exec("Require Import Arith Omega.").ok) o.fail("Require failed");
  expect("Search le.", {"le_n", "le_S", "le_plus_l", "plus_le_reg_l", "plus_le_compat_l",
                        "plus_le_compat_r"});
  expect("SearchPattern (_ + _ <= _ + _).",
         {"plus_le_compat_l", "plus_le_compat_r", "plus_le_compat"});
  expect("SearchRewrite (_ + (_ - _)).", {"le_plus_minus", "le_plus_minus_r"});
  if (o.ok) o.detail = "5 queries";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool primary;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"transcript fidelity", true, transcript_fidelity},
      {"proof corpus", true, proof_corpus},
      {"scheme generation", true, schemes},
      {"rejection suite", true, rejections},
      {"decision-procedure oracles", true, decision_oracles},
      {"exercise 6.32", true, exercise_632},
      {"query golden tests", true, queries},
      {"sum of powers with Arith_extra", false, stretch_sum_of_powers},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << (c.primary ? " [primary] " : " [stretch] ") << c.name;
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << '\n';
    if (c.primary && !o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
