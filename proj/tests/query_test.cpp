#include "doctest.h"
#include "hurry/error.hpp"
#include "hurry/session.hpp"

using namespace hurry;

namespace {

std::vector<std::string> names(const std::string& output) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < output.size()) {
    std::size_t end = output.find('\n', start);
    if (end == std::string::npos) end = output.size();
    std::string line = output.substr(start, end - start);
    out.push_back(line.substr(0, line.find(" : ")));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> query(Session& s, const std::string& q) {
  ExecResult r = s.exec(q);
  REQUIRE(r.ok);
  return names(r.output);
}

}  // namespace

TEST_CASE("Search") {
  Session s;
  CHECK(query(s, "Search True.") == std::vector<std::string>{"I"});
  CHECK(query(s, "Search le.") == std::vector<std::string>{"le_n", "le_S"});
  ExecResult r = s.exec("Search nothing_here.");
  REQUIRE(r.error);
  CHECK(r.error->kind() == ErrorKind::UnknownIdentifier);
}

TEST_CASE("SearchPattern and SearchRewrite over Arith") {
  Session s;
  REQUIRE(s.exec("Require Import Arith.").ok);
  CHECK(query(s, "SearchPattern (_ + _ <= _ + _).") ==
        std::vector<std::string>{"plus_le_compat_l", "plus_le_compat_r", "plus_le_compat"});
  CHECK(query(s, "SearchRewrite (_ + (_ - _)).") ==
        std::vector<std::string>{"le_plus_minus", "le_plus_minus_r"});
  auto le = query(s, "Search le.");
  for (const char* n : {"le_n", "le_S", "plus_le_reg_l", "plus_le_compat_l", "plus_le_compat_r",
                        "le_plus_l"}) {
    CHECK(std::find(le.begin(), le.end(), n) != le.end());
  }
  ExecResult r = s.exec("SearchRewrite (_ * 1).");
  REQUIRE(r.ok);
  CHECK(r.output.find("mult_1_r : forall n : nat, n * 1 = n") != std::string::npos);
}

TEST_CASE("patterns with constants") {
  Session s;
  REQUIRE(s.exec("Require Import Arith.").ok);
  CHECK(query(s, "SearchPattern (0 <= _).") == std::vector<std::string>{"le_O_n"});
  CHECK(query(s, "SearchPattern (S _ <= S _).") == std::vector<std::string>{"le_n_S"});
}
