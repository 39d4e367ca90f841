#include <boost/asio.hpp>
#include <thread>

#include "doctest.h"
#include "hurry/server.hpp"
#include "hurry/syntax.hpp"
#include "json.hpp"
#include "support/oracles.hpp"

using namespace hurry;
using nlohmann::json;

namespace {

json request(Session& s, const json& req) { return json::parse(handle_request(s, req.dump())); }

}  // namespace

TEST_CASE("protocol ops") {
  Session s;
  json r = request(s, {{"id", 1}, {"op", "exec"}, {"payload", "Check True."}});
  CHECK(r == json{{"id", 1}, {"status", "ok"}, {"output", "True : Prop"}, {"goals", json::array()}});

  r = request(s, {{"id", 2},
                  {"op", "exec"},
                  {"payload", "Theorem example2 : forall a b:Prop, a /\\ b -> b /\\ a."}});
  CHECK(r["goals"].size() == 1);
  request(s, {{"id", 3}, {"op", "exec"}, {"payload", "Proof. intros a b H. split."}});
  r = request(s, {{"id", 4}, {"op", "goals"}});
  CHECK(r["id"] == 4);
  REQUIRE(r["goals"].size() == 2);
  CHECK(r["goals"][0]["concl"] == "b");
  CHECK(r["goals"][1]["concl"] == "a");
  CHECK(r["goals"][0]["hyps"][2] == json{{"name", "H"}, {"type", "a /\\ b"}});

  r = request(s, {{"id", 5}, {"op", "env"}});
  CHECK(r["status"] == "ok");

  r = request(s, {{"id", 6}, {"op", "back"}, {"payload", "0"}});
  CHECK(r["status"] == "ok");
  CHECK(r["goals"].empty());

  r = request(s, {{"id", 7}, {"op", "back"}, {"payload", "5"}});
  CHECK(r["status"] == "error");
  CHECK(r["id"] == 7);

  r = request(s, {{"id", 8}, {"op", "exec"}, {"payload", "split."}});
  CHECK(r["status"] == "error");
  CHECK(r["error"]["line"] == 1);
  CHECK(r["error"]["col"] == 1);
  CHECK(r["error"]["message"] == "No proof in progress.");

  r = request(s, {{"id", 9}, {"op", "about"}});
  CHECK(r["output"].get<std::string>().rfind("hurry", 0) == 0);
}

TEST_CASE("malformed requests") {
  Session s;
  for (const std::string line : {"not json", "{\"op\":\"exec\"}", "[1,2]", "{\"id\":\"x\",\"op\":\"exec\"}",
                                 "{\"id\":1,\"op\":\"exec\",\"payload\":[]}"}) {
    INFO(line);
    json r = json::parse(handle_request(s, line));
    CHECK(r["id"] == -1);
    CHECK(r["status"] == "error");
  }
  json r = json::parse(handle_request(s, "{\"id\":4,\"op\":\"dance\"}"));
  CHECK(r["id"] == 4);
  CHECK(r["status"] == "error");
}

TEST_CASE("protocol output equals direct execution for the corpus") {
  for (const char* f : {"terms.v", "example2.v", "bin.v", "even.v", "quantifiers.v"}) {
    INFO(f);
    auto split = split_sentences(oracle::read_file(std::string(HURRY_CORPUS_DIR) + "/" + f));
    Session direct;
    Session served;
    int id = 0;
    for (const auto& sen : split.sentences) {
      ExecResult d = direct.exec(sen.text, sen.pos);
      json r = request(served, {{"id", ++id}, {"op", "exec"}, {"payload", sen.text + "."}});
      CHECK(r["output"] == d.output);
    }
  }
}

TEST_CASE("serving over TCP") {
  namespace asio = boost::asio;
  using asio::ip::tcp;
  SessionOptions o;
  o.load_path = default_load_path();
  Server server(o);
  const unsigned short port = server.listen("127.0.0.1", 0);
  std::thread t([&] { server.run(); });

  asio::io_context io;
  auto talk = [&](tcp::socket& sock, asio::streambuf& buf, const std::string& line) {
    asio::write(sock, asio::buffer(line + "\n"));
    asio::read_until(sock, buf, '\n');
    std::istream in(&buf);
    std::string resp;
    std::getline(in, resp);
    return json::parse(resp);
  };
  tcp::socket a(io), b(io);
  a.connect({asio::ip::make_address("127.0.0.1"), port});
  b.connect({asio::ip::make_address("127.0.0.1"), port});
  asio::streambuf ba, bb;

  json r = talk(a, ba, R"({"id":1,"op":"exec","payload":"Check True."})");
  CHECK(r["output"] == "True : Prop");
  talk(a, ba, R"({"id":2,"op":"exec","payload":"Definition only_here := 3."})");
  r = talk(b, bb, R"({"id":1,"op":"exec","payload":"Check only_here."})");
  CHECK(r["status"] == "error");
  r = talk(a, ba, R"({"id":3,"op":"exec","payload":"Check only_here."})");
  CHECK(r["output"] == "only_here : nat");
  r = talk(a, ba, "oops");
  CHECK(r["id"] == -1);

  a.close();
  b.close();
  server.stop();
  t.join();
}
