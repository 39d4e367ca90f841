#include "hurry/server.hpp"

#include <sys/socket.h>

#include <boost/asio.hpp>
#include <stdexcept>

#include "json.hpp"

namespace hurry {

namespace asio = boost::asio;
using asio::ip::tcp;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

json goals_json(const Session& session) {
  json out = json::array();
  for (const auto& g : session.goals()) {
    json hyps = json::array();
    for (const auto& [name, type] : g.hyps) hyps.push_back({{"name", name}, {"type", type}});
    out.push_back({{"hyps", std::move(hyps)}, {"concl", g.conclusion}});
  }
  return out;
}

json error_json(const Error& e) {
  return {{"line", e.position().line}, {"col", e.position().column}, {"message", e.what()}};
}

json malformed(const std::string& message) {
  return {{"id", -1},
          {"status", "error"},
          {"output", ""},
          {"goals", json::array()},
          {"error", {{"line", 0}, {"col", 0}, {"message", message}}}};
}

std::string payload_of(const json& req) {
  if (!req.contains("payload") || req["payload"].is_null()) return "";
  if (req["payload"].is_string()) return req["payload"].get<std::string>();
  if (req["payload"].is_number_integer()) return std::to_string(req["payload"].get<long long>());
  throw std::invalid_argument("payload must be a string");
}

}  // namespace

std::string handle_request(Session& session, const std::string& line) {
  json req;
  try {
    req = json::parse(line);
  } catch (const json::exception&) {
    return malformed("request is not valid JSON").dump();
  }
  if (!req.is_object() || !req.contains("id") || !req["id"].is_number_integer() ||
      !req.contains("op") || !req["op"].is_string()) {
    return malformed("request needs an integer id and a string op").dump();
  }
  std::string payload;
  try {
    payload = payload_of(req);
  } catch (const std::invalid_argument& e) {
    return malformed(e.what()).dump();
  }

  const auto id = req["id"].get<long long>();
  const std::string op = req["op"].get<std::string>();
  json resp = {{"id", id}, {"status", "ok"}, {"output", ""}};
  try {
    if (op == "exec") {
      ExecResult r = session.exec_text(payload);
      resp["output"] = r.output;
      if (!r.ok && r.error) {
        resp["status"] = "error";
        resp["error"] = error_json(*r.error);
      }
    } else if (op == "back") {
      std::size_t n = 0;
      try {
        std::size_t used = 0;
        long long v = std::stoll(payload, &used);
        if (used != payload.size() || v < 0) throw std::invalid_argument(payload);
        n = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw Error(ErrorKind::OutOfRange, "back expects a sentence count, got \"" + payload + "\".");
      }
      session.back(n);
    } else if (op == "goals") {
      resp["output"] = session.goals_text();
    } else if (op == "env") {
      std::string out;
      for (const auto& d : session.user_declarations()) out += (out.empty() ? "" : "\n") + d;
      resp["output"] = out;
    } else if (op == "about") {
      resp["output"] = std::string("hurry ") + kVersion;
    } else {
      resp["status"] = "error";
      resp["error"] = {{"line", 0}, {"col", 0}, {"message", "unknown op " + op}};
    }
  } catch (const Error& e) {
    resp["status"] = "error";
    resp["error"] = error_json(e);
  }
  resp["goals"] = goals_json(session);
  return resp.dump();
}

std::pair<std::string, unsigned short> parse_address(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == addr.size()) {
    throw std::invalid_argument("expected host:port, got " + addr);
  }
  std::string host = addr.substr(0, colon);
  std::size_t used = 0;
  int port = std::stoi(addr.substr(colon + 1), &used);
  if (used != addr.size() - colon - 1 || port < 0 || port > 65535) {
    throw std::invalid_argument("bad port in " + addr);
  }
  return {host, static_cast<unsigned short>(port)};
}

struct Server::Impl {
  SessionOptions options;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::atomic<bool> stopping{false};
  std::mutex mu;
  std::vector<std::shared_ptr<tcp::socket>> sockets;
  std::vector<std::thread> workers;

  void serve(std::shared_ptr<tcp::socket> sock) {
    Session session(options);
    asio::streambuf buf;
    boost::system::error_code ec;
    while (!stopping) {
      asio::read_until(*sock, buf, '\n', ec);
      if (ec) break;
      std::istream in(&buf);
      std::string line;
      std::getline(in, line);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      std::string resp = handle_request(session, line) + "\n";
      asio::write(*sock, asio::buffer(resp), ec);
      if (ec) break;
    }
    sock->shutdown(tcp::socket::shutdown_both, ec);
    sock->close(ec);
  }
};

Server::Server(SessionOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
}

Server::~Server() {
  stop();
  for (auto& t : impl_->workers) {
    if (t.joinable()) t.join();
  }
}

unsigned short Server::listen(const std::string& host, unsigned short port) {
  tcp::resolver resolver(impl_->io);
  auto results = resolver.resolve(host, std::to_string(port));
  tcp::endpoint ep = results.begin()->endpoint();
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
  return impl_->acceptor.local_endpoint().port();
}

void Server::run() {
  while (!impl_->stopping) {
    auto sock = std::make_shared<tcp::socket>(impl_->io);
    boost::system::error_code ec;
    impl_->acceptor.accept(*sock, ec);
    if (ec) {
      if (impl_->stopping || !impl_->acceptor.is_open()) break;
      continue;
    }
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->sockets.push_back(sock);
    impl_->workers.emplace_back([this, sock] { impl_->serve(sock); });
  }
}

void Server::stop() {
  if (impl_->stopping.exchange(true)) return;
  boost::system::error_code ec;
  // Wakes a blocking accept().
  if (impl_->acceptor.is_open()) ::shutdown(impl_->acceptor.native_handle(), SHUT_RDWR);
  impl_->acceptor.close(ec);
  std::lock_guard<std::mutex> lock(impl_->mu);
  for (auto& s : impl_->sockets) {
    s->shutdown(tcp::socket::shutdown_both, ec);
  }
}

}  // namespace hurry
