#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "hurry/session.hpp"

namespace hurry {

/// One protocol request line against a session; returns the response line
/// (JSON, no trailing newline).
std::string handle_request(Session& session, const std::string& line);

/// Newline-delimited JSON over TCP. Every connection owns its own Session.
class Server {
 public:
  explicit Server(SessionOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Bind and listen; port 0 picks a free port. Returns the bound port.
  unsigned short listen(const std::string& host, unsigned short port);
  /// Accept connections until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// "host:port" split; throws std::invalid_argument on malformed input.
std::pair<std::string, unsigned short> parse_address(const std::string& addr);

}  // namespace hurry
