#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hurry/server.hpp"
#include "hurry/session.hpp"

namespace {

int check(const std::string& path, const hurry::SessionOptions& options) {
  hurry::FileReport r = hurry::run_file(path, options);
  std::cout << r.transcript;
  if (!r.transcript.empty() && r.transcript.back() != '\n') std::cout << '\n';
  if (r.error) {
    std::cerr << path << ": " << hurry::describe(*r.error) << '\n';
    return 1;
  }
  return r.ok ? 0 : 1;
}

int repl(const hurry::SessionOptions& options) {
  hurry::Session session(options);
  std::string buffer;
  std::string line;
  while (true) {
    std::cout << (buffer.empty() ? "hurry < " : "      | ") << std::flush;
    if (!std::getline(std::cin, line)) break;
    buffer += line;
    buffer += '\n';
    auto end = buffer.find_last_not_of(" \t\r\n");
    if (end == std::string::npos || buffer[end] != '.') continue;
    hurry::ExecResult r = session.exec_text(buffer);
    buffer.clear();
    if (!r.output.empty()) std::cout << r.output << '\n';
  }
  std::cout << '\n';
  return 0;
}

int serve(const std::string& addr, const hurry::SessionOptions& options) {
  auto [host, port] = hurry::parse_address(addr);
  hurry::Server server(options);
  unsigned short bound = server.listen(host, port);
  std::cerr << "listening on " << host << ":" << bound << std::endl;
  server.run();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hurry: a small proof assistant"};
  app.require_subcommand(0, 1);
  hurry::SessionOptions options;
  options.load_path = hurry::default_load_path();
  std::vector<std::string> extra;
  bool no_prelude = false;
  app.add_option("--load-path", extra, "Extra directory searched by Require")->take_all();
  app.add_flag("--no-prelude", no_prelude, "Start with an empty environment");

  std::string file;
  auto* check_cmd = app.add_subcommand("check", "Check a .v file");
  check_cmd->add_option("file", file)->required();
  app.add_subcommand("repl", "Interactive loop");
  std::string addr = "127.0.0.1:7878";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON session protocol over TCP");
  serve_cmd->add_option("--addr", addr, "host:port to listen on")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  options.load_path.insert(options.load_path.end(), extra.begin(), extra.end());
  options.prelude = !no_prelude;

  try {
    if (check_cmd->parsed()) return check(file, options);
    if (serve_cmd->parsed()) return serve(addr, options);
    return repl(options);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const hurry::Error& e) {
    std::cerr << "Error: " << hurry::describe(e) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
