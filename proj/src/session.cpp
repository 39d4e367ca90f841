#include "hurry/session.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "hurry/elab.hpp"
#include "hurry/kernel.hpp"
#include "hurry/notation.hpp"
#include "hurry/printer.hpp"
#include "hurry/query.hpp"
#include "hurry/reduction.hpp"
#include "hurry/syntax.hpp"
#include "hurry/typing.hpp"

#ifndef HURRY_STDLIB_DIR
#define HURRY_STDLIB_DIR "stdlib"
#endif

namespace hurry {

namespace fs = std::filesystem;

std::vector<std::string> default_load_path() {
  std::vector<std::string> out = {HURRY_STDLIB_DIR};
  if (const char* extra = std::getenv("HURRY_LOAD_PATH")) {
    std::stringstream ss(extra);
    std::string dir;
    while (std::getline(ss, dir, ':')) {
      if (!dir.empty()) out.push_back(dir);
    }
  }
  return out;
}

std::string describe(const Error& e) {
  if (!e.position().valid()) return e.what();
  return "line " + std::to_string(e.position().line) + ", column " +
         std::to_string(e.position().column) + ": " + e.what();
}

namespace {

// ---------------------------------------------------------------- packages

std::mutex cache_mutex;
std::map<std::string, GlobalEnv> package_cache;
thread_local std::vector<std::string> load_stack;

std::string env_key(const GlobalEnv& env) {
  std::string key = std::to_string(env.size());
  if (env.size()) key += ":" + declaration_name(*env.declarations().back());
  for (const auto& p : env.packages()) key += "," + p;
  return key;
}

std::optional<std::string> find_package(const std::string& name, const SessionOptions& options) {
  std::vector<std::string> dirs = default_load_path();
  dirs.insert(dirs.end(), options.load_path.begin(), options.load_path.end());
  for (const auto& d : dirs) {
    fs::path p = fs::path(d) / (name + ".v");
    if (fs::exists(p)) return p.string();
  }
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Internal, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GlobalEnv load_source(const GlobalEnv& env, const std::string& source, const std::string& label,
                      const SessionOptions& options) {
  SessionState st{env, std::nullopt};
  SplitResult parts = split_sentences(source);
  if (parts.incomplete) {
    throw Error(ErrorKind::SyntaxError, label + ": unterminated sentence at end of file",
                parts.incomplete->pos);
  }
  for (const auto& s : parts.sentences) {
    try {
      execute(st, s.text, s.pos, options);
    } catch (const Error& e) {
      throw Error(e.kind(), label + ", " + describe(e));
    }
  }
  if (st.proof) throw Error(ErrorKind::OpenGoalsRemain, label + ": open proof at end of file");
  return st.env;
}

// ---------------------------------------------------------------- commands

std::string check_cmd(const SessionState& st, const Sentence& s) {
  LocalContext ctx;
  const GlobalEnv& env = st.env;
  Elaborated r = elaborate_term(env, ctx, s.term);
  return print_term(env, r.term) + " : " + print_term(env, r.type);
}

std::string eval_cmd(const SessionState& st, const Sentence& s) {
  const GlobalEnv& env = st.env;
  Elaborated r = elaborate_term(env, {}, s.term);
  Term v = s.strategy == "simpl" ? simpl(env, {}, r.term) : normalize(env, r.term);
  return "= " + print_term(env, v) + " : " + print_term(env, r.type);
}

ProofState& need_proof(SessionState& st) {
  if (!st.proof) throw Error(ErrorKind::NoProofInProgress, "No proof in progress.");
  return *st.proof;
}

void no_proof(const SessionState& st, const Sentence& s) {
  if (st.proof) {
    throw Error(ErrorKind::TacticFailure,
                "This command is not allowed while a proof is in progress.", s.pos);
  }
}

}  // namespace

GlobalEnv require_package(const GlobalEnv& env, const std::string& name,
                          const SessionOptions& options) {
  if (env.has_package(name)) return env;
  for (const auto& n : load_stack) {
    if (n == name) throw Error(ErrorKind::LoadCycle, "Cyclic dependency on package " + name + ".");
  }
  auto path = find_package(name, options);
  if (!path) throw Error(ErrorKind::UnknownPackage, "Cannot find library " + name + ".");
  const std::string key = name + "@" + *path + "@" + env_key(env);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = package_cache.find(key); it != package_cache.end()) return it->second;
  }
  load_stack.push_back(name);
  GlobalEnv out;
  try {
    out = load_source(env, read_file(*path), name, options);
  } catch (...) {
    load_stack.pop_back();
    throw;
  }
  load_stack.pop_back();
  out.mark_package(name);
  std::lock_guard<std::mutex> lock(cache_mutex);
  package_cache.emplace(key, out);
  return out;
}

GlobalEnv initial_env(const SessionOptions& options) {
  if (!options.prelude) return {};
  return require_package({}, "Prelude", options);
}

std::string execute(SessionState& state, const std::string& text, Position origin,
                    const SessionOptions& options) {
  Sentence s = parse_sentence(text, origin);
  SessionState st = state;
  std::string out;
  try {
    switch (s.kind) {
      case SentenceKind::Check:
        out = check_cmd(st, s);
        break;
      case SentenceKind::Eval:
        out = eval_cmd(st, s);
        break;
      case SentenceKind::Definition: {
        no_proof(st, s);
        ConstantDecl d = elaborate_definition(st.env, s);
        std::string name = d.name;
        st.env = add_constant(st.env, std::move(d));
        out = name + " is defined";
        break;
      }
      case SentenceKind::Fixpoint: {
        no_proof(st, s);
        ConstantDecl d = elaborate_fixpoint(st.env, s);
        std::string name = d.name;
        st.env = add_constant(st.env, std::move(d));
        if (auto sym = where_symbol(s)) st.env.bind_notation(*sym, name);
        out = name + " is recursively defined";
        break;
      }
      case SentenceKind::Inductive: {
        no_proof(st, s);
        InductiveDecl d = elaborate_inductive(st.env, s);
        std::string name = d.name;
        st.env = check_inductive(st.env, std::move(d));
        out = name + " is defined\n" + name + "_ind is defined";
        break;
      }
      case SentenceKind::TheoremStart: {
        no_proof(st, s);
        if (st.env.contains(s.name)) {
          throw Error(ErrorKind::NameClash, s.name + " already exists.", s.pos);
        }
        Term stmt;
        try {
          stmt = elaborate_statement(st.env, s);
          infer_sort(st.env, {}, stmt);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::SyntaxError) throw;
          throw Error(ErrorKind::IllTypedStatement, e.what(), e.position());
        }
        ProofState ps = start_proof(st.env, s.name, stmt);
        ps.keyword = s.keyword;
        st.proof = std::move(ps);
        out = render_goals(*st.proof);
        break;
      }
      case SentenceKind::Proof:
        need_proof(st);
        break;
      case SentenceKind::Qed: {
        ProofState& ps = need_proof(st);
        const auto first = text.find_first_not_of(" \t\r\n");
        const bool transparent = first != std::string::npos && text.compare(first, 7, "Defined") == 0;
        QedResult r = qed(ps, transparent);
        st.env = std::move(r.env);
        st.proof.reset();
        out = r.message;
        if (!r.oracles.empty()) {
          out += "\nOracles:";
          for (const auto& o : r.oracles) out += " " + o;
        }
        break;
      }
      case SentenceKind::Abort:
        need_proof(st);
        st.proof.reset();
        break;
      case SentenceKind::Tactic: {
        ProofState& ps = need_proof(st);
        run_tactic(ps, *s.tactic);
        out = render_goals(ps);
        break;
      }
      case SentenceKind::RequireImport: {
        no_proof(st, s);
        for (const auto& n : s.names) st.env = require_package(st.env, n, options);
        break;
      }
      case SentenceKind::Search:
        out = format_hits(st.env, search(st.env, s.name));
        break;
      case SentenceKind::SearchPattern:
        out = format_hits(st.env, search_pattern(st.env, s.term));
        break;
      case SentenceKind::SearchRewrite:
        out = format_hits(st.env, search_rewrite(st.env, s.term));
        break;
      case SentenceKind::Locate:
        out = format_locate(locate(s.name));
        break;
    }
  } catch (Error& e) {
    if (!e.position().valid()) e.set_position(s.pos);
    throw;
  }
  while (!out.empty() && out.back() == '\n') out.pop_back();
  state = std::move(st);
  return out;
}

// ----------------------------------------------------------------- Session

Session::Session(SessionOptions options) : options_(std::move(options)) {
  base_.env = initial_env(options_);
}

const SessionState& Session::state() const {
  return history_.empty() ? base_ : history_.back().state;
}

ExecResult Session::exec(const std::string& sentence, Position origin) {
  ExecResult r;
  SessionState st = state();
  try {
    r.output = execute(st, sentence, origin, options_);
  } catch (const Error& e) {
    r.ok = false;
    r.error = e;
    r.output = "Error: " + describe(e);
    transcript_.push_back({sentence, r.output});
    return r;
  }
  const bool tactic = st.proof && state().proof;
  history_.push_back({std::move(st), tactic});
  transcript_.push_back({sentence, r.output});
  return r;
}

ExecResult Session::exec_text(const std::string& text, Position origin) {
  SplitResult parts = split_sentences(text);
  ExecResult all;
  auto append = [&](const std::string& s) {
    if (s.empty()) return;
    if (!all.output.empty()) all.output += "\n";
    all.output += s;
  };
  for (const auto& s : parts.sentences) {
    Position p = s.pos;
    if (p.line == 1) p.column += origin.column - 1;
    p.line += origin.line - 1;
    ExecResult r = exec(s.text, p);
    append(r.output);
    if (!r.ok) {
      all.ok = false;
      all.error = r.error;
      return all;
    }
  }
  if (parts.incomplete) {
    all.ok = false;
    all.error = Error(ErrorKind::SyntaxError, "Sentence is not terminated by a period.",
                      parts.incomplete->pos);
    append("Error: " + describe(*all.error));
  }
  return all;
}

void Session::back(std::size_t n) {
  if (n > history_.size()) {
    throw Error(ErrorKind::OutOfRange, "Cannot go back to sentence " + std::to_string(n) +
                                           ": only " + std::to_string(history_.size()) +
                                           " executed.");
  }
  history_.resize(n);
}

void Session::undo() {
  if (history_.empty() || !history_.back().tactic) {
    throw Error(ErrorKind::NothingToUndo, "Nothing to undo.");
  }
  history_.pop_back();
}

std::vector<GoalView> Session::goals() const {
  std::vector<GoalView> out;
  if (const auto& p = state().proof) {
    for (int g : p->goals) out.push_back(view_goal(*p, g));
  }
  return out;
}

std::string Session::goals_text() const {
  if (const auto& p = state().proof) return render_goals(*p);
  return {};
}

std::vector<std::string> Session::user_declarations() const {
  std::vector<std::string> out;
  const auto& ds = env().declarations();
  for (std::size_t i = base_.env.size(); i < ds.size(); ++i) {
    out.push_back(declaration_name(*ds[i]));
  }
  return out;
}

FileReport run_source(const std::string& source, const SessionOptions& options) {
  FileReport rep;
  std::ostringstream out;
  Session session(options);
  SplitResult parts = split_sentences(source);
  for (const auto& s : parts.sentences) {
    ExecResult r = session.exec(s.text, s.pos);
    out << s.text << ".\n";
    if (!r.output.empty()) out << r.output << "\n";
    if (!r.ok) {
      rep.ok = false;
      rep.error = r.error;
      rep.transcript = out.str();
      return rep;
    }
  }
  if (parts.incomplete) {
    rep.ok = false;
    rep.error = Error(ErrorKind::SyntaxError, "Sentence is not terminated by a period.",
                      parts.incomplete->pos);
  } else if (session.in_proof()) {
    rep.ok = false;
    rep.error = Error(ErrorKind::OpenGoalsRemain, "open proof at end of file");
  }
  rep.transcript = out.str();
  return rep;
}

FileReport run_file(const std::string& path, const SessionOptions& options) {
  return run_source(read_file(path), options);
}

}  // namespace hurry
