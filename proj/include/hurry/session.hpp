#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hurry/engine.hpp"
#include "hurry/env.hpp"
#include "hurry/error.hpp"

namespace hurry {

struct SessionOptions {
  bool prelude = true;
  /// Directories searched for `Require Import` after the bundled library.
  std::vector<std::string> load_path;
};

/// Bundled library directory plus the colon-separated HURRY_LOAD_PATH.
std::vector<std::string> default_load_path();

/// The environment and the proof being built, if any.
struct SessionState {
  GlobalEnv env;
  std::optional<ProofState> proof;
};

/// Execute one sentence against a state. Throws on any failure, leaving
/// `state` unchanged; returns the response text.
std::string execute(SessionState& state, const std::string& text, Position origin,
                    const SessionOptions& options);

/// Load a package into `env` (idempotent).
GlobalEnv require_package(const GlobalEnv& env, const std::string& name,
                          const SessionOptions& options);

/// Fresh environment: the prelude, or nothing with `--no-prelude`.
GlobalEnv initial_env(const SessionOptions& options);

struct ExecResult {
  bool ok = true;
  std::string output;
  std::optional<Error> error;
};

struct TranscriptEntry {
  std::string input;
  std::string output;
};

/// A document: executed sentences with a snapshot after each, so that any
/// prefix can be restored.
class Session {
 public:
  explicit Session(SessionOptions options = {});

  /// Execute one sentence (period optional). On failure nothing changes.
  ExecResult exec(const std::string& sentence, Position origin = {1, 1});
  /// Split `text` into sentences and execute them in order, stopping at the
  /// first failure. Outputs are joined with newlines.
  ExecResult exec_text(const std::string& text, Position origin = {1, 1});

  /// Keep the first `n` executed sentences; OutOfRange past the end.
  void back(std::size_t n);
  /// Undo the last tactic of the current proof; NothingToUndo at its start.
  void undo();

  std::size_t executed() const { return history_.size(); }
  const SessionState& state() const;
  const GlobalEnv& env() const { return state().env; }
  bool in_proof() const { return state().proof.has_value(); }
  std::vector<GoalView> goals() const;
  /// Rendered goals, or an empty string outside proofs.
  std::string goals_text() const;
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  /// Declarations added after the initial environment.
  std::vector<std::string> user_declarations() const;
  const SessionOptions& options() const { return options_; }

 private:
  struct Snapshot {
    SessionState state;
    bool tactic = false;
  };

  SessionOptions options_;
  SessionState base_;
  std::vector<Snapshot> history_;
  std::vector<TranscriptEntry> transcript_;
};

/// Batch check: transcript text and whether every sentence succeeded with
/// no proof left open.
struct FileReport {
  bool ok = true;
  std::string transcript;
  std::optional<Error> error;
};
FileReport run_file(const std::string& path, const SessionOptions& options);
FileReport run_source(const std::string& source, const SessionOptions& options);

/// "line L, column C: message"
std::string describe(const Error& e);

}  // namespace hurry
