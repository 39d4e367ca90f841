#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hurry {

enum class Assoc { Left, Right, None };

/// Builtin notation levels (lower binds tighter).
namespace level {
inline constexpr int kAtom = 0;
inline constexpr int kApp = 10;
inline constexpr int kArg = 9;
inline constexpr int kPower = 30;
inline constexpr int kMult = 40;
inline constexpr int kPlus = 50;
inline constexpr int kList = 60;
inline constexpr int kRel = 70;
inline constexpr int kNot = 75;
inline constexpr int kAnd = 80;
inline constexpr int kOr = 85;
inline constexpr int kArrow = 99;
inline constexpr int kBinder = 200;
}  // namespace level

struct NotationEntry {
  std::string pattern;     // "x <= y"
  std::string symbol;      // "<="
  std::string definition;  // "le x y"
  std::string scope;       // "nat_scope", "type_scope", or empty
  int level = 0;
  Assoc assoc = Assoc::None;
  // Head constant the notation stands for, and how many leading implicit
  // arguments it hides.
  std::string head;
  int hidden_args = 0;
  bool default_interpretation = true;
};

const std::vector<NotationEntry>& notation_table();

/// Entries whose pattern matches the query ("_ <= _", "<=", "x <= y").
std::vector<NotationEntry> locate(const std::string& query);

/// Output of the Locate command; empty results give "Unknown notation".
std::string format_locate(const std::vector<NotationEntry>& entries);

/// Infix binary operator by symbol, if any.
const NotationEntry* find_infix(const std::string& symbol);

/// Number of leading implicit arguments of a global, by name.
int implicit_arguments(const std::string& global);

}  // namespace hurry
