#include "hurry/notation.hpp"

#include <cctype>
#include <map>

namespace hurry {

const std::vector<NotationEntry>& notation_table() {
  static const std::vector<NotationEntry> table = {
      {"A /\\ B", "/\\", "and A B", "type_scope", level::kAnd, Assoc::Right, "and", 0, true},
      {"A \\/ B", "\\/", "or A B", "type_scope", level::kOr, Assoc::Right, "or", 0, true},
      {"~ x", "~", "not x", "type_scope", level::kNot, Assoc::Right, "not", 0, true},
      {"x = y", "=", "@eq _ x y", "type_scope", level::kRel, Assoc::None, "eq", 1, true},
      {"x <= y", "<=", "le x y", "nat_scope", level::kRel, Assoc::None, "le", 0, true},
      {"x < y", "<", "lt x y", "nat_scope", level::kRel, Assoc::None, "lt", 0, true},
      {"x + y", "+", "plus x y", "nat_scope", level::kPlus, Assoc::Left, "plus", 0, true},
      {"x - y", "-", "minus x y", "nat_scope", level::kPlus, Assoc::Left, "minus", 0, true},
      {"x * y", "*", "mult x y", "nat_scope", level::kMult, Assoc::Left, "mult", 0, true},
      {"x * y", "*", "prod x y", "type_scope", level::kMult, Assoc::Left, "prod", 0, true},
      {"x ^ y", "^", "nat_power x y", "nat_scope", level::kPower, Assoc::Right, "nat_power", 0,
       true},
      {"( x , y )", ",", "pair x y", "core_scope", level::kAtom, Assoc::None, "pair", 2, true},
      {"x :: y", "::", "cons x y", "list_scope", level::kList, Assoc::Right, "cons", 1, true},
      {"x ++ y", "++", "app x y", "list_scope", level::kList, Assoc::Right, "app", 1, true},
      {"exists x , p", "exists", "ex (fun x => p)", "type_scope", level::kBinder, Assoc::None,
       "ex", 1, true},
  };
  return table;
}

namespace {

/// Collapse a pattern to its shape: identifiers and holes become '_',
/// whitespace is dropped.
std::string shape(const std::string& s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isalnum(c) || c == '_' || c == '\'') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              s[j] == '\'')) {
        ++j;
      }
      std::string word = s.substr(i, j - i);
      out += (word == "exists" || word == "forall" || word == "fun") ? word : "_";
      i = j;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

}  // namespace

std::vector<NotationEntry> locate(const std::string& query) {
  std::vector<NotationEntry> out;
  const std::string q = shape(query);
  const bool symbol_only = q.find('_') == std::string::npos;
  std::string bare;
  for (char c : query) {
    if (!std::isspace(static_cast<unsigned char>(c))) bare += c;
  }
  for (const auto& e : notation_table()) {
    if (symbol_only ? e.symbol == bare : shape(e.pattern) == q) out.push_back(e);
  }
  return out;
}

std::string format_locate(const std::vector<NotationEntry>& entries) {
  if (entries.empty()) return "Unknown notation";
  std::string out = "Notation            Scope     \n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    out += "\"" + e.pattern + "\" := " + e.definition + "   : " + e.scope + "\n";
    if (e.default_interpretation) out += "                      (default interpretation)\n";
  }
  out.pop_back();
  return out;
}

const NotationEntry* find_infix(const std::string& symbol) {
  for (const auto& e : notation_table()) {
    if (e.symbol == symbol && e.level > level::kAtom && e.level < level::kBinder &&
        e.symbol != "~") {
      return &e;
    }
  }
  return nullptr;
}

int implicit_arguments(const std::string& global) {
  static const std::map<std::string, int> table = {
      {"eq", 1},         {"eq_refl", 2},    {"pair", 2},       {"fst", 2},
      {"snd", 2},        {"conj", 2},       {"or_introl", 2},  {"or_intror", 2},
      {"ex", 1},         {"ex_intro", 1},   {"nil", 1},        {"cons", 1},
      {"app", 1},        {"app_nil_l", 1},  {"app_nil_r", 1},  {"app_assoc", 1},
      {"eq_sym", 3},     {"eq_trans", 4},   {"length", 1},
  };
  auto it = table.find(global);
  return it == table.end() ? 0 : it->second;
}

}  // namespace hurry
