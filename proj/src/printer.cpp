#include "hurry/printer.hpp"

#include <set>

#include "hurry/kernel.hpp"
#include "hurry/notation.hpp"
#include "hurry/reduction.hpp"

namespace hurry {

std::string print_sort(Sort s) {
  switch (s.kind) {
    case SortKind::Prop:
      return "Prop";
    case SortKind::Set:
      return "Set";
    case SortKind::Type:
      return "Type";
  }
  return "Type";
}

namespace {

bool mentions_global(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case TermKind::Const:
    case TermKind::Ind:
      return t.name() == name;
    default:
      break;
  }
  for (const auto& k : t.node()->kids) {
    if (mentions_global(k, name)) return true;
  }
  return false;
}

struct Rendered {
  std::string text;
  int level;
};

class Printer {
 public:
  Printer(const GlobalEnv& env, std::vector<std::string> names)
      : env_(env), names_(std::move(names)) {}

  std::string print(const Term& t, int max_level) {
    Rendered r = render(t);
    return r.level > max_level ? "(" + r.text + ")" : r.text;
  }

 private:
  std::string global_name(const Term& h) const {
    switch (h.kind()) {
      case TermKind::Const:
      case TermKind::Ind:
        return h.name();
      case TermKind::Construct:
        if (const auto* d = env_.inductive(h.name())) {
          if (h.ctor_index() >= 1 &&
              static_cast<std::size_t>(h.ctor_index()) <= d->constructors.size()) {
            return d->constructors[static_cast<std::size_t>(h.ctor_index() - 1)].name;
          }
        }
        return h.name() + "#" + std::to_string(h.ctor_index());
      default:
        return {};
    }
  }

  std::string pick_name(const std::string& base, const Term& body, bool used) {
    std::string b = base;
    if (b == "_" || b.empty()) {
      if (!used) return "_";
      b = "x";
    }
    std::set<std::string> avoid(names_.begin(), names_.end());
    std::string cand = b;
    while (true) {
      cand = fresh_name(cand, avoid);
      if (!(env_.contains(cand) && mentions_global(body, cand))) return cand;
      avoid.insert(cand);
    }
  }

  Rendered infix(const std::string& op, int lvl, Assoc assoc, const Term& a, const Term& b) {
    int left = assoc == Assoc::Left ? lvl : lvl - 1;
    int right = assoc == Assoc::Right ? lvl : lvl - 1;
    return {print(a, left) + " " + op + " " + print(b, right), lvl};
  }

  std::optional<Rendered> notation(const Term& t) {
    const Term& h = t.head();
    auto args = t.args();
    const std::string name = global_name(h);
    const std::size_t n = args.size();
    auto bound_power = env_.notation_bindings().find("^");
    if (h.kind() == TermKind::Ind) {
      if (name == "and" && n == 2) return infix("/\\", level::kAnd, Assoc::Right, args[0], args[1]);
      if (name == "or" && n == 2) return infix("\\/", level::kOr, Assoc::Right, args[0], args[1]);
      if (name == "eq" && n == 3) return infix("=", level::kRel, Assoc::None, args[1], args[2]);
      if (name == "le" && n == 2) return infix("<=", level::kRel, Assoc::None, args[0], args[1]);
      if (name == "prod" && n == 2) return infix("*", level::kMult, Assoc::Left, args[0], args[1]);
      if (name == "ex" && n == 2 && args[1].kind() == TermKind::Lambda) {
        const Term& lam = args[1];
        std::string x = pick_name(lam.binder_name(), lam.body(), true);
        std::string dom = print(lam.domain(), level::kBinder);
        names_.push_back(x);
        std::string body = print(lam.body(), level::kBinder);
        names_.pop_back();
        return Rendered{"exists " + x + " : " + dom + ", " + body, level::kBinder};
      }
    } else if (h.kind() == TermKind::Const) {
      if (name == "not" && n == 1) return Rendered{"~ " + print(args[0], level::kNot), level::kNot};
      if (name == "lt" && n == 2) return infix("<", level::kRel, Assoc::None, args[0], args[1]);
      if (name == "plus" && n == 2) return infix("+", level::kPlus, Assoc::Left, args[0], args[1]);
      if (name == "minus" && n == 2) return infix("-", level::kPlus, Assoc::Left, args[0], args[1]);
      if (name == "mult" && n == 2) return infix("*", level::kMult, Assoc::Left, args[0], args[1]);
      if (name == "app" && n == 3) return infix("++", level::kList, Assoc::Right, args[1], args[2]);
      if (bound_power != env_.notation_bindings().end() && name == bound_power->second && n == 2) {
        return infix("^", level::kPower, Assoc::Right, args[0], args[1]);
      }
    } else if (h.kind() == TermKind::Construct) {
      if (name == "pair" && n == 4) {
        return Rendered{"(" + print(args[2], level::kBinder) + ", " + print(args[3], level::kBinder) + ")",
                        level::kAtom};
      }
      if (name == "cons" && n == 3) return infix("::", level::kList, Assoc::Right, args[1], args[2]);
    }
    return std::nullopt;
  }

  Rendered render_app(const Term& t) {
    if (auto r = notation(t)) return *r;
    const Term& h = t.head();
    auto args = t.args();
    std::string name = global_name(h);
    std::size_t skip = 0;
    std::string head;
    if (!name.empty()) {
      auto k = static_cast<std::size_t>(implicit_arguments(name));
      if (k > 0 && args.size() == k) return {name, level::kAtom};
      if (k > 0 && args.size() > k) {
        skip = k;
        head = name;
      } else if (k > 0) {
        head = "@" + name;
      } else {
        head = name;
      }
    } else {
      head = print(h, level::kArg);
    }
    std::string out = head;
    for (std::size_t i = skip; i < args.size(); ++i) out += " " + print(args[i], level::kArg);
    return {out, level::kApp};
  }

  Rendered render_prod(const Term& t) {
    if (!occurs_rel(t.body(), 0)) {
      std::string dom = print(t.domain(), level::kArrow - 1);
      names_.push_back("_");
      std::string cod = print(t.body(), level::kBinder);
      names_.pop_back();
      return {dom + " -> " + cod, level::kArrow};
    }
    return render_binders(t, TermKind::Prod, "forall ", ", ");
  }

  Rendered render_binders(const Term& t, TermKind kind, const std::string& keyword,
                          const std::string& sep) {
    // Group consecutive binders sharing a domain.
    std::string out = keyword;
    std::size_t pushed = 0;
    Term cur = t;
    bool first_group = true;
    while (cur.kind() == kind && (kind != TermKind::Prod || occurs_rel(cur.body(), 0))) {
      Term dom = cur.domain();
      std::string dom_text = print(dom, level::kBinder);
      std::vector<std::string> group;
      int k = 0;
      while (cur.kind() == kind && (kind != TermKind::Prod || occurs_rel(cur.body(), 0)) &&
             cur.domain() == lift(dom, k)) {
        std::string x = pick_name(cur.binder_name(), cur.body(), true);
        group.push_back(x);
        names_.push_back(x);
        ++pushed;
        ++k;
        cur = cur.body();
      }
      std::string names;
      for (const auto& g : group) names += (names.empty() ? "" : " ") + g;
      bool single_group = first_group && !(cur.kind() == kind &&
                                           (kind != TermKind::Prod || occurs_rel(cur.body(), 0)));
      if (single_group) {
        out += names + " : " + dom_text;
      } else {
        out += (first_group ? "" : " ") + std::string("(") + names + " : " + dom_text + ")";
      }
      first_group = false;
    }
    out += sep + print(cur, level::kBinder);
    names_.resize(names_.size() - pushed);
    return {out, level::kBinder};
  }

  Rendered render_match(const Term& t) {
    std::string out = "match " + print(t.scrutinee(), level::kBinder) + " with";
    const auto* d = env_.inductive(t.name());
    for (std::size_t j = 0; j < t.branches().size(); ++j) {
      Term b = t.branches()[j];
      std::size_t arity = d ? d->constructor_arity(static_cast<int>(j + 1)) : 0;
      std::string pat = d ? d->constructors[j].name : t.name() + "#" + std::to_string(j + 1);
      std::size_t pushed = 0;
      std::size_t lambdas = 0;
      while (lambdas < arity && b.kind() == TermKind::Lambda) {
        std::string x = pick_name(b.binder_name(), b.body(), true);
        pat += " " + x;
        names_.push_back(x);
        ++pushed;
        ++lambdas;
        b = b.body();
      }
      if (lambdas < arity) {
        const int missing = static_cast<int>(arity - lambdas);
        std::vector<Term> extra;
        for (int i = missing - 1; i >= 0; --i) extra.push_back(mk_rel(i));
        b = mk_app(lift(b, missing), std::move(extra));
        for (int i = 0; i < missing; ++i) {
          std::string x = pick_name("x", b, true);
          pat += " " + x;
          names_.push_back(x);
          ++pushed;
        }
      }
      out += " | " + pat + " => " + print(b, level::kBinder);
      names_.resize(names_.size() - pushed);
    }
    return {out + " end", level::kAtom};
  }

  Rendered render_fix(const Term& t) {
    std::string f = pick_name(t.name(), t.body(), true);
    names_.push_back(f);
    std::string out = "fix " + f;
    Term body = t.body();
    Term ty = t.fix_type();
    std::size_t pushed = 1;
    std::string struct_name;
    for (int i = 1; body.kind() == TermKind::Lambda && ty.kind() == TermKind::Prod; ++i) {
      std::string x = pick_name(body.binder_name(), body.body(), true);
      out += " (" + x + " : " + print(body.domain(), level::kBinder) + ")";
      if (i == t.fix_struct()) struct_name = x;
      names_.push_back(x);
      ++pushed;
      body = body.body();
      ty = ty.body();
    }
    if (!struct_name.empty()) out += " {struct " + struct_name + "}";
    // The remaining type lives under the fix binder plus the parameters.
    std::vector<std::string> saved = names_;
    names_.erase(names_.end() - static_cast<long>(pushed), names_.end() - static_cast<long>(pushed - 1));
    std::string rty = print(ty, level::kBinder);
    names_ = saved;
    out += " : " + rty + " := " + print(body, level::kBinder);
    names_.resize(names_.size() - pushed);
    return {out, level::kBinder};
  }

  Rendered render(const Term& t) {
    if (auto n = as_numeral(t)) return {std::to_string(*n), level::kAtom};
    switch (t.kind()) {
      case TermKind::Rel: {
        auto i = static_cast<std::size_t>(t.rel_index());
        if (i < names_.size()) return {names_[names_.size() - 1 - i], level::kAtom};
        return {"_UNBOUND_REL_" + std::to_string(t.rel_index()), level::kAtom};
      }
      case TermKind::Sort:
        return {print_sort(t.sort()), level::kAtom};
      case TermKind::Const:
      case TermKind::Ind:
      case TermKind::Construct: {
        std::string name = global_name(t);
        return {name, level::kAtom};
      }
      case TermKind::Free:
        return {t.name(), level::kAtom};
      case TermKind::Meta:
        return {"?" + std::to_string(t.meta_id()), level::kAtom};
      case TermKind::App:
        return render_app(t);
      case TermKind::Prod:
        return render_prod(t);
      case TermKind::Lambda:
        return render_binders(t, TermKind::Lambda, "fun ", " => ");
      case TermKind::LetIn: {
        std::string x = pick_name(t.binder_name(), t.body(), true);
        std::string v = print(t.let_value(), level::kBinder);
        names_.push_back(x);
        std::string b = print(t.body(), level::kBinder);
        names_.pop_back();
        return {"let " + x + " := " + v + " in " + b, level::kBinder};
      }
      case TermKind::Match:
        return render_match(t);
      case TermKind::Fix:
        return render_fix(t);
    }
    return {"?", level::kAtom};
  }

  const GlobalEnv& env_;
  std::vector<std::string> names_;
};

}  // namespace

std::string print_term_in(const GlobalEnv& env, const std::vector<std::string>& names,
                          const Term& t) {
  return Printer(env, names).print(t, level::kBinder);
}

std::string print_term(const GlobalEnv& env, const LocalContext& ctx, const Term& t) {
  return print_term_in(env, ctx.names(), t);
}

std::string print_term(const GlobalEnv& env, const Term& t) { return print_term_in(env, {}, t); }

}  // namespace hurry
