#include "hurry/query.hpp"

#include <map>

#include "hurry/elab.hpp"
#include "hurry/error.hpp"
#include "hurry/printer.hpp"

namespace hurry {

namespace {

struct Candidate {
  std::string name;
  Term statement;
};

/// Statements worth listing, in declaration order: constructors and every
/// constant except oracle entries.
std::vector<Candidate> candidates(const GlobalEnv& env) {
  std::vector<Candidate> out;
  for (const auto& d : env.declarations()) {
    if (const auto* c = std::get_if<ConstantDecl>(d.get())) {
      if (c->kind == ConstantKind::Oracle) continue;
      out.push_back({c->name, c->type});
    } else {
      const auto& ind = std::get<InductiveDecl>(*d);
      for (std::size_t j = 0; j < ind.constructors.size(); ++j) {
        out.push_back({ind.constructors[j].name,
                       ind.constructor_full_type(static_cast<int>(j + 1))});
      }
    }
  }
  return out;
}

/// Conclusion after the leading products, with the number of binders crossed.
std::pair<Term, int> conclusion(Term t) {
  int depth = 0;
  while (t.kind() == TermKind::Prod) {
    t = t.body();
    ++depth;
  }
  return {t, depth};
}

class Matcher {
 public:
  explicit Matcher(int base) : base_(base) {}

  bool match(const Term& p, const Term& t, int depth) {
    if (p.kind() == TermKind::Meta) {
      // Holes only capture terms that do not mention binders of the pattern.
      for (int r : free_rels(t)) {
        if (r < depth - base_) return false;
      }
      auto it = seen_.find(p.meta_id());
      if (it == seen_.end()) {
        seen_.emplace(p.meta_id(), std::make_pair(t, depth));
        return true;
      }
      return it->second.second == depth && it->second.first == t;
    }
    if (p.kind() != t.kind()) return false;
    const TermNode& a = *p.node();
    const TermNode& b = *t.node();
    if (p.kind() == TermKind::Sort) return p.sort() == t.sort();
    const bool binder = p.kind() == TermKind::Prod || p.kind() == TermKind::Lambda ||
                        p.kind() == TermKind::LetIn;
    if (!binder && (a.num != b.num || a.name != b.name)) return false;
    if (a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
      if (!match(a.kids[i], b.kids[i], depth + under(p.kind(), i))) return false;
    }
    return true;
  }

 private:
  static int under(TermKind k, std::size_t kid) {
    switch (k) {
      case TermKind::Prod:
      case TermKind::Lambda:
      case TermKind::Fix:
        return kid == 1 ? 1 : 0;
      case TermKind::LetIn:
        return kid == 2 ? 1 : 0;
      default:
        return 0;
    }
  }

  int base_;
  std::map<int, std::pair<Term, int>> seen_;
};

Term elaborate_pattern(const GlobalEnv& env, const ExprPtr& pattern) {
  MetaStore metas;
  Elaborator el(env, metas);
  Elaborated r = el.infer({}, pattern);
  return metas.instantiate(r.term);
}

bool matches(const Term& pat, const Term& t, int depth) {
  Matcher m(depth);
  return m.match(pat, t, depth);
}

}  // namespace

std::vector<QueryHit> search(const GlobalEnv& env, const std::string& ident) {
  if (!env.contains(ident)) {
    throw Error(ErrorKind::UnknownIdentifier, "The reference " + ident + " was not found.");
  }
  std::vector<QueryHit> out;
  for (auto& c : candidates(env)) {
    Term h = app_head(conclusion(c.statement).first);
    if ((h.kind() == TermKind::Ind || h.kind() == TermKind::Const) && h.name() == ident) {
      out.push_back({c.name, c.statement});
    }
  }
  return out;
}

std::vector<QueryHit> search_pattern(const GlobalEnv& env, const ExprPtr& pattern) {
  Term pat = elaborate_pattern(env, pattern);
  std::vector<QueryHit> out;
  for (auto& c : candidates(env)) {
    auto [concl, depth] = conclusion(c.statement);
    if (matches(pat, concl, depth)) out.push_back({c.name, c.statement});
  }
  return out;
}

std::vector<QueryHit> search_rewrite(const GlobalEnv& env, const ExprPtr& pattern) {
  Term pat = elaborate_pattern(env, pattern);
  std::vector<QueryHit> out;
  for (auto& c : candidates(env)) {
    auto [concl, depth] = conclusion(c.statement);
    Term h = app_head(concl);
    auto args = app_args(concl);
    if (h.kind() != TermKind::Ind || h.name() != "eq" || args.size() != 3) continue;
    if (matches(pat, args[1], depth) || matches(pat, args[2], depth)) {
      out.push_back({c.name, c.statement});
    }
  }
  return out;
}

std::string format_hits(const GlobalEnv& env, const std::vector<QueryHit>& hits) {
  std::string out;
  for (const auto& h : hits) {
    if (!out.empty()) out += "\n";
    out += h.name + " : " + print_term(env, h.statement);
  }
  return out;
}

}  // namespace hurry
