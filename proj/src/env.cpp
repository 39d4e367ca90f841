#include "hurry/env.hpp"

#include "hurry/error.hpp"

namespace hurry {

LocalContext LocalContext::push(std::string name, Term type, std::optional<Term> body) const {
  LocalContext c = *this;
  c.push_in_place(std::move(name), std::move(type), std::move(body));
  return c;
}

void LocalContext::push_in_place(std::string name, Term type, std::optional<Term> body) {
  entries_.push_back({std::move(name), std::move(type), std::move(body)});
}

const ContextEntry& LocalContext::lookup(int index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= entries_.size()) {
    fail(ErrorKind::UnboundVariable, "unbound de Bruijn index " + std::to_string(index));
  }
  return entries_[entries_.size() - 1 - static_cast<std::size_t>(index)];
}

Term LocalContext::type_of(int index) const { return lift(lookup(index).type, index + 1); }

std::optional<Term> LocalContext::body_of(int index) const {
  const auto& e = lookup(index);
  if (!e.body) return std::nullopt;
  return lift(*e.body, index + 1);
}

std::optional<std::size_t> LocalContext::find(const std::string& name) const {
  for (std::size_t i = entries_.size(); i-- > 0;) {
    if (entries_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> LocalContext::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

LocalContext LocalContext::prefix(std::size_t length) const {
  LocalContext c;
  c.entries_.assign(entries_.begin(), entries_.begin() + static_cast<long>(length));
  return c;
}

std::size_t InductiveDecl::num_indices() const {
  std::size_t n = 0;
  Term t = arity;
  while (t.kind() == TermKind::Prod) {
    ++n;
    t = t.body();
  }
  return n;
}

namespace {

Term close_params(const std::vector<Binder>& params, Term body) {
  for (std::size_t i = params.size(); i-- > 0;) {
    body = mk_prod(params[i].name, params[i].type, std::move(body));
  }
  return body;
}

}  // namespace

Term InductiveDecl::full_type() const { return close_params(params, arity); }

Term InductiveDecl::constructor_full_type(int ordinal) const {
  return close_params(params, constructors.at(static_cast<std::size_t>(ordinal - 1)).type);
}

std::size_t InductiveDecl::constructor_arity(int ordinal) const {
  std::size_t n = 0;
  Term t = constructors.at(static_cast<std::size_t>(ordinal - 1)).type;
  while (t.kind() == TermKind::Prod) {
    ++n;
    t = t.body();
  }
  return n;
}

const std::string& declaration_name(const Declaration& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

std::optional<GlobalRef> GlobalEnv::lookup(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

const ConstantDecl* GlobalEnv::constant(const std::string& name) const {
  auto r = lookup(name);
  if (!r || r->kind != GlobalKind::Constant) return nullptr;
  return &std::get<ConstantDecl>(*decls_[r->index]);
}

const InductiveDecl* GlobalEnv::inductive(const std::string& name) const {
  auto r = lookup(name);
  if (!r || r->kind != GlobalKind::Inductive) return nullptr;
  return &std::get<InductiveDecl>(*decls_[r->index]);
}

std::string GlobalEnv::constructor_name(const std::string& ind, int ordinal) const {
  const auto* d = inductive(ind);
  if (!d || ordinal < 1 || static_cast<std::size_t>(ordinal) > d->constructors.size()) {
    fail(ErrorKind::UnknownIdentifier, "no constructor " + std::to_string(ordinal) + " of " + ind);
  }
  return d->constructors[static_cast<std::size_t>(ordinal - 1)].name;
}

Term GlobalEnv::type_of_global(const Term& t) const {
  switch (t.kind()) {
    case TermKind::Const: {
      const auto* c = constant(t.name());
      if (!c) fail(ErrorKind::UnknownIdentifier, "unknown constant " + t.name());
      return c->type;
    }
    case TermKind::Ind: {
      const auto* d = inductive(t.name());
      if (!d) fail(ErrorKind::UnknownIdentifier, "unknown inductive " + t.name());
      return d->full_type();
    }
    case TermKind::Construct: {
      const auto* d = inductive(t.name());
      if (!d || t.ctor_index() < 1 ||
          static_cast<std::size_t>(t.ctor_index()) > d->constructors.size()) {
        fail(ErrorKind::UnknownIdentifier, "unknown constructor of " + t.name());
      }
      return d->constructor_full_type(t.ctor_index());
    }
    default:
      fail(ErrorKind::Internal, "type_of_global on a non-global term");
  }
}

void GlobalEnv::add_unchecked(Declaration decl) {
  const std::size_t idx = decls_.size();
  if (auto* ind = std::get_if<InductiveDecl>(&decl)) {
    names_[ind->name] = {GlobalKind::Inductive, idx, 0};
    for (std::size_t j = 0; j < ind->constructors.size(); ++j) {
      names_[ind->constructors[j].name] = {GlobalKind::Constructor, idx, static_cast<int>(j + 1)};
    }
  } else {
    names_[std::get<ConstantDecl>(decl).name] = {GlobalKind::Constant, idx, 0};
  }
  decls_.push_back(std::make_shared<const Declaration>(std::move(decl)));
}

}  // namespace hurry
