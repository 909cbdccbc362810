#include "robinson.hpp"

#include <utility>
#include <vector>

namespace termsep::oracle {

namespace {

// Follows variable bindings at the root only.
Term walk(const Bindings& b, Term t) {
  while (t.is_variable()) {
    auto it = b.find(t.symbol());
    if (it == b.end()) break;
    t = it->second;
  }
  return t;
}

Term resolve(const Bindings& b, const Term& t) {
  Term head = walk(b, t);
  if (head.is_variable()) return head;
  std::vector<Term> args;
  for (const auto& a : head.args()) args.push_back(resolve(b, a));
  return Term::apply(head.symbol(), std::move(args));
}

bool occurs_in(const std::string& var, const Bindings& b, const Term& t) {
  Term head = walk(b, t);
  if (head.is_variable()) return head.symbol() == var;
  for (const auto& a : head.args())
    if (occurs_in(var, b, a)) return true;
  return false;
}

}  // namespace

Term substitute(const Bindings& bindings, const Term& t) {
  if (t.is_variable()) {
    auto it = bindings.find(t.symbol());
    return it == bindings.end() ? t : it->second;
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(substitute(bindings, a));
  return Term::apply(t.symbol(), std::move(args));
}

std::optional<RobinsonResult> robinson_unify(const Term& s, const Term& t) {
  Bindings triangular;
  std::vector<std::pair<Term, Term>> todo{{s, t}};
  while (!todo.empty()) {
    auto [a0, b0] = todo.back();
    todo.pop_back();
    Term a = walk(triangular, a0);
    Term b = walk(triangular, b0);
    if (a.is_variable() && b.is_variable() && a.symbol() == b.symbol()) continue;
    if (!a.is_variable() && b.is_variable()) std::swap(a, b);
    if (a.is_variable()) {
      if (occurs_in(a.symbol(), triangular, b)) return std::nullopt;
      triangular.emplace(a.symbol(), b);
      continue;
    }
    if (a.symbol() != b.symbol() || a.arity() != b.arity()) return std::nullopt;
    for (std::size_t i = 0; i < a.arity(); ++i) todo.emplace_back(a.args()[i], b.args()[i]);
  }
  RobinsonResult out{{}, resolve(triangular, s)};
  for (const auto& [var, value] : triangular) out.bindings.emplace(var, resolve(triangular, value));
  return out;
}

bool equal_up_to_renaming(const Term& a, const Term& b) {
  std::map<std::string, std::string> forward;
  std::map<std::string, std::string> backward;
  auto match = [&](auto&& self, const Term& x, const Term& y) -> bool {
    if (x.is_variable() != y.is_variable()) return false;
    if (x.is_variable()) {
      auto f = forward.emplace(x.symbol(), y.symbol()).first;
      auto g = backward.emplace(y.symbol(), x.symbol()).first;
      return f->second == y.symbol() && g->second == x.symbol();
    }
    if (x.symbol() != y.symbol() || x.arity() != y.arity()) return false;
    for (std::size_t i = 0; i < x.arity(); ++i)
      if (!self(self, x.args()[i], y.args()[i])) return false;
    return true;
  };
  return match(match, a, b);
}

}  // namespace termsep::oracle
