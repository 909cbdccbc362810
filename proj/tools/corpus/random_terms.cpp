#include "random_terms.hpp"

#include "termsep/errors.hpp"

namespace termsep::corpus {

Signature default_signature() {
  Signature sig;
  sig.add("f", 3);
  sig.add("g", 2);
  sig.add("h", 1);
  sig.add("c", 0);
  return sig;
}

TermGenerator::TermGenerator(Signature sig, std::uint64_t seed, TermShape shape)
    : sig_(std::move(sig)), shape_(shape), rng_(seed) {
  for (const auto& [name, arity] : sig_.operations()) {
    if (arity == 0)
      constants_.push_back(name);
    else
      ops_.emplace_back(name, arity);
  }
  static const char* kNames[] = {"x", "y", "z", "w"};
  for (std::size_t i = 0; i < shape_.max_vars; ++i) {
    std::string name = i < 4 ? kNames[i] : "v" + std::to_string(i);
    if (!sig_.contains(name)) vars_.push_back(std::move(name));
  }
  if (vars_.empty() && constants_.empty()) throw PreconditionError("generator needs variables or constants");
  if (shape_.max_nodes == 0) throw PreconditionError("terms need at least one node");
}

Term TermGenerator::leaf() {
  if (vars_.empty() || (!constants_.empty() && draw(5) == 0))
    return Term::apply(constants_[draw(constants_.size())]);
  return Term::variable(vars_[draw(vars_.size())]);
}

Term TermGenerator::term(std::size_t max_nodes) {
  if (max_nodes <= 1 || ops_.empty() || draw(100) < 25) return leaf();
  std::vector<const std::pair<std::string, std::size_t>*> fitting;
  for (const auto& op : ops_)
    if (op.second + 1 <= max_nodes) fitting.push_back(&op);
  if (fitting.empty()) return leaf();
  const auto& [name, arity] = *fitting[draw(fitting.size())];
  std::size_t budget = max_nodes - 1;
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) {
    std::size_t reserve = arity - i - 1;  // at least one node per remaining argument
    std::size_t share = budget - reserve;
    if (i + 1 < arity) share = 1 + draw(share);
    Term a = term(share);
    budget -= a.size();
    args.push_back(std::move(a));
  }
  return Term::apply(name, std::move(args));
}

Term TermGenerator::mutate(const Term& t, std::size_t max_nodes) {
  auto occs = occurrences(t);
  const auto& target = occs[draw(occs.size())];
  std::size_t room = max_nodes - (t.size() - target.subterm.size());
  Term replacement = term(std::max<std::size_t>(1, std::min<std::size_t>(room, 4)));
  // Rebuild along the path with the replacement at its end.
  auto rebuild = [&](auto&& self, const Term& u, std::size_t depth) -> Term {
    if (depth == target.path.size()) return replacement;
    const auto& step = target.path.steps()[depth];
    std::vector<Term> args(u.args().begin(), u.args().end());
    args[step.arg - 1] = self(self, args[step.arg - 1], depth + 1);
    return Term::apply(u.symbol(), std::move(args));
  };
  return rebuild(rebuild, t, 0);
}

Term TermGenerator::instantiate(const Term& t, std::size_t max_nodes) {
  std::map<std::string, Term> subst;
  for (const auto& v : variables(t))
    if (draw(2) == 0) subst.emplace(v, draw(2) == 0 ? leaf() : term(3));
  auto apply = [&](auto&& self, const Term& u) -> Term {
    if (u.is_variable()) {
      auto it = subst.find(u.symbol());
      return it == subst.end() ? u : it->second;
    }
    std::vector<Term> args;
    for (const auto& a : u.args()) args.push_back(self(self, a));
    return Term::apply(u.symbol(), std::move(args));
  };
  Term out = apply(apply, t);
  return out.size() <= max_nodes ? out : t;
}

std::pair<Term, Term> TermGenerator::pair() {
  const std::size_t n = shape_.max_nodes;
  Term s = term(n);
  switch (draw(3)) {
    case 0:
      return {s, term(n)};
    case 1: {
      Term t = mutate(s, n);
      return t.size() <= n ? std::pair{s, t} : std::pair{s, term(n)};
    }
    default: {
      Term t = instantiate(s, n);
      if (draw(2) == 0) t = mutate(t, n);
      return t.size() <= n ? std::pair{s, t} : std::pair{s, term(n)};
    }
  }
}

}  // namespace termsep::corpus
