#include "termsep/separator.hpp"

#include "termsep/errors.hpp"

namespace termsep {

std::string to_string(SeparationCase c) {
  switch (c) {
    case SeparationCase::Variable:
      return "variable";
    case SeparationCase::Subterm:
      return "subterm";
    case SeparationCase::Conflict:
      return "conflict";
    case SeparationCase::Cycle:
      return "cycle";
  }
  return "unknown";
}

TransformSum separate_variable(const Term& s, const Term& x, IndexAllocator& alloc) {
  if (!x.is_variable()) throw PreconditionError(format_term(x) + " is not a variable");
  if (s == x) throw PreconditionError("a variable is not separated from itself");
  auto paths = find_subterm_paths(x, s);
  if (paths.empty())
    throw PreconditionError("variable " + x.symbol() + " does not occur in " + format_term(s) + "; they unify");
  return tweaked_path_transform(0, paths.front(), 0, alloc);
}

TransformSum separate_subterm(const Term& t, const Term& s, IndexAllocator& alloc) {
  if (!is_proper_subterm(s, t))
    throw PreconditionError(format_term(s) + " is not a proper subterm of " + format_term(t));
  return tweaked_path_transform(0, find_subterm_paths(s, t).front(), 0, alloc);
}

TransformSum lift(const Statement& st, const Derivation& d, Index k, IndexAllocator& alloc) {
  if (d.conclusion != st) throw PreconditionError("derivation does not conclude " + format_statement(st));
  switch (d.rule) {
    case Derivation::Rule::Base:
      if (k != 0) throw PreconditionError("the root statement lifts only at index 0");
      return {};

    case Derivation::Rule::Decompose: {
      if (k == 0) throw PreconditionError("a derived statement needs a nonzero index");
      const Derivation& parent = d.premise();
      if (parent.is_base()) return path_transform(k, d.path, 0, alloc);
      Index m = alloc.fresh();
      TransformSum inner = lift(parent.conclusion, parent, m, alloc);
      return inner + path_transform(k, d.path, m, alloc);
    }

    case Derivation::Rule::Transitive: {
      if (k == 0) throw PreconditionError("a derived statement needs a nonzero index");
      TransformSum out;
      for (const auto& link : d.premises) {
        if (link->is_base()) throw PreconditionError("transitive chain passes through the root statement");
        out += lift(link->conclusion, *link, k, alloc);
      }
      return out;
    }
  }
  throw PreconditionError("unknown derivation rule");
}

TransformSum build_conflict(const Term& s, const Term& t, const ConflictWitness& w, IndexAllocator& alloc) {
  const Term& flagged = w.stmt.left();
  if (flagged.is_variable() || w.stmt.right().is_variable() ||
      (flagged.symbol() == w.stmt.right().symbol() && flagged.arity() == w.stmt.right().arity()))
    throw PreconditionError("not a conflict: " + format_statement(w.stmt));
  if (s != t && w.stmt == Statement(s, t)) return TransformSum({Transformation::flag(flagged.symbol(), 0)});
  Index k = alloc.fresh();
  TransformSum out = lift(w.stmt, w.derivation, k, alloc);
  out += Transformation::flag(flagged.symbol(), k);
  return out;
}

TransformSum build_cycle(const Term& s, const Term& t, const CycleWitness& w, IndexAllocator& alloc) {
  const std::size_t m = w.links.size();
  if (m == 0) throw PreconditionError("empty cycle");
  const bool root_statement = s != t;
  std::vector<Index> ks(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& link = w.links[i];
    if (link.sigma.empty()) throw PreconditionError("cycle link with an empty path");
    ks[i] = root_statement && link.derivation.is_base() ? 0 : alloc.fresh();
  }
  TransformSum out;
  for (std::size_t i = 0; i < m; ++i) out += lift(w.links[i].stmt(), w.links[i].derivation, ks[i], alloc);
  for (std::size_t i = 0; i + 1 < m; ++i) out += path_transform(ks[i], w.links[i].sigma, ks[i + 1], alloc);
  out += tweaked_path_transform(ks[m - 1], w.links[m - 1].sigma, ks[0], alloc);
  return out;
}

namespace {

std::optional<SeparationCertificate> certify(SeparationCase kind, TransformSum sum, const Term& s, const Term& t,
                                             const Signature& sig, std::string witness) {
  FiniteAlgebra algebra = alg_of(sum, sig);
  auto component = separating_component(algebra, s, t);
  if (!component) return std::nullopt;
  return SeparationCertificate{kind, std::move(sum), std::move(algebra), true, *component, std::move(witness), 1};
}

SeparationCertificate require(std::optional<SeparationCertificate> cert, const Term& s, const Term& t) {
  if (!cert)
    throw InternalError("construction failed verification for " + format_term(s) + " and " + format_term(t));
  return std::move(*cert);
}

}  // namespace

SeparationResult separate(const Term& s, const Term& t, const Signature& sig) {
  if (s == t) return Unifiable{{}, s};
  if (auto outcome = unify(s, t); std::holds_alternative<Unifiable>(outcome)) return std::get<Unifiable>(outcome);

  IndexAllocator alloc;
  if (t.is_variable() || s.is_variable()) {
    const Term& x = t.is_variable() ? t : s;
    const Term& other = t.is_variable() ? s : t;
    return require(certify(SeparationCase::Variable, separate_variable(other, x, alloc), s, t, sig,
                           x.symbol() + " occurs in " + format_term(other)),
                   s, t);
  }
  if (is_proper_subterm(s, t) || is_proper_subterm(t, s)) {
    const Term& inner = is_proper_subterm(s, t) ? s : t;
    const Term& outer = is_proper_subterm(s, t) ? t : s;
    return require(certify(SeparationCase::Subterm, separate_subterm(outer, inner, alloc), s, t, sig,
                           format_term(inner) + " is a proper subterm of " + format_term(outer)),
                   s, t);
  }

  Closure closure = close(s, t);
  if (auto conflict = check_homogeneous(closure)) {
    return require(certify(SeparationCase::Conflict, build_conflict(s, t, *conflict, alloc), s, t, sig,
                           format_statement(conflict->stmt)),
                   s, t);
  }

  // The first candidate satisfies the minimality conditions the construction
  // relies on; later ones are fallbacks and are only accepted once verified.
  auto candidates = cycle_candidates(closure, 64, 2);
  if (candidates.empty()) throw InternalError("terms do not unify but no failure witness was found");
  std::size_t attempts = 0;
  for (const auto& cycle : candidates) {
    ++attempts;
    IndexAllocator fresh;
    if (auto cert = certify(SeparationCase::Cycle, build_cycle(s, t, cycle, fresh), s, t, sig, format_cycle(cycle))) {
      cert->attempts = attempts;
      return std::move(*cert);
    }
  }
  throw InternalError("no cycle selection verified for " + format_term(s) + " and " + format_term(t) + " after " +
                      std::to_string(attempts) + " attempts");
}

}  // namespace termsep
