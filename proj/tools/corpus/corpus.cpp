#include "corpus.hpp"

#include <variant>

#include "robinson.hpp"
#include "termsep/errors.hpp"
#include "termsep/separator.hpp"

namespace termsep::corpus {

namespace {

std::optional<std::string> check_unifiable(const Term& s, const Term& t, const Unifiable& u,
                                           const oracle::RobinsonResult& r) {
  Term us = apply(u.subst, s);
  if (us != apply(u.subst, t)) return "substitution does not unify: " + format_term(us) + " vs " + format_term(apply(u.subst, t));
  if (us != u.unifier) return "reported unifier " + format_term(u.unifier) + " differs from σ(s) " + format_term(us);
  if (!oracle::equal_up_to_renaming(u.unifier, r.unifier))
    return "unifier " + format_term(u.unifier) + " is not a renaming of oracle's " + format_term(r.unifier);
  return std::nullopt;
}

// The unifier's own refutation must hold up independently of the separator.
std::optional<std::string> check_refutation(const Term& s, const Term& t, const Failed& f) {
  Closure c = close(s, t);
  if (const auto* w = std::get_if<ConflictWitness>(&f.witness)) {
    if (w->stmt.left().is_variable() || w->stmt.right().is_variable() || w->stmt.left().symbol() == w->stmt.right().symbol())
      return "conflict witness " + format_statement(w->stmt) + " has no clash";
    if (w->derivation.conclusion != w->stmt) return std::string("conflict derivation concludes another statement");
    return replay(w->derivation, s, t);
  }
  const auto& cyc = std::get<CycleWitness>(f.witness);
  if (auto err = check_cycle_witness(cyc, c)) return "cycle: " + *err;
  for (const auto& link : cyc.links) {
    if (link.p == link.q) continue;
    if (auto err = replay(link.derivation, s, t)) return "cycle link: " + *err;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> check_pair(const Term& s, const Term& t, const CorpusOptions& opts, CorpusReport& report) {
  ++report.pairs;
  auto expected = oracle::robinson_unify(s, t);
  UnifyOutcome outcome = unify(s, t);
  const auto* u = std::get_if<Unifiable>(&outcome);
  if (expected.has_value() != (u != nullptr))
    return std::string(expected ? "oracle unifies, closure does not" : "closure unifies, oracle does not");
  if (u) {
    ++report.unifiable;
    return check_unifiable(s, t, *u, *expected);
  }
  if (auto err = check_refutation(s, t, std::get<Failed>(outcome))) return err;

  SeparationResult result = separate(s, t, opts.sig);
  if (std::holds_alternative<Unifiable>(result)) return std::string("separator reports a unifiable pair");
  auto& cert = std::get<SeparationCertificate>(result);
  switch (cert.kind) {
    case SeparationCase::Variable: ++report.variable_case; break;
    case SeparationCase::Subterm: ++report.subterm_case; break;
    case SeparationCase::Conflict: ++report.conflict_case; break;
    case SeparationCase::Cycle: ++report.cycle_case; break;
  }
  if (cert.attempts > 1) ++report.fallbacks;

  FiniteAlgebra algebra = cert.algebra;
  if (opts.inject_fault) {
    TransformSum damaged;
    const auto& parts = cert.sum.summands();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) damaged += parts[i];
    algebra = alg_of(damaged, opts.sig);
  } else if (algebra != alg_of(cert.sum, opts.sig)) {
    return std::string("certificate algebra differs from Alg(L)");
  }

  if (!check_separation(algebra, s, t)) return "symbolic verification failed (" + to_string(cert.kind) + ")";
  auto n = assignment_count(algebra, s, t);
  if (n && *n <= opts.limit) {
    ++report.bruteforce_checked;
    if (!check_separation_bruteforce(algebra, s, t, opts.limit))
      return "brute force found an equalizing assignment (" + to_string(cert.kind) + ")";
  }
  ++report.separated;
  return std::nullopt;
}

CorpusReport run_corpus(const CorpusOptions& opts) {
  CorpusReport report;
  TermGenerator gen(opts.sig, opts.seed, opts.shape);
  for (std::size_t i = 0; i < opts.count; ++i) {
    auto [s, t] = gen.pair();
    std::optional<std::string> failure;
    try {
      failure = check_pair(s, t, opts, report);
    } catch (const Error& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) report.counterexamples.push_back({i, s, t, *failure});
  }
  return report;
}

}  // namespace termsep::corpus
