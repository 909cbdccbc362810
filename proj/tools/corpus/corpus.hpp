#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "random_terms.hpp"
#include "termsep/algebra.hpp"

namespace termsep::corpus {

struct CorpusOptions {
  Signature sig = default_signature();
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::uint64_t limit = kDefaultBruteForceLimit;
  TermShape shape{};
  /// Test hook: drop the last summand of every certificate before checking.
  bool inject_fault = false;
};

struct Counterexample {
  std::size_t index;
  Term s;
  Term t;
  std::string reason;
};

struct CorpusReport {
  std::size_t pairs = 0;
  std::size_t unifiable = 0;
  std::size_t separated = 0;
  std::size_t variable_case = 0;
  std::size_t subterm_case = 0;
  std::size_t conflict_case = 0;
  std::size_t cycle_case = 0;
  std::size_t fallbacks = 0;
  std::size_t bruteforce_checked = 0;
  std::vector<Counterexample> counterexamples;

  std::size_t mismatches() const { return counterexamples.size(); }
  bool clean() const { return counterexamples.empty(); }
};

/// Checks one pair against the Robinson oracle and, if it does not unify,
/// checks the separation certificate. Returns the failure reason, if any.
std::optional<std::string> check_pair(const Term& s, const Term& t, const CorpusOptions& opts, CorpusReport& report);

CorpusReport run_corpus(const CorpusOptions& opts);

}  // namespace termsep::corpus
