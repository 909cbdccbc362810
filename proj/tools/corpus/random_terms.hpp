#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "termsep/term.hpp"

namespace termsep::corpus {

/// f/3, g/2, h/1 and the constant c.
Signature default_signature();

struct TermShape {
  std::size_t max_nodes = 12;
  std::size_t max_vars = 4;
};

/// Seeded generator of random terms and term pairs. Draws are reduced with
/// `%` instead of std::uniform_int_distribution so a seed yields the same
/// stream on every standard library.
class TermGenerator {
public:
  TermGenerator(Signature sig, std::uint64_t seed, TermShape shape = {});

  Term term(std::size_t max_nodes);
  /// A pair biased towards near-misses: independent terms, a term and a
  /// mutated copy, or a term and a substitution instance.
  std::pair<Term, Term> pair();

  std::size_t draw(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

private:
  Term leaf();
  Term mutate(const Term& t, std::size_t max_nodes);
  Term instantiate(const Term& t, std::size_t max_nodes);

  Signature sig_;
  std::vector<std::pair<std::string, std::size_t>> ops_;
  std::vector<std::string> constants_;
  std::vector<std::string> vars_;
  TermShape shape_;
  std::mt19937_64 rng_;
};

}  // namespace termsep::corpus
