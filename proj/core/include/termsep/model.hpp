#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "termsep/algebra.hpp"
#include "termsep/separator.hpp"

namespace termsep {

/// ¬(lhs = rhs)
struct NegatedEquation {
  Term lhs;
  Term rhs;
};

/// ¬R(args...)
struct NegatedRelation {
  std::string relation;
  std::vector<Term> args;
};

using NegatedAtom = std::variant<NegatedEquation, NegatedRelation>;

/// A universally quantified conjunction of negated atomic formulas.
struct Sentence {
  std::vector<NegatedAtom> atoms;
};

/// One atom per line: `!= s t` for an equation, `!R(t1,...,tn)` for a
/// relation. `#` starts a comment. Relation symbols must not collide with
/// operations and must be used with a consistent arity. Throws ParseError.
Sentence parse_sentence(std::string_view text, const Signature& sig);

/// A finite algebra together with relation symbols that are interpreted as
/// empty (always false).
struct Model {
  ProductAlgebra product;
  std::map<std::string, std::size_t> relations;  // name -> arity
  std::vector<SeparationCertificate> factors;    // one per equation, in order
  std::uint64_t universe_size() const;
};

/// The equation at `atom` unifies, so no model can satisfy its negation.
struct Inconsistent {
  std::size_t atom;
  Unifiable mgu;
};

using ModelResult = std::variant<Model, Inconsistent>;

ModelResult finite_model(const Sentence& sentence, const Signature& sig);

/// Exhaustively checks every atom of the sentence in the model: equations
/// must never hold and relations are empty by construction. Throws
/// LimitExceeded when an equation needs more than `limit` assignments.
bool check_model_bruteforce(const Model& model, const Sentence& sentence, std::uint64_t limit);

/// Symbolic check of every equation in the model.
bool check_model(const Model& model, const Sentence& sentence);

}  // namespace termsep
