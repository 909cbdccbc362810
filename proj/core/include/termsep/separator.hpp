#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "termsep/algebra.hpp"
#include "termsep/transform.hpp"
#include "termsep/unification.hpp"

namespace termsep {

enum class SeparationCase {
  Variable,  // one side is a variable occurring in the other
  Subterm,   // one side is a proper subterm of the other
  Conflict,  // two applications with distinct heads are equivalent
  Cycle,     // the closure has a ≺-cycle
};

std::string to_string(SeparationCase c);

/// A sum of transformations L together with Alg(L), in which s and t never
/// evaluate equal. `verified` is only ever true: an unverifiable
/// construction is reported as InternalError instead.
struct SeparationCertificate {
  SeparationCase kind;
  TransformSum sum;
  FiniteAlgebra algebra;
  bool verified = false;
  /// Component on which s ⊕ t is identically 1.
  Index component = 0;
  /// Human-readable description of the witness the construction used.
  std::string witness;
  /// Number of cycle selections tried (1 unless a fallback was needed).
  std::size_t attempts = 1;
};

using SeparationResult = std::variant<Unifiable, SeparationCertificate>;

/// ‖0,ρ,0‖′ for the first occurrence ρ of variable `x` in `s`.
/// Throws PreconditionError unless x is a variable occurring in s ≠ x.
TransformSum separate_variable(const Term& s, const Term& x, IndexAllocator& alloc);

/// ‖0,ρ,0‖′ for the first occurrence ρ of `s` in `t`.
/// Throws PreconditionError unless s is a proper subterm of t.
TransformSum separate_subterm(const Term& t, const Term& s, IndexAllocator& alloc);

/// A sum L with p[k] ⊕ q[k] = s[0] ⊕ t[0] in Alg(L), built by recursion on
/// the derivation of `st`. Requires k = 0 exactly when the derivation is
/// Base, and no transitive chain passing through the Base statement.
TransformSum lift(const Statement& st, const Derivation& d, Index k, IndexAllocator& alloc);

/// Flags the head of the witness's left side on a fresh component (or on
/// component 0 if the witness is s ≡ t itself).
TransformSum build_conflict(const Term& s, const Term& t, const ConflictWitness& w, IndexAllocator& alloc);

/// Lifts each link of the cycle on its own fresh index and closes the loop
/// with path transformations, tweaking the last one.
TransformSum build_cycle(const Term& s, const Term& t, const CycleWitness& w, IndexAllocator& alloc);

/// Decides unifiability and, if s and t do not unify, returns a verified
/// finite algebra separating them. Throws InternalError if no construction
/// verifies.
SeparationResult separate(const Term& s, const Term& t, const Signature& sig);

}  // namespace termsep
