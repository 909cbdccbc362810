#pragma once

#include <map>
#include <optional>
#include <string>

#include "termsep/term.hpp"

// Textbook Robinson unification with an occurs check. It deliberately shares
// nothing with the closure-based unifier so the two can cross-check each other.
namespace termsep::oracle {

using Bindings = std::map<std::string, Term>;

struct RobinsonResult {
  Bindings bindings;  // idempotent: no bound variable occurs in any value
  Term unifier;
};

std::optional<RobinsonResult> robinson_unify(const Term& s, const Term& t);

Term substitute(const Bindings& bindings, const Term& t);

/// True iff some bijective renaming of variables maps `a` onto `b`.
bool equal_up_to_renaming(const Term& a, const Term& b);

}  // namespace termsep::oracle
