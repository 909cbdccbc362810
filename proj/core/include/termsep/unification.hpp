#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "termsep/term.hpp"

namespace termsep {

/// Unordered equivalence statement `a ≡ b` between two distinct terms.
/// Stored with `left() < right()` so both orientations compare equal.
class Statement {
public:
  /// Throws PreconditionError if `a == b`.
  Statement(Term a, Term b);

  const Term& left() const { return left_; }
  const Term& right() const { return right_; }
  bool mentions(const Term& t) const { return left_ == t || right_ == t; }

  friend bool operator==(const Statement&, const Statement&) = default;
  friend auto operator<=>(const Statement& a, const Statement& b) {
    if (auto c = a.left_ <=> b.left_; c != 0) return c;
    return a.right_ <=> b.right_;
  }

private:
  Term left_;
  Term right_;
};

std::string format_statement(const Statement& st);

/// A deduction tree for one statement.
///
/// Base is the root statement s ≡ t. Decompose concludes the pair of
/// subterms found at `path` in both sides of its single premise; nested
/// decompositions are collapsed into one step with the composite path.
/// Transitive chains two or more premises a₁≡a₂, a₂≡a₃, ... into a₁≡aₙ.
struct Derivation {
  enum class Rule { Base, Decompose, Transitive };

  Rule rule = Rule::Base;
  Statement conclusion;
  Path path;
  std::vector<std::shared_ptr<const Derivation>> premises;

  const Derivation& premise(std::size_t i = 0) const { return *premises.at(i); }
  bool is_base() const { return rule == Rule::Base; }

  /// Number of distinct statements in the deduction.
  std::size_t statement_count() const;
};

/// Checks a derivation bottom-up against the Base statement `s ≡ t` using only
/// the Transitive and Decompose rules. Returns an explanation on failure.
std::optional<std::string> replay(const Derivation& d, const Term& s, const Term& t);

/// Lists the deduction as numbered statements with the rule that produced each.
std::string format_deduction(const Derivation& d);

/// The unification closure of `s ≡ t`: a partition of all subterms of s and t
/// together with a proof forest explaining every merge.
class Closure {
public:
  const Term& s() const { return s_; }
  const Term& t() const { return t_; }

  /// Every class, members sorted; classes ordered by their smallest member.
  std::vector<std::vector<Term>> classes() const;
  std::vector<std::vector<Term>> nontrivial_classes() const;
  std::vector<Term> class_members(const Term& u) const;

  bool contains(const Term& u) const { return ids_.count(u) != 0; }
  bool equivalent(const Term& a, const Term& b) const;
  std::size_t class_count() const;

  /// All distinct subterms of s and t.
  const std::vector<Term>& universe() const { return terms_; }

  /// Statements that were merged directly (proof forest edges), in merge order.
  std::vector<Statement> merged_statements() const;

  /// Derivation of any statement whose sides are equivalent. Throws
  /// PreconditionError if the sides lie in different classes.
  Derivation derive(const Statement& st) const;

private:
  friend Closure close(const Term& s, const Term& t);

  Closure(Term s, Term t) : s_(std::move(s)), t_(std::move(t)) {}

  struct Justification {
    bool base = true;
    std::size_t parent_a = 0;  // application pair that was decomposed
    std::size_t parent_b = 0;
    std::size_t arg = 0;
  };

  std::size_t id(const Term& u) const;
  std::size_t root(std::size_t id) const;
  std::vector<std::size_t> forest_path(std::size_t a, std::size_t b) const;
  std::shared_ptr<const Derivation> explain(std::size_t a, std::size_t b) const;
  std::shared_ptr<const Derivation> edge_derivation(std::size_t a, std::size_t b) const;

  Term s_;
  Term t_;
  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t> ids_;
  std::vector<std::size_t> class_root_;
  std::vector<std::size_t> forest_parent_;  // npos at forest roots
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const Derivation>> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> edge_order_;
};

/// Saturates `s ≡ t` under Transitive and Decompose.
Closure close(const Term& s, const Term& t);

inline Derivation derive(const Closure& c, const Statement& st) { return c.derive(st); }

struct ConflictWitness {
  Statement stmt;
  Derivation derivation;
};

/// One link `p ≡ q` of a ≺-cycle; `q` occurs at the nonempty path `sigma`
/// inside the `p` of the following link (cyclically).
struct CycleLink {
  Term p;
  Term q;
  Path sigma;
  Derivation derivation;

  Statement stmt() const { return Statement(p, q); }
};

struct CycleWitness {
  std::vector<CycleLink> links;

  std::size_t size() const { return links.size(); }
  /// Sum over links of the deepest occurrence of q in s or t.
  std::size_t depth_score = 0;
};

/// Renders `p₁ ≺ p₂ ≺ … ≺ p₁`.
std::string format_cycle(const CycleWitness& w);

/// Returns an explanation if the witness is not a well-formed ≺-cycle.
std::optional<std::string> check_cycle_witness(const CycleWitness& w, const Closure& c);

/// A class holding two applications with distinct heads, choosing the
/// smallest derivation and breaking ties by occurrence paths.
std::optional<ConflictWitness> check_homogeneous(const Closure& c);

/// The preferred ≺-cycle: fewest links, then deepest q's.
std::optional<CycleWitness> check_acyclic(const Closure& c);

/// ≺-cycles in preference order (fewest links, then largest depth score).
/// Covers cycles of up to `slack` more links than the minimum, capped at `limit`.
std::vector<CycleWitness> cycle_candidates(const Closure& c, std::size_t limit = 64, std::size_t slack = 1);

using Substitution = std::map<std::string, Term>;

Term apply(const Substitution& subst, const Term& t);
std::string format_substitution(const Substitution& subst);

struct Unifiable {
  Substitution subst;
  Term unifier;
};

struct Failed {
  std::variant<ConflictWitness, CycleWitness> witness;

  bool is_conflict() const { return std::holds_alternative<ConflictWitness>(witness); }
};

using UnifyOutcome = std::variant<Unifiable, Failed>;

/// Most general unifier read off a homogeneous, acyclic closure. Bindings
/// `x ↦ x` are omitted. Throws PreconditionError otherwise.
Unifiable extract_mgu(const Closure& c);

UnifyOutcome unify(const Term& s, const Term& t);

}  // namespace termsep
