#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "termsep/term.hpp"
#include "termsep/transform.hpp"

namespace termsep {

/// Element of Z₂^M, stored positionally in the order of FiniteAlgebra::indices().
class Vector {
public:
  Vector() = default;
  explicit Vector(std::size_t dimension) : bits_(dimension, false) {}

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t pos) const { return bits_[pos]; }
  void set(std::size_t pos, bool value) { bits_[pos] = value; }
  void flip(std::size_t pos) { bits_[pos] = !bits_[pos]; }

  Vector& operator^=(const Vector& other);
  friend Vector operator^(Vector a, const Vector& b) { return a ^= b; }
  friend bool operator==(const Vector&, const Vector&) = default;

private:
  std::vector<bool> bits_;
};

using Assignment = std::map<std::string, Vector, std::less<>>;

/// x_arg[in]: one input bit feeding an output component.
struct Source {
  std::size_t arg = 1;
  Index in = 0;
  friend auto operator<=>(const Source&, const Source&) = default;
};

/// One output component: XOR of its sources plus a constant bit.
struct ComponentDef {
  std::set<Source> sources;
  bool constant = false;

  bool is_zero() const { return sources.empty() && !constant; }
  void toggle(Source s);
  friend bool operator==(const ComponentDef&, const ComponentDef&) = default;
};

/// Output components of one operation; absent components are 0.
using OperationDef = std::map<Index, ComponentDef>;

/// A finite algebra on Z₂^M whose operations are affine maps.
/// Operations without a definition are constantly zero.
class FiniteAlgebra {
public:
  /// Validates that every operation is in `sig`, every argument position is
  /// within its arity, and every index is in `indices`. Zero components are
  /// dropped. Throws PreconditionError.
  FiniteAlgebra(Signature sig, std::vector<Index> indices, std::map<std::string, OperationDef> ops);

  const Signature& signature() const { return sig_; }
  /// M, sorted ascending.
  const std::vector<Index>& indices() const { return indices_; }
  std::size_t dimension() const { return indices_.size(); }
  std::optional<std::size_t> position(Index index) const;
  /// Empty for an operation that is constantly zero.
  const OperationDef& operation(const std::string& op) const;
  const std::map<std::string, OperationDef>& operations() const { return ops_; }

  Vector zero() const { return Vector(dimension()); }
  Vector operate(const std::string& op, std::span<const Vector> args) const;

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
  Signature sig_;
  std::vector<Index> indices_;
  std::map<std::string, OperationDef> ops_;
};

/// Alg(L): each operation is the XOR-sum of the summands naming it. M is
/// every index referenced by L, plus 0.
FiniteAlgebra alg_of(const TransformSum& sum, const Signature& sig);

/// Throws PreconditionError if a variable of `t` is missing from `asg`.
Vector eval(const FiniteAlgebra& algebra, const Term& t, const Assignment& asg);

/// XOR of (variable, index) input bits plus a constant.
class AffineForm {
public:
  using Monomial = std::pair<std::string, Index>;

  AffineForm() = default;
  static AffineForm constant_form(bool value);
  static AffineForm monomial(std::string var, Index index);

  const std::set<Monomial>& monomials() const { return monomials_; }
  bool constant() const { return constant_; }
  bool is_constant() const { return monomials_.empty(); }

  void toggle(const Monomial& m);
  void flip() { constant_ = !constant_; }
  AffineForm& operator^=(const AffineForm& other);
  friend AffineForm operator^(AffineForm a, const AffineForm& b) { return a ^= b; }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;

  bool evaluate(const FiniteAlgebra& algebra, const Assignment& asg) const;

private:
  std::set<Monomial> monomials_;
  bool constant_ = false;
};

std::string format_affine(const AffineForm& form);

/// Symbolic value of every component of `t` in `algebra`.
std::map<Index, AffineForm> eval_affine(const FiniteAlgebra& algebra, const Term& t);

/// A component where s ⊕ t is the constant 1, if any.
std::optional<Index> separating_component(const FiniteAlgebra& algebra, const Term& s, const Term& t);

/// Symbolic check: some component of s ⊕ t is identically 1.
bool check_separation(const FiniteAlgebra& algebra, const Term& s, const Term& t);

inline constexpr std::uint64_t kDefaultBruteForceLimit = std::uint64_t{1} << 16;

/// Number of assignments exhaustive checking of (s, t) would enumerate,
/// or nullopt if it does not fit in 63 bits.
std::optional<std::uint64_t> assignment_count(const FiniteAlgebra& algebra, const Term& s, const Term& t);

/// Exhaustively checks s ≠ t under every assignment. Throws LimitExceeded if
/// that takes more than `limit` assignments.
bool check_separation_bruteforce(const FiniteAlgebra& algebra, const Term& s, const Term& t,
                                 std::uint64_t limit = kDefaultBruteForceLimit);

/// Product of algebras over one signature. Component i of the product is
/// component `tags[i].second` of factor `tags[i].first`.
struct ProductAlgebra {
  FiniteAlgebra algebra;
  std::vector<std::pair<std::size_t, Index>> tags;
};

/// Throws PreconditionError if a factor's signature differs from `sig`.
ProductAlgebra product(std::span<const FiniteAlgebra> factors, const Signature& sig);

}  // namespace termsep
