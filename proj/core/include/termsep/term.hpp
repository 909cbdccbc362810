#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace termsep {

/// A finite ranked alphabet. Constants are operations of arity 0.
class Signature {
public:
  Signature() = default;

  /// Adds `name/arity`. Throws PreconditionError on a duplicate name or an
  /// identifier that is not a valid symbol.
  void add(std::string name, std::size_t arity);

  bool contains(std::string_view name) const;
  std::optional<std::size_t> arity(std::string_view name) const;
  const std::map<std::string, std::size_t, std::less<>>& operations() const { return ops_; }
  bool empty() const { return ops_.empty(); }

  friend bool operator==(const Signature&, const Signature&) = default;

private:
  std::map<std::string, std::size_t, std::less<>> ops_;
};

/// Parses a signature file: one `name/arity` per line, `#` starts a comment.
Signature parse_signature(std::string_view text);

/// Parses a comma- or whitespace-separated list of `name/arity` items.
Signature parse_signature_list(std::string_view text);

std::string format_signature(const Signature& sig);

/// Immutable first-order term. Copies share structure.
///
/// Ordering is shortlex: smaller terms first, then variables before
/// applications, then by symbol, then by arguments left to right.
class Term {
public:
  static Term variable(std::string name);
  static Term apply(std::string op, std::vector<Term> args = {});

  bool is_variable() const;
  bool is_application() const { return !is_variable(); }
  const std::string& symbol() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t one_based) const;
  std::size_t arity() const { return args().size(); }
  /// Number of nodes.
  std::size_t size() const;
  std::size_t depth() const;
  std::size_t hash() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// One step of a path: descend into argument `arg` (1-based) of `op`.
struct Step {
  std::string op;
  std::size_t arg = 1;

  friend auto operator<=>(const Step&, const Step&) = default;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Root-first sequence of steps; the empty path addresses the whole term.
class Path {
public:
  Path() = default;
  explicit Path(std::vector<Step> steps) : steps_(std::move(steps)) {}

  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }
  std::span<const Step> steps() const { return steps_; }
  const Step& front() const { return steps_.front(); }
  const Step& back() const { return steps_.back(); }

  /// `*this` followed by `tail`.
  Path operator/(const Path& tail) const;
  Path operator/(const Step& step) const;
  /// All steps but the deepest.
  Path parent() const;

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

private:
  std::vector<Step> steps_;
};

/// Renders a path as `f_2.f_3`; the empty path renders as `Λ`.
std::string format_path(const Path& p);

struct Occurrence {
  Path path;
  Term subterm;
};

/// Throws PathError if `p` does not exist in `t`.
const Term& subterm_at(const Term& t, const Path& p);
std::optional<Term> try_subterm_at(const Term& t, const Path& p);

/// All occurrences of subterms of `t` in preorder, starting with (Λ, t).
std::vector<Occurrence> occurrences(const Term& t);

/// Every path at which `needle` occurs in `haystack`, in preorder.
std::vector<Path> find_subterm_paths(const Term& needle, const Term& haystack);

bool is_subterm(const Term& needle, const Term& haystack);
bool is_proper_subterm(const Term& needle, const Term& haystack);

/// Distinct variable names in order of first occurrence.
std::vector<std::string> variables(const Term& t);
bool occurs(std::string_view var, const Term& t);

std::string format_term(const Term& t);
/// Indented tree, one node per line, two spaces per level.
std::string render_tree(const Term& t);

/// Parses `text` as a single term over `sig`. Identifiers declared in `sig`
/// are operations; any other identifier is a variable.
Term parse_term(std::string_view text, const Signature& sig);

/// Parses a term starting at `pos` and advances `pos` past it (and any
/// trailing whitespace). Used by line formats that contain several terms.
Term parse_term_prefix(std::string_view text, std::size_t& pos, const Signature& sig);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Path& p);

}  // namespace termsep

template <>
struct std::hash<termsep::Term> {
  std::size_t operator()(const termsep::Term& t) const noexcept { return t.hash(); }
};
