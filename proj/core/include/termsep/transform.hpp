#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "termsep/term.hpp"

namespace termsep {

/// Component index of a GF(2) vector.
using Index = std::uint32_t;

/// One summand of an operation definition.
///
///   Assign         op[out] := x_arg[in]
///   TweakedAssign  op[out] := x_arg[in] + 1
///   FlagConst      op[out] := 1   (added to whatever else defines op[out])
struct Transformation {
  enum class Kind { Assign, TweakedAssign, FlagConst };

  Kind kind = Kind::Assign;
  std::string op;
  Index out = 0;
  std::size_t arg = 0;  // 1-based; unused by FlagConst
  Index in = 0;         // unused by FlagConst

  static Transformation assign(std::string op, Index out, std::size_t arg, Index in) {
    return {Kind::Assign, std::move(op), out, arg, in};
  }
  static Transformation tweaked(std::string op, Index out, std::size_t arg, Index in) {
    return {Kind::TweakedAssign, std::move(op), out, arg, in};
  }
  static Transformation flag(std::string op, Index out) { return {Kind::FlagConst, std::move(op), out, 0, 0}; }

  friend bool operator==(const Transformation&, const Transformation&) = default;
};

std::string format_transformation(const Transformation& tr);

/// A formal sum of transformations; Alg(L) is read off it by `alg_of`.
class TransformSum {
public:
  TransformSum() = default;
  explicit TransformSum(std::vector<Transformation> summands) : summands_(std::move(summands)) {}

  TransformSum& operator+=(const TransformSum& other);
  TransformSum& operator+=(Transformation tr);
  friend TransformSum operator+(TransformSum a, const TransformSum& b) { return a += b; }

  const std::vector<Transformation>& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }
  bool empty() const { return summands_.empty(); }
  auto begin() const { return summands_.begin(); }
  auto end() const { return summands_.end(); }

  /// Every index written or read by a summand.
  std::set<Index> indices() const;

private:
  std::vector<Transformation> summands_;
};

std::string format_sum(const TransformSum& sum);

/// Issues fresh component indices. 0 is reserved for the root component.
class IndexAllocator {
public:
  explicit IndexAllocator(Index first = 1);
  Index fresh() { return next_++; }
  Index peek() const { return next_; }

private:
  Index next_;
};

/// ‖j,ρ,k‖: moves component `j` of the subterm at `path` to component `k` of
/// the whole term. Emits one Assign per step, deepest first, threading fresh
/// intermediate indices. Throws PreconditionError on an empty path.
TransformSum path_transform(Index j, const Path& path, Index k, IndexAllocator& alloc);

/// ‖j,ρ,k‖′: as `path_transform` with the deepest assignment tweaked by +1.
TransformSum tweaked_path_transform(Index j, const Path& path, Index k, IndexAllocator& alloc);

}  // namespace termsep
