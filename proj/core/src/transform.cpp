#include "termsep/transform.hpp"

#include "termsep/errors.hpp"

namespace termsep {

std::string format_transformation(const Transformation& tr) {
  std::string lhs = tr.op + "[" + std::to_string(tr.out) + "] := ";
  switch (tr.kind) {
    case Transformation::Kind::Assign:
      return lhs + "x_" + std::to_string(tr.arg) + "[" + std::to_string(tr.in) + "]";
    case Transformation::Kind::TweakedAssign:
      return lhs + "x_" + std::to_string(tr.arg) + "[" + std::to_string(tr.in) + "] + 1";
    case Transformation::Kind::FlagConst:
      return lhs + "1";
  }
  return lhs;
}

std::string format_sum(const TransformSum& sum) {
  std::string out;
  for (const auto& tr : sum) out += format_transformation(tr) + "\n";
  return out;
}

TransformSum& TransformSum::operator+=(const TransformSum& other) {
  summands_.insert(summands_.end(), other.summands_.begin(), other.summands_.end());
  return *this;
}

TransformSum& TransformSum::operator+=(Transformation tr) {
  summands_.push_back(std::move(tr));
  return *this;
}

std::set<Index> TransformSum::indices() const {
  std::set<Index> out;
  for (const auto& tr : summands_) {
    out.insert(tr.out);
    if (tr.kind != Transformation::Kind::FlagConst) out.insert(tr.in);
  }
  return out;
}

IndexAllocator::IndexAllocator(Index first) : next_(first) {
  if (first == 0) throw PreconditionError("index 0 is reserved");
}

namespace {

TransformSum thread_path(Index j, const Path& path, Index k, IndexAllocator& alloc, bool tweak) {
  if (path.empty()) throw PreconditionError("path transformation along the empty path");
  const auto steps = path.steps();
  const std::size_t n = steps.size();
  // targets[i] is the component written by step i; the root step writes k.
  std::vector<Index> targets(n);
  targets[0] = k;
  for (std::size_t i = 1; i < n; ++i) targets[i] = alloc.fresh();

  TransformSum out;
  for (std::size_t i = n; i-- > 0;) {
    Index source = i + 1 == n ? j : targets[i + 1];
    if (tweak && i + 1 == n)
      out += Transformation::tweaked(steps[i].op, targets[i], steps[i].arg, source);
    else
      out += Transformation::assign(steps[i].op, targets[i], steps[i].arg, source);
  }
  return out;
}

}  // namespace

TransformSum path_transform(Index j, const Path& path, Index k, IndexAllocator& alloc) {
  return thread_path(j, path, k, alloc, false);
}

TransformSum tweaked_path_transform(Index j, const Path& path, Index k, IndexAllocator& alloc) {
  return thread_path(j, path, k, alloc, true);
}

}  // namespace termsep
