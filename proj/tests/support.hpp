#pragma once

#include <doctest.h>

#include <random>
#include <string>

#include "termsep/algebra.hpp"
#include "termsep/term.hpp"

namespace termsep::testing {

// f/3, g/2, h/1, m/2 (the binary "star" operation) and the constant c.
inline const Signature& sig() {
  static const Signature s = parse_signature_list("f/3,g/2,h/1,m/2,c/0");
  return s;
}

inline Term T(std::string_view text) { return parse_term(text, sig()); }

// Reference interpretation of a transformation sum, read straight off the
// summands without building an algebra: component `out` of op(a₁,…,aₙ) is
// the XOR of every summand naming (op, out).
class SumInterpreter {
public:
  SumInterpreter(const TransformSum& sum, std::vector<Index> indices) : sum_(sum), indices_(std::move(indices)) {}

  std::map<Index, bool> eval(const Term& t, const std::map<std::string, std::map<Index, bool>>& asg) const {
    if (t.is_variable()) return asg.at(t.symbol());
    std::vector<std::map<Index, bool>> args;
    for (const auto& a : t.args()) args.push_back(eval(a, asg));
    std::map<Index, bool> out;
    for (Index k : indices_) out[k] = false;
    for (const auto& tr : sum_) {
      if (tr.op != t.symbol()) continue;
      bool bit = tr.kind == Transformation::Kind::FlagConst ? true : args.at(tr.arg - 1).at(tr.in);
      if (tr.kind == Transformation::Kind::TweakedAssign) bit = !bit;
      out[tr.out] = out[tr.out] != bit;
    }
    return out;
  }

private:
  const TransformSum& sum_;
  std::vector<Index> indices_;
};

}  // namespace termsep::testing
