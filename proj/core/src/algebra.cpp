#include "termsep/algebra.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "termsep/errors.hpp"

namespace termsep {

Vector& Vector::operator^=(const Vector& other) {
  if (other.size() != size()) throw PreconditionError("vector dimension mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] != other.bits_[i];
  return *this;
}

void ComponentDef::toggle(Source s) {
  if (auto it = sources.find(s); it != sources.end())
    sources.erase(it);
  else
    sources.insert(s);
}

// ---------------------------------------------------------------------------
// FiniteAlgebra

FiniteAlgebra::FiniteAlgebra(Signature sig, std::vector<Index> indices, std::map<std::string, OperationDef> ops)
    : sig_(std::move(sig)), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw PreconditionError("duplicate component index");
  for (auto& [name, def] : ops) {
    auto arity = sig_.arity(name);
    if (!arity) throw PreconditionError("operation '" + name + "' is not in the signature");
    OperationDef kept;
    for (auto& [out, comp] : def) {
      if (!position(out)) throw PreconditionError("index " + std::to_string(out) + " is not a component");
      for (const auto& src : comp.sources) {
        if (src.arg == 0 || src.arg > *arity)
          throw PreconditionError("operation '" + name + "' has no argument " + std::to_string(src.arg));
        if (!position(src.in)) throw PreconditionError("index " + std::to_string(src.in) + " is not a component");
      }
      if (!comp.is_zero()) kept.emplace(out, std::move(comp));
    }
    if (!kept.empty()) ops_.emplace(name, std::move(kept));
  }
}

std::optional<std::size_t> FiniteAlgebra::position(Index index) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) return std::nullopt;
  return static_cast<std::size_t>(it - indices_.begin());
}

const OperationDef& FiniteAlgebra::operation(const std::string& op) const {
  static const OperationDef kZero;
  auto it = ops_.find(op);
  return it == ops_.end() ? kZero : it->second;
}

Vector FiniteAlgebra::operate(const std::string& op, std::span<const Vector> args) const {
  Vector out = zero();
  for (const auto& [index, comp] : operation(op)) {
    bool bit = comp.constant;
    for (const auto& src : comp.sources) bit = bit != args[src.arg - 1][*position(src.in)];
    out.set(*position(index), bit);
  }
  return out;
}

FiniteAlgebra alg_of(const TransformSum& sum, const Signature& sig) {
  std::set<Index> referenced = sum.indices();
  referenced.insert(0);
  std::map<std::string, OperationDef> ops;
  for (const auto& tr : sum) {
    auto& comp = ops[tr.op][tr.out];
    switch (tr.kind) {
      case Transformation::Kind::Assign:
        comp.toggle({tr.arg, tr.in});
        break;
      case Transformation::Kind::TweakedAssign:
        comp.toggle({tr.arg, tr.in});
        comp.constant = !comp.constant;
        break;
      case Transformation::Kind::FlagConst:
        comp.constant = !comp.constant;
        break;
    }
  }
  return FiniteAlgebra(sig, std::vector<Index>(referenced.begin(), referenced.end()), std::move(ops));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Vector eval_rec(const FiniteAlgebra& algebra, const Term& t, const Assignment& asg) {
  if (t.is_variable()) {
    auto it = asg.find(t.symbol());
    if (it == asg.end()) throw PreconditionError("no value assigned to variable '" + t.symbol() + "'");
    if (it->second.size() != algebra.dimension())
      throw PreconditionError("value of '" + t.symbol() + "' has the wrong dimension");
    return it->second;
  }
  std::vector<Vector> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(eval_rec(algebra, a, asg));
  return algebra.operate(t.symbol(), args);
}

}  // namespace

Vector eval(const FiniteAlgebra& algebra, const Term& t, const Assignment& asg) { return eval_rec(algebra, t, asg); }

AffineForm AffineForm::constant_form(bool value) {
  AffineForm f;
  f.constant_ = value;
  return f;
}

AffineForm AffineForm::monomial(std::string var, Index index) {
  AffineForm f;
  f.monomials_.emplace(std::move(var), index);
  return f;
}

void AffineForm::toggle(const Monomial& m) {
  if (auto it = monomials_.find(m); it != monomials_.end())
    monomials_.erase(it);
  else
    monomials_.insert(m);
}

AffineForm& AffineForm::operator^=(const AffineForm& other) {
  for (const auto& m : other.monomials_) toggle(m);
  constant_ = constant_ != other.constant_;
  return *this;
}

bool AffineForm::evaluate(const FiniteAlgebra& algebra, const Assignment& asg) const {
  bool bit = constant_;
  for (const auto& [var, index] : monomials_) {
    auto it = asg.find(var);
    if (it == asg.end()) throw PreconditionError("no value assigned to variable '" + var + "'");
    auto pos = algebra.position(index);
    if (!pos) throw PreconditionError("index " + std::to_string(index) + " is not a component");
    bit = bit != it->second[*pos];
  }
  return bit;
}

std::string format_affine(const AffineForm& form) {
  std::string out;
  for (const auto& [var, index] : form.monomials()) {
    if (!out.empty()) out += " + ";
    out += var + "[" + std::to_string(index) + "]";
  }
  if (out.empty()) return form.constant() ? "1" : "0";
  if (form.constant()) out += " + 1";
  return out;
}

std::map<Index, AffineForm> eval_affine(const FiniteAlgebra& algebra, const Term& t) {
  const auto& indices = algebra.indices();
  std::unordered_map<Term, std::vector<AffineForm>> memo;
  auto walk = [&](auto&& self, const Term& u) -> const std::vector<AffineForm>& {
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    std::vector<AffineForm> forms(indices.size());
    if (u.is_variable()) {
      for (std::size_t i = 0; i < indices.size(); ++i) forms[i] = AffineForm::monomial(u.symbol(), indices[i]);
    } else {
      std::vector<const std::vector<AffineForm>*> args;
      for (const auto& a : u.args()) args.push_back(&self(self, a));
      for (const auto& [index, comp] : algebra.operation(u.symbol())) {
        AffineForm f = AffineForm::constant_form(comp.constant);
        for (const auto& src : comp.sources) f ^= (*args[src.arg - 1])[*algebra.position(src.in)];
        forms[*algebra.position(index)] = std::move(f);
      }
    }
    return memo.emplace(u, std::move(forms)).first->second;
  };
  const auto& forms = walk(walk, t);
  std::map<Index, AffineForm> out;
  for (std::size_t i = 0; i < indices.size(); ++i) out.emplace(indices[i], forms[i]);
  return out;
}

std::optional<Index> separating_component(const FiniteAlgebra& algebra, const Term& s, const Term& t) {
  auto fs = eval_affine(algebra, s);
  auto ft = eval_affine(algebra, t);
  for (const auto& [index, form] : fs) {
    AffineForm diff = form ^ ft.at(index);
    if (diff.is_constant() && diff.constant()) return index;
  }
  return std::nullopt;
}

bool check_separation(const FiniteAlgebra& algebra, const Term& s, const Term& t) {
  return separating_component(algebra, s, t).has_value();
}

namespace {

std::vector<std::string> joint_variables(const Term& s, const Term& t) {
  auto vars = variables(s);
  for (auto& v : variables(t))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(std::move(v));
  return vars;
}

}  // namespace

std::optional<std::uint64_t> assignment_count(const FiniteAlgebra& algebra, const Term& s, const Term& t) {
  std::uint64_t bits = algebra.dimension() * joint_variables(s, t).size();
  if (bits >= 63) return std::nullopt;
  return std::uint64_t{1} << bits;
}

namespace {

// Straight-line program evaluating one term over bit-packed vectors
// (dimension ≤ 64). Each instruction produces one node's value.
class PackedProgram {
public:
  PackedProgram(const FiniteAlgebra& algebra, const Term& t, const std::vector<std::string>& vars)
      : algebra_(algebra), vars_(vars) {
    emit(t);
  }

  std::uint64_t run(const std::vector<std::uint64_t>& values, std::vector<std::uint64_t>& scratch) const {
    scratch.resize(code_.size());
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const auto& ins = code_[i];
      if (ins.var) {
        scratch[i] = values[*ins.var];
        continue;
      }
      std::uint64_t out = ins.constants;
      for (const auto& [bit, arg, in] : ins.sources) out ^= ((scratch[ins.args[arg]] >> in) & 1U) << bit;
      scratch[i] = out;
    }
    return scratch.back();
  }

private:
  struct Instruction {
    std::optional<std::size_t> var;
    std::vector<std::size_t> args;  // instruction numbers
    std::uint64_t constants = 0;
    std::vector<std::tuple<unsigned, std::size_t, unsigned>> sources;  // (out bit, arg slot, in bit)
  };

  std::size_t emit(const Term& t) {
    Instruction ins;
    if (t.is_variable()) {
      ins.var = static_cast<std::size_t>(std::find(vars_.begin(), vars_.end(), t.symbol()) - vars_.begin());
    } else {
      for (const auto& a : t.args()) ins.args.push_back(emit(a));
      for (const auto& [out, comp] : algebra_.operation(t.symbol())) {
        auto bit = static_cast<unsigned>(*algebra_.position(out));
        if (comp.constant) ins.constants |= std::uint64_t{1} << bit;
        for (const auto& src : comp.sources)
          ins.sources.emplace_back(bit, src.arg - 1, static_cast<unsigned>(*algebra_.position(src.in)));
      }
    }
    code_.push_back(std::move(ins));
    return code_.size() - 1;
  }

  const FiniteAlgebra& algebra_;
  const std::vector<std::string>& vars_;
  std::vector<Instruction> code_;
};

}  // namespace

bool check_separation_bruteforce(const FiniteAlgebra& algebra, const Term& s, const Term& t, std::uint64_t limit) {
  auto count = assignment_count(algebra, s, t);
  if (!count || *count > limit)
    throw LimitExceeded("exhaustive check needs " + (count ? std::to_string(*count) : std::string("more than 2^63")) +
                        " assignments, limit is " + std::to_string(limit));
  const auto vars = joint_variables(s, t);
  const std::size_t dim = algebra.dimension();
  if (dim == 0) return false;  // one-element universe: everything is equal
  // count fits in 63 bits, so dim < 64 here.
  const std::uint64_t mask = (std::uint64_t{1} << dim) - 1;
  PackedProgram ps(algebra, s, vars);
  PackedProgram pt(algebra, t, vars);
  std::vector<std::uint64_t> values(vars.size());
  std::vector<std::uint64_t> scratch_s;
  std::vector<std::uint64_t> scratch_t;
  for (std::uint64_t code = 0; code < *count; ++code) {
    std::uint64_t bits = code;
    for (auto& v : values) {
      v = bits & mask;
      bits >>= dim;
    }
    if (ps.run(values, scratch_s) == pt.run(values, scratch_t)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Products

ProductAlgebra product(std::span<const FiniteAlgebra> factors, const Signature& sig) {
  std::vector<std::pair<std::size_t, Index>> tags;
  std::vector<Index> offsets;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (!(factors[f].signature() == sig))
      throw PreconditionError("factor " + std::to_string(f) + " has a different signature");
    offsets.push_back(static_cast<Index>(tags.size()));
    for (Index idx : factors[f].indices()) tags.emplace_back(f, idx);
  }
  std::vector<Index> indices(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i) indices[i] = static_cast<Index>(i);

  std::map<std::string, OperationDef> ops;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& factor = factors[f];
    auto renumber = [&](Index idx) { return static_cast<Index>(offsets[f] + *factor.position(idx)); };
    for (const auto& [name, def] : factor.operations()) {
      for (const auto& [out, comp] : def) {
        ComponentDef mapped;
        mapped.constant = comp.constant;
        for (const auto& src : comp.sources) mapped.sources.insert({src.arg, renumber(src.in)});
        ops[name][renumber(out)] = std::move(mapped);
      }
    }
  }
  return {FiniteAlgebra(sig, std::move(indices), std::move(ops)), std::move(tags)};
}

}  // namespace termsep
