#include "termsep/model.hpp"

#include <cctype>

#include "termsep/errors.hpp"

namespace termsep {

namespace {

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

}  // namespace

Sentence parse_sentence(std::string_view text, const Signature& sig) {
  Sentence out;
  std::map<std::string, std::size_t> arities;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t pos = skip_space(line, 0);
    if (pos == line.size()) continue;

    try {
      if (line.substr(pos, 2) == "!=") {
        pos += 2;
        Term lhs = parse_term_prefix(line, pos, sig);
        Term rhs = parse_term_prefix(line, pos, sig);
        if (pos != line.size()) throw ParseError("unexpected trailing input", pos);
        out.atoms.emplace_back(NegatedEquation{std::move(lhs), std::move(rhs)});
      } else if (line[pos] == '!') {
        pos = skip_space(line, pos + 1);
        std::size_t start = pos;
        while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_')) ++pos;
        std::string name(line.substr(start, pos - start));
        if (name.empty() || std::isdigit(static_cast<unsigned char>(name.front())))
          throw ParseError("expected a relation symbol", start);
        if (sig.contains(name)) throw ParseError("'" + name + "' is an operation, not a relation", start);
        std::vector<Term> args;
        pos = skip_space(line, pos);
        if (pos < line.size() && line[pos] == '(') {
          pos = skip_space(line, pos + 1);
          if (pos < line.size() && line[pos] == ')') {
            ++pos;
          } else {
            while (true) {
              args.push_back(parse_term_prefix(line, pos, sig));
              if (pos < line.size() && line[pos] == ',') {
                ++pos;
                continue;
              }
              if (pos < line.size() && line[pos] == ')') {
                ++pos;
                break;
              }
              throw ParseError("expected ',' or ')'", pos);
            }
          }
        }
        if (skip_space(line, pos) != line.size()) throw ParseError("unexpected trailing input", pos);
        auto [it, fresh] = arities.emplace(name, args.size());
        if (!fresh && it->second != args.size())
          throw ParseError("relation '" + name + "' used with arities " + std::to_string(it->second) + " and " +
                               std::to_string(args.size()),
                           start);
        out.atoms.emplace_back(NegatedRelation{std::move(name), std::move(args)});
      } else {
        throw ParseError("expected '!= s t' or '!R(...)'", pos);
      }
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), e.position(), line_no);
    }
  }
  return out;
}

std::uint64_t Model::universe_size() const {
  const std::size_t dim = product.algebra.dimension();
  return dim >= 64 ? 0 : std::uint64_t{1} << dim;
}

ModelResult finite_model(const Sentence& sentence, const Signature& sig) {
  Model model{product({}, sig), {}, {}};
  std::vector<FiniteAlgebra> algebras;
  for (std::size_t i = 0; i < sentence.atoms.size(); ++i) {
    const auto& atom = sentence.atoms[i];
    if (const auto* rel = std::get_if<NegatedRelation>(&atom)) {
      model.relations.emplace(rel->relation, rel->args.size());
      continue;
    }
    const auto& eq = std::get<NegatedEquation>(atom);
    auto result = separate(eq.lhs, eq.rhs, sig);
    if (auto* mgu = std::get_if<Unifiable>(&result)) return Inconsistent{i, std::move(*mgu)};
    auto& cert = std::get<SeparationCertificate>(result);
    algebras.push_back(cert.algebra);
    model.factors.push_back(std::move(cert));
  }
  model.product = product(algebras, sig);
  return model;
}

bool check_model(const Model& model, const Sentence& sentence) {
  for (const auto& atom : sentence.atoms) {
    if (const auto* eq = std::get_if<NegatedEquation>(&atom)) {
      if (!check_separation(model.product.algebra, eq->lhs, eq->rhs)) return false;
    } else if (!model.relations.count(std::get<NegatedRelation>(atom).relation)) {
      return false;
    }
  }
  return true;
}

bool check_model_bruteforce(const Model& model, const Sentence& sentence, std::uint64_t limit) {
  for (const auto& atom : sentence.atoms) {
    if (const auto* eq = std::get_if<NegatedEquation>(&atom)) {
      if (!check_separation_bruteforce(model.product.algebra, eq->lhs, eq->rhs, limit)) return false;
    } else if (!model.relations.count(std::get<NegatedRelation>(atom).relation)) {
      return false;
    }
  }
  return true;
}

}  // namespace termsep
