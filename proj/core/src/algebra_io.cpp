#include "termsep/algebra_io.hpp"

#include <regex>

#include "termsep/errors.hpp"

namespace termsep {

std::string format_algebra(const FiniteAlgebra& algebra) {
  std::string out = "indices:";
  for (std::size_t i = 0; i < algebra.indices().size(); ++i)
    out += (i ? "," : " ") + std::to_string(algebra.indices()[i]);
  out += '\n';
  for (const auto& [name, def] : algebra.operations()) {
    for (const auto& [index, comp] : def) {
      const std::string lhs = name + "[" + std::to_string(index) + "] := ";
      if (comp.sources.empty()) {
        out += lhs + "1\n";
        continue;
      }
      bool first = true;
      for (const auto& src : comp.sources) {
        out += lhs + "x_" + std::to_string(src.arg) + "[" + std::to_string(src.in) + "]";
        if (first && comp.constant) out += " + 1";
        first = false;
        out += '\n';
      }
    }
  }
  return out;
}

namespace {

std::string_view strip(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Index to_index(const std::string& digits, std::size_t line) {
  try {
    unsigned long long v = std::stoull(digits);
    if (v > 0xffffffffULL) throw std::out_of_range("index");
    return static_cast<Index>(v);
  } catch (const std::exception&) {
    throw ParseError("index out of range: " + digits, 0, line);
  }
}

}  // namespace

FiniteAlgebra parse_algebra(std::string_view text, const Signature& sig) {
  static const std::regex kHeader(R"(indices\s*:\s*((?:\d+\s*(?:,\s*\d+\s*)*)?))");
  static const std::regex kLine(
      R"(([A-Za-z_][A-Za-z0-9_']*)\s*\[\s*(\d+)\s*\]\s*:=\s*(?:(1)|x_?(\d+)\s*\[\s*(\d+)\s*\](\s*\+\s*1)?))");

  std::optional<std::vector<Index>> indices;
  std::map<std::string, OperationDef> ops;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line(strip(raw));
    if (line.empty()) continue;

    std::smatch m;
    if (!indices) {
      if (!std::regex_match(line, m, kHeader)) throw ParseError("expected 'indices:' header", 0, line_no);
      indices.emplace();
      const std::string list = m[1].str();
      static const std::regex kNumber(R"(\d+)");
      for (auto it = std::sregex_iterator(list.begin(), list.end(), kNumber); it != std::sregex_iterator(); ++it)
        indices->push_back(to_index(it->str(), line_no));
      continue;
    }
    if (!std::regex_match(line, m, kLine)) throw ParseError("malformed assignment '" + line + "'", 0, line_no);

    const std::string op = m[1].str();
    auto arity = sig.arity(op);
    if (!arity) throw ParseError("unknown operation '" + op + "'", 0, line_no);
    auto& comp = ops[op][to_index(m[2].str(), line_no)];
    if (m[3].matched) {
      comp.constant = !comp.constant;
    } else {
      std::size_t arg = std::stoul(m[4].str());
      if (arg == 0 || arg > *arity)
        throw ParseError("operation '" + op + "' has no argument " + std::to_string(arg), 0, line_no);
      comp.toggle({arg, to_index(m[5].str(), line_no)});
      if (m[6].matched) comp.constant = !comp.constant;
    }
  }
  if (!indices) throw ParseError("missing 'indices:' header", 0, line_no);
  try {
    return FiniteAlgebra(sig, std::move(*indices), std::move(ops));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0, line_no);
  }
}

}  // namespace termsep
