#include "termsep/term.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <sstream>

#include "termsep/errors.hpp"

namespace termsep {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), is_ident_char);
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void add_signature_item(Signature& sig, std::string_view item, std::size_t line, std::size_t col) {
  auto slash = item.rfind('/');
  if (slash == std::string_view::npos) throw ParseError("expected name/arity", col, line);
  auto name = trim(item.substr(0, slash));
  auto arity_text = trim(item.substr(slash + 1));
  if (!is_identifier(name)) throw ParseError("invalid operation name '" + std::string(name) + "'", col, line);
  if (arity_text.empty() ||
      !std::all_of(arity_text.begin(), arity_text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("invalid arity '" + std::string(arity_text) + "'", col + slash + 1, line);
  if (sig.contains(name)) throw ParseError("duplicate operation '" + std::string(name) + "'", col, line);
  sig.add(std::string(name), std::stoul(std::string(arity_text)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Signature

void Signature::add(std::string name, std::size_t arity) {
  if (!is_identifier(name)) throw PreconditionError("invalid operation name '" + name + "'");
  auto [it, inserted] = ops_.emplace(std::move(name), arity);
  if (!inserted) throw PreconditionError("duplicate operation '" + it->first + "'");
}

bool Signature::contains(std::string_view name) const { return ops_.find(name) != ops_.end(); }

std::optional<std::size_t> Signature::arity(std::string_view name) const {
  auto it = ops_.find(name);
  if (it == ops_.end()) return std::nullopt;
  return it->second;
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto body = trim(line);
    if (body.empty()) continue;
    add_signature_item(sig, body, line_no, static_cast<std::size_t>(body.data() - line.data()));
  }
  return sig;
}

Signature parse_signature_list(std::string_view text) {
  Signature sig;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find_first_of(", \t\n", pos);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(pos, end - pos);
    if (!item.empty()) add_signature_item(sig, item, 0, pos);
    pos = end + 1;
  }
  return sig;
}

std::string format_signature(const Signature& sig) {
  std::string out;
  for (const auto& [name, arity] : sig.operations()) out += name + "/" + std::to_string(arity) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  std::string symbol;
  bool variable = false;
  std::vector<Term> args;
  std::size_t size = 1;
  std::size_t depth = 0;
  std::size_t hash = 0;
};

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->hash = mix(std::hash<std::string>{}(name), 0x51);
  node->symbol = std::move(name);
  node->variable = true;
  return Term(std::move(node));
}

Term Term::apply(std::string op, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  std::size_t h = mix(std::hash<std::string>{}(op), args.size());
  for (const auto& a : args) {
    node->size += a.size();
    node->depth = std::max(node->depth, a.depth() + 1);
    h = mix(h, a.hash());
  }
  node->hash = h;
  node->symbol = std::move(op);
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::is_variable() const { return node_->variable; }
const std::string& Term::symbol() const { return node_->symbol; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::depth() const { return node_->depth; }
std::size_t Term::hash() const { return node_->hash; }

const Term& Term::arg(std::size_t one_based) const {
  if (one_based == 0 || one_based > node_->args.size())
    throw PathError("argument " + std::to_string(one_based) + " out of range for " + format_term(*this));
  return node_->args[one_based - 1];
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.size != y.size || x.variable != y.variable || x.symbol != y.symbol ||
      x.args.size() != y.args.size())
    return false;
  return std::equal(x.args.begin(), x.args.end(), y.args.begin());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (a.is_variable() != b.is_variable())
    return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.symbol() <=> b.symbol(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Paths

Path Path::operator/(const Path& tail) const {
  std::vector<Step> out = steps_;
  out.insert(out.end(), tail.steps_.begin(), tail.steps_.end());
  return Path(std::move(out));
}

Path Path::operator/(const Step& step) const {
  std::vector<Step> out = steps_;
  out.push_back(step);
  return Path(std::move(out));
}

Path Path::parent() const {
  if (steps_.empty()) throw PathError("the empty path has no parent");
  return Path(std::vector<Step>(steps_.begin(), steps_.end() - 1));
}

std::string format_path(const Path& p) {
  if (p.empty()) return "Λ";
  std::string out;
  for (const auto& s : p.steps()) {
    if (!out.empty()) out += '.';
    out += s.op + "_" + std::to_string(s.arg);
  }
  return out;
}

std::optional<Term> try_subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (const auto& step : p.steps()) {
    if (cur->is_variable() || cur->symbol() != step.op || step.arg == 0 || step.arg > cur->arity())
      return std::nullopt;
    cur = &cur->args()[step.arg - 1];
  }
  return *cur;
}

const Term& subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (const auto& step : p.steps()) {
    if (cur->is_variable() || cur->symbol() != step.op || step.arg == 0 || step.arg > cur->arity())
      throw PathError("path " + format_path(p) + " does not exist in " + format_term(t));
    cur = &cur->args()[step.arg - 1];
  }
  return *cur;
}

namespace {

void collect_occurrences(const Term& t, std::vector<Step>& prefix, std::vector<Occurrence>& out) {
  out.push_back({Path(prefix), t});
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back({t.symbol(), i + 1});
    collect_occurrences(t.args()[i], prefix, out);
    prefix.pop_back();
  }
}

void collect_matches(const Term& needle, const Term& t, std::vector<Step>& prefix, std::vector<Path>& out) {
  if (t.size() < needle.size()) return;
  if (t == needle) {
    out.emplace_back(prefix);
    return;  // a term cannot properly contain itself
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back({t.symbol(), i + 1});
    collect_matches(needle, t.args()[i], prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Occurrence> occurrences(const Term& t) {
  std::vector<Occurrence> out;
  out.reserve(t.size());
  std::vector<Step> prefix;
  collect_occurrences(t, prefix, out);
  return out;
}

std::vector<Path> find_subterm_paths(const Term& needle, const Term& haystack) {
  std::vector<Path> out;
  std::vector<Step> prefix;
  collect_matches(needle, haystack, prefix, out);
  return out;
}

bool is_subterm(const Term& needle, const Term& haystack) {
  if (haystack.size() < needle.size()) return false;
  if (haystack == needle) return true;
  for (const auto& a : haystack.args())
    if (is_subterm(needle, a)) return true;
  return false;
}

bool is_proper_subterm(const Term& needle, const Term& haystack) {
  return needle.size() < haystack.size() && is_subterm(needle, haystack);
}

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  auto walk = [&](auto&& self, const Term& u) -> void {
    if (u.is_variable()) {
      if (seen.insert(u.symbol()).second) out.push_back(u.symbol());
      return;
    }
    for (const auto& a : u.args()) self(self, a);
  };
  walk(walk, t);
  return out;
}

bool occurs(std::string_view var, const Term& t) {
  if (t.is_variable()) return t.symbol() == var;
  for (const auto& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void write_term(const Term& t, std::string& out) {
  out += t.symbol();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    write_term(t.args()[i], out);
  }
  out += ')';
}

void write_tree(const Term& t, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += t.symbol();
  out += '\n';
  for (const auto& a : t.args()) write_tree(a, depth + 1, out);
}

}  // namespace

std::string format_term(const Term& t) {
  std::string out;
  write_term(t, out);
  return out;
}

std::string render_tree(const Term& t) {
  std::string out;
  write_tree(t, 0, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << format_term(t); }
std::ostream& operator<<(std::ostream& os, const Path& p) { return os << format_path(p); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TermParser {
public:
  TermParser(std::string_view text, std::size_t pos, const Signature& sig) : text_(text), pos_(pos), sig_(sig) {}

  Term term() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) throw ParseError("expected a term, found end of input", pos_);
    if (!is_ident_start(text_[pos_]))
      throw ParseError(std::string("expected an identifier, found '") + text_[pos_] + "'", pos_);
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    bool has_parens = pos_ < text_.size() && text_[pos_] == '(';

    auto arity = sig_.arity(name);
    if (!arity) {
      if (has_parens) throw ParseError("unknown operation symbol '" + name + "'", start);
      return Term::variable(std::move(name));
    }

    std::vector<Term> args;
    if (has_parens) {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(term());
          skip_ws();
          if (pos_ >= text_.size()) throw ParseError("unterminated argument list of '" + name + "'", pos_);
          if (text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (text_[pos_] == ')') {
            ++pos_;
            break;
          }
          throw ParseError(std::string("expected ',' or ')', found '") + text_[pos_] + "'", pos_);
        }
      }
    }
    if (args.size() != *arity)
      throw ParseError("arity mismatch: '" + name + "' expects " + std::to_string(*arity) + " argument(s), got " +
                           std::to_string(args.size()),
                       start);
    return Term::apply(std::move(name), std::move(args));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::size_t pos() const { return pos_; }

private:
  std::string_view text_;
  std::size_t pos_;
  const Signature& sig_;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) {
  TermParser p(text, 0, sig);
  Term t = p.term();
  p.skip_ws();
  if (p.pos() != text.size())
    throw ParseError(std::string("unexpected trailing input '") + text[p.pos()] + "'", p.pos());
  return t;
}

Term parse_term_prefix(std::string_view text, std::size_t& pos, const Signature& sig) {
  TermParser p(text, pos, sig);
  Term t = p.term();
  p.skip_ws();
  pos = p.pos();
  return t;
}

}  // namespace termsep
