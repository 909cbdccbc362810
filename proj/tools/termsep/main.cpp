#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "termsep/algebra_io.hpp"
#include "termsep/errors.hpp"
#include "termsep/model.hpp"
#include "termsep/separator.hpp"

namespace {

using namespace termsep;

enum Exit : int { kOk = 0, kNo = 1, kInput = 2, kInternal = 3 };

struct RunConfig {
  std::string sig_path;
  std::string ops;
  std::uint64_t limit = kDefaultBruteForceLimit;
  std::string format = "text";
  bool trace = false;
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  bool inject_fault = false;
  std::vector<std::string> terms;
  std::string file;
};

// Either human-readable prose or `key=value` records, one per line.
class Report {
public:
  explicit Report(bool records) : records_(records) {}

  bool records() const { return records_; }
  void text(const std::string& line) {
    if (!records_) std::cout << line << '\n';
  }
  void record(const std::string& key, const std::string& value) {
    if (records_) std::cout << key << '=' << value << '\n';
  }
  void block(const std::string& key, const std::string& body) {
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) record(key, line);
  }

private:
  bool records_;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Signature load_signature(const RunConfig& cfg) {
  if (!cfg.sig_path.empty()) return parse_signature(read_file(cfg.sig_path));
  if (!cfg.ops.empty()) return parse_signature_list(cfg.ops);
  return corpus::default_signature();
}

std::string indent(const std::string& body, const std::string& pad = "  ") {
  std::string out;
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) out += (out.empty() ? "" : "\n") + pad + line;
  return out;
}

void print_mgu(Report& out, const Unifiable& u) {
  out.text("UNIFIABLE");
  out.text("mgu: " + format_term(u.unifier));
  out.text("substitution: " + format_substitution(u.subst));
  out.record("verdict", "UNIFIABLE");
  out.record("mgu", format_term(u.unifier));
  for (const auto& [var, value] : u.subst) out.record("bind." + var, format_term(value));
}

void print_witness(Report& out, const Failed& f, const Term& s, const Term& t) {
  out.text("NOT UNIFIABLE");
  out.record("verdict", "NOT UNIFIABLE");
  if (const auto* w = std::get_if<ConflictWitness>(&f.witness)) {
    auto replayed = replay(w->derivation, s, t);
    out.text("conflict: " + format_statement(w->stmt));
    out.text("deduction:");
    out.text(indent(format_deduction(w->derivation)));
    out.text(std::string("replay: ") + (replayed ? "FAIL (" + *replayed + ")" : "OK"));
    out.record("witness", "conflict");
    out.record("conflict", format_statement(w->stmt));
    out.block("deduction", format_deduction(w->derivation));
    out.record("replay", replayed ? "FAIL" : "OK");
    return;
  }
  const auto& cyc = std::get<CycleWitness>(f.witness);
  auto checked = check_cycle_witness(cyc, close(s, t));
  out.text("cycle: " + format_cycle(cyc));
  out.record("witness", "cycle");
  out.record("cycle", format_cycle(cyc));
  for (std::size_t i = 0; i < cyc.links.size(); ++i) {
    const auto& link = cyc.links[i];
    std::string head = "link " + std::to_string(i + 1) + ": " + format_term(link.p) + " ≡ " + format_term(link.q) +
                       ", occurring at " + format_path(link.sigma);
    out.text(head);
    out.record("link", format_term(link.p) + " ≡ " + format_term(link.q) + " @ " + format_path(link.sigma));
    if (link.p != link.q) {
      out.text(indent(format_deduction(link.derivation), "    "));
      out.block("deduction." + std::to_string(i + 1), format_deduction(link.derivation));
    }
  }
  out.text(std::string("replay: ") + (checked ? "FAIL (" + *checked + ")" : "OK"));
  out.record("replay", checked ? "FAIL" : "OK");
}

void trace_closure(const Term& s, const Term& t) {
  Closure c = close(s, t);
  std::cerr << "closure classes:\n";
  for (const auto& cls : c.nontrivial_classes()) {
    std::string line;
    for (const auto& m : cls) line += (line.empty() ? "{" : ", ") + format_term(m);
    std::cerr << "  " << line << "}\n";
  }
}

int cmd_unify(const RunConfig& cfg, Report& out) {
  Signature sig = load_signature(cfg);
  Term s = parse_term(cfg.terms.at(0), sig);
  Term t = parse_term(cfg.terms.at(1), sig);
  if (cfg.trace) trace_closure(s, t);
  UnifyOutcome outcome = unify(s, t);
  if (const auto* u = std::get_if<Unifiable>(&outcome)) {
    print_mgu(out, *u);
    return kOk;
  }
  print_witness(out, std::get<Failed>(outcome), s, t);
  return kNo;
}

// Runs the exhaustive check when it fits under the limit.
std::string bruteforce_verdict(const FiniteAlgebra& a, const Term& s, const Term& t, std::uint64_t limit, bool& ok) {
  auto n = assignment_count(a, s, t);
  if (!n || *n > limit) {
    ok = true;
    return n ? "SKIPPED (" + std::to_string(*n) + " assignments > limit " + std::to_string(limit) + ")"
             : std::string("SKIPPED (too many assignments)");
  }
  ok = check_separation_bruteforce(a, s, t, limit);
  return std::string(ok ? "PASS" : "FAIL") + " (" + std::to_string(*n) + " assignments)";
}

void trace_components(const FiniteAlgebra& a, const Term& s, const Term& t) {
  auto fs = eval_affine(a, s);
  auto ft = eval_affine(a, t);
  for (Index k : a.indices())
    std::cerr << "  s[" << k << "] = " << format_affine(fs.at(k)) << ",  t[" << k << "] = " << format_affine(ft.at(k))
              << '\n';
}

int cmd_separate(const RunConfig& cfg, Report& out) {
  Signature sig = load_signature(cfg);
  Term s = parse_term(cfg.terms.at(0), sig);
  Term t = parse_term(cfg.terms.at(1), sig);
  SeparationResult result = separate(s, t, sig);
  if (const auto* u = std::get_if<Unifiable>(&result)) {
    out.text("terms unify; no separating algebra exists");
    print_mgu(out, *u);
    return kOk;
  }
  const auto& cert = std::get<SeparationCertificate>(result);
  bool brute_ok = true;
  std::string brute = bruteforce_verdict(cert.algebra, s, t, cfg.limit, brute_ok);
  bool symbolic = check_separation(cert.algebra, s, t);

  out.text("NOT UNIFIABLE");
  out.text("case: " + to_string(cert.kind));
  out.text("witness: " + cert.witness);
  if (cert.attempts > 1) out.text("cycle selections tried: " + std::to_string(cert.attempts));
  out.text("L:");
  out.text(indent(format_sum(cert.sum)));
  out.text("algebra:");
  out.text(indent(format_algebra(cert.algebra)));
  out.text("separating component: " + std::to_string(cert.component));
  out.text(std::string("symbolic: ") + (symbolic ? "PASS" : "FAIL"));
  out.text("bruteforce: " + brute);

  out.record("verdict", "NOT UNIFIABLE");
  out.record("case", to_string(cert.kind));
  out.record("witness", cert.witness);
  out.record("attempts", std::to_string(cert.attempts));
  for (const auto& tr : cert.sum) out.record("summand", format_transformation(tr));
  out.block("algebra", format_algebra(cert.algebra));
  out.record("component", std::to_string(cert.component));
  out.record("symbolic", symbolic ? "PASS" : "FAIL");
  out.record("bruteforce", brute);

  if (cfg.trace) trace_components(cert.algebra, s, t);
  if (!symbolic || !brute_ok) return kInternal;
  return kNo;
}

int cmd_verify(const RunConfig& cfg, Report& out) {
  Signature sig = load_signature(cfg);
  FiniteAlgebra algebra = parse_algebra(read_file(cfg.file), sig);
  Term s = parse_term(cfg.terms.at(0), sig);
  Term t = parse_term(cfg.terms.at(1), sig);
  auto component = separating_component(algebra, s, t);
  bool brute_ok = true;
  std::string brute = bruteforce_verdict(algebra, s, t, cfg.limit, brute_ok);
  bool pass = component.has_value() && brute_ok;

  out.text(std::string("symbolic: ") + (component ? "PASS (component " + std::to_string(*component) + ")" : "FAIL"));
  out.text("bruteforce: " + brute);
  out.text(pass ? "PASS" : "FAIL");
  out.record("symbolic", component ? "PASS" : "FAIL");
  if (component) out.record("component", std::to_string(*component));
  out.record("bruteforce", brute);
  out.record("result", pass ? "PASS" : "FAIL");
  if (cfg.trace) trace_components(algebra, s, t);
  return pass ? kOk : kNo;
}

int cmd_model(const RunConfig& cfg, Report& out) {
  Signature sig = load_signature(cfg);
  Sentence sentence = parse_sentence(read_file(cfg.file), sig);
  ModelResult result = finite_model(sentence, sig);
  if (const auto* bad = std::get_if<Inconsistent>(&result)) {
    const auto& eq = std::get<NegatedEquation>(sentence.atoms[bad->atom]);
    std::string atom = "!= " + format_term(eq.lhs) + " " + format_term(eq.rhs);
    out.text("INCONSISTENT");
    out.text("atom " + std::to_string(bad->atom + 1) + ": " + atom);
    out.text("unifier: " + format_substitution(bad->mgu.subst));
    out.record("verdict", "INCONSISTENT");
    out.record("atom", std::to_string(bad->atom + 1));
    out.record("unifier", format_substitution(bad->mgu.subst));
    return kNo;
  }
  const auto& model = std::get<Model>(result);
  bool symbolic = check_model(model, sentence);
  std::string brute;
  bool brute_ok = true;
  try {
    brute_ok = check_model_bruteforce(model, sentence, cfg.limit);
    brute = brute_ok ? "PASS" : "FAIL";
  } catch (const LimitExceeded&) {
    brute = "SKIPPED (over limit " + std::to_string(cfg.limit) + ")";
  }
  const std::string universe =
      model.universe_size() ? std::to_string(model.universe_size()) : "2^" + std::to_string(model.product.algebra.dimension());

  out.text("MODEL");
  out.text("universe: GF(2)^" + std::to_string(model.product.algebra.dimension()) + " (" + universe + (universe == "1" ? " element)" : " elements)"));
  out.text("algebra:");
  out.text(indent(format_algebra(model.product.algebra)));
  for (const auto& [name, arity] : model.relations)
    out.text("relation " + name + "/" + std::to_string(arity) + " = {} (false everywhere)");
  out.text(std::string("symbolic: ") + (symbolic ? "PASS" : "FAIL"));
  out.text("bruteforce: " + brute);

  out.record("verdict", "MODEL");
  out.record("universe", universe);
  out.block("algebra", format_algebra(model.product.algebra));
  for (const auto& [name, arity] : model.relations) out.record("relation." + name, std::to_string(arity) + " empty");
  out.record("symbolic", symbolic ? "PASS" : "FAIL");
  out.record("bruteforce", brute);
  return symbolic && brute_ok ? kOk : kInternal;
}

int cmd_corpus(const RunConfig& cfg, Report& out) {
  corpus::CorpusOptions opts;
  opts.sig = load_signature(cfg);
  opts.count = cfg.count;
  opts.seed = cfg.seed;
  opts.limit = cfg.limit;
  opts.inject_fault = cfg.inject_fault;
  auto rep = corpus::run_corpus(opts);

  const std::vector<std::pair<std::string, std::size_t>> counts = {
      {"pairs", rep.pairs},
      {"unifiable", rep.unifiable},
      {"separated", rep.separated},
      {"variable", rep.variable_case},
      {"subterm", rep.subterm_case},
      {"conflict", rep.conflict_case},
      {"cycle", rep.cycle_case},
      {"fallbacks", rep.fallbacks},
      {"bruteforce", rep.bruteforce_checked},
      {"mismatches", rep.mismatches()},
  };
  for (const auto& [key, n] : counts) {
    out.text(key + ": " + std::to_string(n));
    out.record(key, std::to_string(n));
  }
  for (const auto& cx : rep.counterexamples) {
    std::string line = "#" + std::to_string(cx.index) + " " + format_term(cx.s) + " vs " + format_term(cx.t) + ": " + cx.reason;
    out.text("counterexample " + line);
    out.record("counterexample", line);
  }
  out.text(rep.clean() ? "CLEAN" : "MISMATCH");
  out.record("result", rep.clean() ? "CLEAN" : "MISMATCH");
  return rep.clean() ? kOk : kNo;
}

int cmd_render(const RunConfig& cfg, Report& out) {
  Signature sig = load_signature(cfg);
  for (const auto& text : cfg.terms) {
    Term t = parse_term(text, sig);
    out.text(indent(render_tree(t), ""));
    out.block("tree", render_tree(t));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide unifiability of first-order terms and build separating GF(2) algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--sig", cfg.sig_path, "Signature file, one name/arity per line");
  app.add_option("--ops", cfg.ops, "Inline signature such as f/3,g/2,c/0 (default f/3,g/2,h/1,c/0)");
  app.add_option("--limit", cfg.limit, "Maximum assignments for exhaustive checks")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "records"}));
  app.add_flag("--trace", cfg.trace, "Print closure classes or component forms to stderr");
  app.add_option("--seed", cfg.seed, "Seed for the corpus command");

  auto* unify_cmd = app.add_subcommand("unify", "Unify two terms or explain why they do not unify");
  unify_cmd->add_option("s", cfg.terms, "Terms s and t")->required()->expected(2);

  auto* separate_cmd = app.add_subcommand("separate", "Build a finite algebra in which s and t never agree");
  separate_cmd->add_option("s", cfg.terms, "Terms s and t")->required()->expected(2);

  auto* verify_cmd = app.add_subcommand("verify", "Check that an algebra separates two terms");
  verify_cmd->add_option("algebra", cfg.file, "Algebra file ('-' for stdin)")->required();
  verify_cmd->add_option("s", cfg.terms, "Terms s and t")->required()->expected(2);

  auto* model_cmd = app.add_subcommand("model", "Build a finite model of a conjunction of negated atoms");
  model_cmd->add_option("sentence", cfg.file, "Sentence file ('-' for stdin)")->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "Cross-check random term pairs against a Robinson unifier");
  corpus_cmd->add_option("--count", cfg.count, "Number of pairs");
  corpus_cmd->add_flag("--inject-fault", cfg.inject_fault)->group("");

  auto* render_cmd = app.add_subcommand("render", "Print terms as indented trees");
  render_cmd->add_option("terms", cfg.terms, "Terms")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  Report out(cfg.format == "records");
  try {
    if (*unify_cmd) return cmd_unify(cfg, out);
    if (*separate_cmd) return cmd_separate(cfg, out);
    if (*verify_cmd) return cmd_verify(cfg, out);
    if (*model_cmd) return cmd_model(cfg, out);
    if (*corpus_cmd) return cmd_corpus(cfg, out);
    if (*render_cmd) return cmd_render(cfg, out);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const LimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
