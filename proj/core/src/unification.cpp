#include "termsep/unification.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "termsep/errors.hpp"

namespace termsep {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::pair<std::size_t, std::size_t> edge_key(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

// ---------------------------------------------------------------------------
// Statements and derivations

Statement::Statement(Term a, Term b) : left_(std::move(a)), right_(std::move(b)) {
  if (left_ == right_) throw PreconditionError("trivial statement " + format_term(left_) + " ≡ " + format_term(right_));
  if (right_ < left_) std::swap(left_, right_);
}

std::string format_statement(const Statement& st) { return format_term(st.left()) + " ≡ " + format_term(st.right()); }

std::size_t Derivation::statement_count() const {
  std::set<Statement> seen;
  std::set<const Derivation*> visited;
  auto walk = [&](auto&& self, const Derivation& d) -> void {
    if (!visited.insert(&d).second) return;
    seen.insert(d.conclusion);
    for (const auto& p : d.premises) self(self, *p);
  };
  walk(walk, *this);
  return seen.size();
}

std::optional<std::string> replay(const Derivation& d, const Term& s, const Term& t) {
  switch (d.rule) {
    case Derivation::Rule::Base:
      if (s == t || d.conclusion != Statement(s, t))
        return "base statement " + format_statement(d.conclusion) + " is not the root statement";
      if (!d.premises.empty()) return "base statement with premises";
      return std::nullopt;

    case Derivation::Rule::Decompose: {
      if (d.premises.size() != 1) return "decompose needs exactly one premise";
      if (d.path.empty()) return "decompose along the empty path";
      const auto& parent = d.premise().conclusion;
      auto a = try_subterm_at(parent.left(), d.path);
      auto b = try_subterm_at(parent.right(), d.path);
      if (!a || !b) return "path " + format_path(d.path) + " missing in " + format_statement(parent);
      if (*a == *b || Statement(*a, *b) != d.conclusion)
        return "decompose of " + format_statement(parent) + " at " + format_path(d.path) + " does not give " +
               format_statement(d.conclusion);
      return replay(d.premise(), s, t);
    }

    case Derivation::Rule::Transitive: {
      if (d.premises.size() < 2) return "transitive chain shorter than two";
      bool chained = false;
      for (const Term* start : {&d.conclusion.left(), &d.conclusion.right()}) {
        Term cur = *start;
        bool ok = true;
        for (const auto& p : d.premises) {
          if (p->conclusion.left() == cur) {
            cur = p->conclusion.right();
          } else if (p->conclusion.right() == cur) {
            cur = p->conclusion.left();
          } else {
            ok = false;
            break;
          }
        }
        if (ok && cur != *start && d.conclusion.mentions(cur)) {
          chained = true;
          break;
        }
      }
      if (!chained) return "transitive chain does not connect " + format_statement(d.conclusion);
      for (const auto& p : d.premises)
        if (auto err = replay(*p, s, t)) return err;
      return std::nullopt;
    }
  }
  return "unknown rule";
}

std::string format_deduction(const Derivation& d) {
  std::map<Statement, std::size_t> number;
  std::ostringstream out;
  auto emit = [&](auto&& self, const Derivation& node) -> std::size_t {
    if (auto it = number.find(node.conclusion); it != number.end()) return it->second;
    std::vector<std::size_t> refs;
    for (const auto& p : node.premises) refs.push_back(self(self, *p));
    std::size_t n = number.size() + 1;
    number.emplace(node.conclusion, n);
    out << "  " << n << ". " << format_statement(node.conclusion) << "    [";
    switch (node.rule) {
      case Derivation::Rule::Base:
        out << "base";
        break;
      case Derivation::Rule::Decompose:
        out << "decompose " << refs.front() << " at " << format_path(node.path);
        break;
      case Derivation::Rule::Transitive:
        out << "transitive";
        for (std::size_t i = 0; i < refs.size(); ++i) out << (i ? ", " : " ") << refs[i];
        break;
    }
    out << "]\n";
    return n;
  };
  emit(emit, d);
  return out.str();
}

// ---------------------------------------------------------------------------
// Closure

std::size_t Closure::id(const Term& u) const {
  auto it = ids_.find(u);
  if (it == ids_.end()) throw PreconditionError(format_term(u) + " is not a subterm of either side");
  return it->second;
}

std::size_t Closure::root(std::size_t i) const { return class_root_.at(i); }

bool Closure::equivalent(const Term& a, const Term& b) const {
  if (a == b) return true;
  if (!contains(a) || !contains(b)) return false;
  return root(id(a)) == root(id(b));
}

std::size_t Closure::class_count() const {
  std::set<std::size_t> roots(class_root_.begin(), class_root_.end());
  return roots.size();
}

std::vector<std::vector<Term>> Closure::classes() const {
  std::map<std::size_t, std::vector<Term>> by_root;
  for (std::size_t i = 0; i < terms_.size(); ++i) by_root[class_root_[i]].push_back(terms_[i]);
  std::vector<std::vector<Term>> out;
  for (auto& [r, members] : by_root) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::vector<std::vector<Term>> Closure::nontrivial_classes() const {
  auto all = classes();
  std::erase_if(all, [](const auto& c) { return c.size() < 2; });
  return all;
}

std::vector<Term> Closure::class_members(const Term& u) const {
  std::size_t r = root(id(u));
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (class_root_[i] == r) out.push_back(terms_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Statement> Closure::merged_statements() const {
  std::vector<Statement> out;
  for (auto [a, b] : edge_order_) out.emplace_back(terms_[a], terms_[b]);
  return out;
}

std::vector<std::size_t> Closure::forest_path(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> up_a;
  std::map<std::size_t, std::size_t> index_in_a;
  for (std::size_t cur = a; cur != npos; cur = forest_parent_[cur]) {
    index_in_a.emplace(cur, up_a.size());
    up_a.push_back(cur);
  }
  std::vector<std::size_t> up_b;
  std::size_t cur = b;
  while (cur != npos && !index_in_a.count(cur)) {
    up_b.push_back(cur);
    cur = forest_parent_[cur];
  }
  if (cur == npos)
    throw PreconditionError(format_term(terms_[a]) + " and " + format_term(terms_[b]) + " are not equivalent");
  std::vector<std::size_t> path(up_a.begin(), up_a.begin() + static_cast<std::ptrdiff_t>(index_in_a[cur]) + 1);
  path.insert(path.end(), up_b.rbegin(), up_b.rend());
  return path;
}

std::shared_ptr<const Derivation> Closure::edge_derivation(std::size_t a, std::size_t b) const {
  return edges_.at(edge_key(a, b));
}

std::shared_ptr<const Derivation> Closure::explain(std::size_t a, std::size_t b) const {
  auto nodes = forest_path(a, b);
  if (nodes.size() < 2) throw PreconditionError("no derivation for a trivial statement");
  if (nodes.size() == 2) return edge_derivation(nodes[0], nodes[1]);
  auto d = std::make_shared<Derivation>(
      Derivation{Derivation::Rule::Transitive, Statement(terms_[a], terms_[b]), Path{}, {}});
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) d->premises.push_back(edge_derivation(nodes[i], nodes[i + 1]));
  return d;
}

Derivation Closure::derive(const Statement& st) const {
  if (!contains(st.left()) || !contains(st.right()))
    throw PreconditionError("statement " + format_statement(st) + " mentions a term outside the closure");
  return *explain(id(st.left()), id(st.right()));
}

Closure close(const Term& s, const Term& t) {
  Closure c(s, t);
  std::vector<std::vector<std::size_t>> children;

  auto intern = [&](auto&& self, const Term& u) -> std::size_t {
    if (auto it = c.ids_.find(u); it != c.ids_.end()) return it->second;
    std::size_t id = c.terms_.size();
    c.ids_.emplace(u, id);
    c.terms_.push_back(u);
    children.emplace_back();
    std::vector<std::size_t> kids;
    for (const auto& a : u.args()) kids.push_back(self(self, a));
    children[id] = std::move(kids);
    return id;
  };
  const std::size_t sid = intern(intern, s);
  const std::size_t tid = intern(intern, t);

  const std::size_t n = c.terms_.size();
  std::vector<std::size_t> uf(n);
  std::vector<std::size_t> class_size(n, 1);
  for (std::size_t i = 0; i < n; ++i) uf[i] = i;
  auto find = [&](std::size_t x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };

  // One application per head symbol represents each class for decomposition.
  using Head = std::pair<std::string, std::size_t>;
  std::vector<std::map<Head, std::size_t>> heads(n);
  for (std::size_t i = 0; i < n; ++i)
    if (c.terms_[i].is_application()) heads[i].emplace(Head{c.terms_[i].symbol(), c.terms_[i].arity()}, i);

  c.forest_parent_.assign(n, npos);

  struct Pending {
    std::size_t a;
    std::size_t b;
    Closure::Justification why;
  };
  std::deque<Pending> work;
  if (sid != tid) work.push_back({sid, tid, {}});

  while (!work.empty()) {
    Pending item = work.front();
    work.pop_front();
    std::size_t ra = find(item.a);
    std::size_t rb = find(item.b);
    if (ra == rb) continue;

    Statement conclusion(c.terms_[item.a], c.terms_[item.b]);
    std::shared_ptr<const Derivation> proof;
    if (item.why.base) {
      proof = std::make_shared<Derivation>(Derivation{Derivation::Rule::Base, conclusion, Path{}, {}});
    } else {
      auto parent = c.explain(item.why.parent_a, item.why.parent_b);
      Step step{c.terms_[item.why.parent_a].symbol(), item.why.arg};
      if (parent->rule == Derivation::Rule::Decompose) {
        proof = std::make_shared<Derivation>(
            Derivation{Derivation::Rule::Decompose, conclusion, parent->path / step, {parent->premises.front()}});
      } else {
        proof = std::make_shared<Derivation>(
            Derivation{Derivation::Rule::Decompose, conclusion, Path({step}), {parent}});
      }
    }
    c.edges_.emplace(edge_key(item.a, item.b), std::move(proof));
    c.edge_order_.push_back({item.a, item.b});

    // Re-root item.a's proof tree at item.a, then hang it below item.b.
    std::size_t prev = npos;
    for (std::size_t cur = item.a; cur != npos;) {
      std::size_t next = c.forest_parent_[cur];
      c.forest_parent_[cur] = prev;
      prev = cur;
      cur = next;
    }
    c.forest_parent_[item.a] = item.b;

    if (class_size[ra] < class_size[rb]) std::swap(ra, rb);
    uf[rb] = ra;
    class_size[ra] += class_size[rb];
    for (const auto& [head, app] : heads[rb]) {
      auto it = heads[ra].find(head);
      if (it == heads[ra].end()) {
        heads[ra].emplace(head, app);
        continue;
      }
      std::size_t keep = it->second;
      for (std::size_t i = 0; i < head.second; ++i)
        work.push_back({children[keep][i], children[app][i], {false, keep, app, i + 1}});
    }
    heads[rb].clear();
  }

  c.class_root_.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.class_root_[i] = find(i);
  return c;
}

// ---------------------------------------------------------------------------
// Failure checks

namespace {

struct OccurrenceKey {
  int host;  // 0 for s, 1 for t
  Path path;
  friend auto operator<=>(const OccurrenceKey&, const OccurrenceKey&) = default;
};

OccurrenceKey first_occurrence(const Term& u, const Term& s, const Term& t) {
  if (auto ps = find_subterm_paths(u, s); !ps.empty()) return {0, ps.front()};
  if (auto pt = find_subterm_paths(u, t); !pt.empty()) return {1, pt.front()};
  return {2, Path{}};
}

}  // namespace

std::optional<ConflictWitness> check_homogeneous(const Closure& c) {
  using Key = std::tuple<std::size_t, OccurrenceKey, OccurrenceKey>;
  std::optional<ConflictWitness> best;
  std::optional<Key> best_key;
  for (const auto& members : c.classes()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Term& a = members[i];
      if (a.is_variable()) continue;
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Term& b = members[j];
        if (b.is_variable() || (a.symbol() == b.symbol() && a.arity() == b.arity())) continue;
        Statement st(a, b);
        Derivation d = c.derive(st);
        auto ka = first_occurrence(st.left(), c.s(), c.t());
        auto kb = first_occurrence(st.right(), c.s(), c.t());
        if (kb < ka) std::swap(ka, kb);
        Key key{d.statement_count(), ka, kb};
        if (!best_key || key < *best_key) {
          best_key = key;
          best = ConflictWitness{st, std::move(d)};
        }
      }
    }
  }
  return best;
}

namespace {

struct LinkOption {
  Term q;      // member of the source class
  Term p;      // member of the target class containing q
  Path sigma;  // nonempty path of q in p
  std::size_t q_depth;
};

}  // namespace

std::vector<CycleWitness> cycle_candidates(const Closure& c, std::size_t limit, std::size_t slack) {
  const auto classes = c.classes();
  const std::size_t k = classes.size();
  std::unordered_map<Term, std::size_t> class_of;
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& m : classes[i]) class_of.emplace(m, i);

  std::unordered_map<Term, std::size_t> deepest;
  for (const Term* host : {&c.s(), &c.t()})
    for (const auto& occ : occurrences(*host)) {
      auto& d = deepest[occ.subterm];
      d = std::max(d, occ.path.size());
    }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<LinkOption>> options;
  std::vector<std::set<std::size_t>> succ(k);
  for (const auto& p : c.universe()) {
    for (auto& occ : occurrences(p)) {
      if (occ.path.empty()) continue;
      std::size_t from = class_of.at(occ.subterm);
      std::size_t to = class_of.at(p);
      succ[from].insert(to);
      options[{from, to}].push_back({occ.subterm, p, std::move(occ.path), deepest[occ.subterm]});
    }
  }
  for (auto& [key, opts] : options)
    std::stable_sort(opts.begin(), opts.end(), [](const auto& a, const auto& b) { return a.q_depth > b.q_depth; });

  // Shortest cycle length over the class graph.
  std::size_t shortest = npos;
  for (std::size_t start = 0; start < k; ++start) {
    std::vector<std::size_t> dist(k, npos);
    std::deque<std::size_t> queue{start};
    dist[start] = 0;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : succ[u]) {
        if (v == start) shortest = std::min(shortest, dist[u] + 1);
        if (dist[v] == npos) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  if (shortest == npos || limit == 0) return {};

  constexpr std::size_t kMaxClassCycles = 256;
  constexpr std::size_t kMaxCombosPerCycle = 4096;
  const std::size_t longest = shortest + slack;

  // Simple class cycles, each listed once starting from its smallest class.
  std::vector<std::vector<std::size_t>> class_cycles;
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(k, false);
  auto dfs = [&](auto&& self, std::size_t start, std::size_t u) -> void {
    if (class_cycles.size() >= kMaxClassCycles) return;
    for (std::size_t v : succ[u]) {
      if (v == start && stack.size() >= shortest) {
        class_cycles.push_back(stack);
      } else if (v > start && !on_stack[v] && stack.size() < longest) {
        stack.push_back(v);
        on_stack[v] = true;
        self(self, start, v);
        on_stack[v] = false;
        stack.pop_back();
      }
    }
  };
  for (std::size_t start = 0; start < k; ++start) {
    stack = {start};
    on_stack[start] = true;
    dfs(dfs, start, start);
    on_stack[start] = false;
  }

  struct Draft {
    std::vector<const LinkOption*> edges;  // edge i leaves class i of the cycle
    std::size_t score;
    std::string text;
  };
  std::vector<Draft> drafts;
  for (const auto& cyc : class_cycles) {
    const std::size_t m = cyc.size();
    std::vector<const std::vector<LinkOption>*> per_edge;
    for (std::size_t i = 0; i < m; ++i) per_edge.push_back(&options.at({cyc[i], cyc[(i + 1) % m]}));
    std::vector<const LinkOption*> chosen(m);
    std::size_t combos = 0;
    auto pick = [&](auto&& self, std::size_t i) -> void {
      if (combos >= kMaxCombosPerCycle) return;
      if (i == m) {
        ++combos;
        std::size_t score = 0;
        std::string text;
        for (std::size_t j = 0; j < m; ++j) {
          const Term& p = chosen[(j + m - 1) % m]->p;
          const Term& q = chosen[j]->q;
          if (p == q) return;
          score += chosen[j]->q_depth;
          text += format_term(p) + "~" + format_term(q) + "@" + format_path(chosen[j]->sigma) + ";";
        }
        drafts.push_back({chosen, score, std::move(text)});
        return;
      }
      for (const auto& opt : *per_edge[i]) {
        chosen[i] = &opt;
        self(self, i + 1);
      }
    };
    pick(pick, 0);
  }

  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    if (a.score != b.score) return a.score > b.score;
    return a.text < b.text;
  });

  std::vector<CycleWitness> out;
  for (const auto& draft : drafts) {
    if (out.size() >= limit) break;
    const std::size_t m = draft.edges.size();
    std::vector<CycleLink> links;
    for (std::size_t j = 0; j < m; ++j) {
      const Term& p = draft.edges[(j + m - 1) % m]->p;
      const Term& q = draft.edges[j]->q;
      links.push_back({p, q, draft.edges[j]->sigma, c.derive(Statement(p, q))});
    }
    auto first = std::min_element(links.begin(), links.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
    std::rotate(links.begin(), first, links.end());
    out.push_back(CycleWitness{std::move(links), draft.score});
  }
  return out;
}

std::optional<CycleWitness> check_acyclic(const Closure& c) {
  auto found = cycle_candidates(c, 1, 0);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

std::string format_cycle(const CycleWitness& w) {
  std::string out;
  for (const auto& link : w.links) out += format_term(link.p) + " ≺ ";
  if (!w.links.empty()) out += format_term(w.links.front().p);
  return out;
}

std::optional<std::string> check_cycle_witness(const CycleWitness& w, const Closure& c) {
  const std::size_t m = w.links.size();
  if (m == 0) return "empty cycle";
  for (std::size_t i = 0; i < m; ++i) {
    const auto& link = w.links[i];
    const auto& next = w.links[(i + 1) % m];
    if (link.p == link.q) return "trivial link " + format_term(link.p);
    if (!c.equivalent(link.p, link.q)) return "link " + std::to_string(i + 1) + " sides are not equivalent";
    if (link.sigma.empty()) return "link " + std::to_string(i + 1) + " has an empty path";
    auto found = try_subterm_at(next.p, link.sigma);
    if (!found || *found != link.q)
      return format_term(link.q) + " is not at " + format_path(link.sigma) + " in " + format_term(next.p);
    if (link.derivation.conclusion != link.stmt()) return "link " + std::to_string(i + 1) + " derivation mismatch";
    if (auto err = replay(link.derivation, c.s(), c.t())) return err;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Most general unifier

Term apply(const Substitution& subst, const Term& t) {
  if (t.is_variable()) {
    auto it = subst.find(t.symbol());
    return it == subst.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(apply(subst, a));
  return Term::apply(t.symbol(), std::move(args));
}

std::string format_substitution(const Substitution& subst) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : subst) {
    if (!first) out += ", ";
    first = false;
    out += var + " ↦ " + format_term(value);
  }
  return out + "}";
}

namespace {

Unifiable read_mgu(const Closure& c) {
  const auto classes = c.classes();
  std::unordered_map<Term, std::size_t> class_of;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (const auto& m : classes[i]) class_of.emplace(m, i);

  // Representative: an application if the class has one, else its smallest variable.
  std::vector<const Term*> rep(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    rep[i] = &classes[i].front();
    for (const auto& m : classes[i])
      if (m.is_application()) {
        rep[i] = &m;
        break;
      }
  }

  std::vector<std::optional<Term>> memo(classes.size());
  std::vector<bool> active(classes.size(), false);
  auto sigma = [&](auto&& self, std::size_t cls) -> Term {
    if (memo[cls]) return *memo[cls];
    if (active[cls]) throw PreconditionError("closure is cyclic");
    active[cls] = true;
    const Term& r = *rep[cls];
    Term value = r;
    if (r.is_application()) {
      std::vector<Term> args;
      for (const auto& a : r.args()) args.push_back(self(self, class_of.at(a)));
      value = Term::apply(r.symbol(), std::move(args));
    }
    active[cls] = false;
    memo[cls] = value;
    return value;
  };

  Unifiable out{{}, sigma(sigma, class_of.at(c.s()))};
  for (const Term* side : {&c.s(), &c.t()})
    for (const auto& v : variables(*side)) {
      Term value = sigma(sigma, class_of.at(Term::variable(v)));
      if (!(value.is_variable() && value.symbol() == v)) out.subst.emplace(v, std::move(value));
    }
  return out;
}

}  // namespace

Unifiable extract_mgu(const Closure& c) {
  if (check_homogeneous(c)) throw PreconditionError("closure is not homogeneous");
  if (check_acyclic(c)) throw PreconditionError("closure is not acyclic");
  return read_mgu(c);
}

UnifyOutcome unify(const Term& s, const Term& t) {
  Closure c = close(s, t);
  if (auto conflict = check_homogeneous(c)) return Failed{std::move(*conflict)};
  if (auto cycle = check_acyclic(c)) return Failed{std::move(*cycle)};
  return read_mgu(c);
}

}  // namespace termsep
