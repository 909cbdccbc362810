#include "support.hpp"

#include <algorithm>

#include "termsep/errors.hpp"
#include "termsep/unification.hpp"

using namespace termsep;
using termsep::testing::T;

namespace {

Path P(std::initializer_list<Step> steps) { return Path(std::vector<Step>(steps)); }

const Term kStarS = T("m(m(x,y),m(z,y))");
const Term kStarT = T("m(z,m(m(x,y),m(x,x)))");
const Term kCycleS = T("f(x,g(u,v),y)");
const Term kCycleT = T("f(g(y,w),g(x,z),g(u,v))");
const Term kConflictS = T("f(g(u,v),f(w,x,f(u,v,w)),c)");
const Term kConflictT = T("f(g(v,v),f(w,w,g(y,z)),c)");
const Term kDeriveS = T("f(g(y,z),g(y,x),x)");
const Term kDeriveT = T("f(x,g(x,z),g(y,z))");

std::vector<std::vector<Term>> classes_with_variables(const Closure& c) {
  std::vector<std::vector<Term>> out;
  for (const auto& cls : c.nontrivial_classes())
    if (std::any_of(cls.begin(), cls.end(), [](const Term& u) { return u.is_variable(); })) out.push_back(cls);
  return out;
}

}  // namespace

TEST_SUITE("unification") {
  TEST_CASE("statements are unordered and nontrivial") {
    CHECK(Statement(T("x"), T("g(x,y)")) == Statement(T("g(x,y)"), T("x")));
    CHECK(Statement(T("g(x,y)"), T("x")).left() == T("x"));
    CHECK_THROWS_AS(Statement(T("x"), T("x")), PreconditionError);
    CHECK(format_statement(Statement(T("x"), T("y"))) == "x ≡ y");
  }

  TEST_CASE("closure of the star example") {
    Closure c = close(kStarS, kStarT);
    auto cls = classes_with_variables(c);
    std::vector<std::vector<Term>> expected{{T("y"), T("m(x,x)")}, {T("z"), T("m(x,y)")}};
    std::sort(expected.begin(), expected.end());
    std::sort(cls.begin(), cls.end());
    CHECK(cls == expected);
    CHECK(c.equivalent(kStarS, kStarT));
    CHECK_FALSE(c.equivalent(T("x"), T("y")));
    CHECK_FALSE(check_homogeneous(c));
    CHECK_FALSE(check_acyclic(c));
  }

  TEST_CASE("closure members are subterms of s or t") {
    Closure c = close(kCycleS, kCycleT);
    for (const auto& u : c.universe()) CHECK((is_subterm(u, kCycleS) || is_subterm(u, kCycleT)));
    for (const auto& st : c.merged_statements()) CHECK_FALSE(replay(c.derive(st), kCycleS, kCycleT));
  }

  TEST_CASE("closure of the cycle example") {
    Closure c = close(kCycleS, kCycleT);
    CHECK(c.equivalent(T("x"), T("g(y,w)")));
    CHECK(c.equivalent(T("y"), T("g(u,v)")));
    CHECK(c.equivalent(T("g(u,v)"), T("g(x,z)")));
    CHECK(c.equivalent(T("y"), T("g(x,z)")));
    Derivation d = c.derive(Statement(T("y"), T("g(x,z)")));
    CHECK(d.rule == Derivation::Rule::Transitive);
    CHECK_FALSE(replay(d, kCycleS, kCycleT));
  }

  TEST_CASE("identical terms close trivially") {
    Closure c = close(kStarS, kStarS);
    CHECK(c.nontrivial_classes().empty());
    CHECK(c.merged_statements().empty());
    auto out = unify(kStarS, kStarS);
    REQUIRE(std::holds_alternative<Unifiable>(out));
    CHECK(std::get<Unifiable>(out).subst.empty());
    CHECK(std::get<Unifiable>(out).unifier == kStarS);
  }

  TEST_CASE("conflict witness for the two-level example") {
    Closure c = close(kConflictS, kConflictT);
    auto w = check_homogeneous(c);
    REQUIRE(w);
    CHECK(w->stmt == Statement(T("f(u,v,w)"), T("g(y,z)")));
    CHECK(w->derivation.rule == Derivation::Rule::Decompose);
    CHECK(w->derivation.path == P({{"f", 2}, {"f", 3}}));
    CHECK(w->derivation.premise().is_base());
    CHECK_FALSE(replay(w->derivation, kConflictS, kConflictT));

    auto out = unify(kConflictS, kConflictT);
    REQUIRE(std::holds_alternative<Failed>(out));
    CHECK(std::get<Failed>(out).is_conflict());
  }

  TEST_CASE("distinct constants conflict at the root") {
    Signature s = parse_signature_list("c/0,d/0");
    Term c = parse_term("c", s);
    Term d = parse_term("d", s);
    auto w = check_homogeneous(close(c, d));
    REQUIRE(w);
    CHECK(w->stmt == Statement(c, d));
    CHECK(w->derivation.is_base());
  }

  TEST_CASE("cycle witness for the cycle example") {
    Closure c = close(kCycleS, kCycleT);
    CHECK_FALSE(check_homogeneous(c));
    auto w = check_acyclic(c);
    REQUIRE(w);
    CHECK(w->size() == 2);
    CHECK_FALSE(check_cycle_witness(*w, c));
    // Both classes named in the report lie on the cycle.
    for (const Term& g : {T("g(x,z)"), T("g(y,w)")})
      CHECK(std::any_of(w->links.begin(), w->links.end(), [&](const CycleLink& l) { return c.equivalent(l.p, g); }));
    for (const auto& link : w->links) {
      CHECK_FALSE(link.sigma.empty());
      CHECK_FALSE(replay(link.derivation, kCycleS, kCycleT));
    }
    auto out = unify(kCycleS, kCycleT);
    REQUIRE(std::holds_alternative<Failed>(out));
    CHECK_FALSE(std::get<Failed>(out).is_conflict());
  }

  TEST_CASE("occurs check is a one-link cycle") {
    Term x = T("x");
    Term g = T("g(x,y)");
    Closure c = close(x, g);
    auto w = check_acyclic(c);
    REQUIRE(w);
    REQUIRE(w->size() == 1);
    CHECK(w->links[0].p == g);
    CHECK(w->links[0].q == x);
    CHECK(w->links[0].sigma == P({{"g", 1}}));
    CHECK(w->links[0].derivation.is_base());
    CHECK(format_cycle(*w) == "g(x,y) ≺ g(x,y)");
  }

  TEST_CASE("cycle witnesses are validated") {
    Closure c = close(T("x"), T("g(x,y)"));
    CycleWitness bad;
    bad.links.push_back({T("g(x,y)"), T("y"), P({{"g", 1}}), c.derive(Statement(T("x"), T("g(x,y)")))});
    CHECK(check_cycle_witness(bad, c));
    CycleWitness empty_path;
    empty_path.links.push_back({T("g(x,y)"), T("x"), Path{}, c.derive(Statement(T("x"), T("g(x,y)")))});
    CHECK(check_cycle_witness(empty_path, c));
  }

  TEST_CASE("derivations of the deduction example") {
    Closure c = close(kDeriveS, kDeriveT);

    Derivation a = c.derive(Statement(T("g(y,z)"), T("x")));
    CHECK(a.rule == Derivation::Rule::Decompose);
    CHECK(a.path == P({{"f", 1}}));
    CHECK(a.premise().is_base());

    Derivation b = c.derive(Statement(T("x"), T("y")));
    CHECK(b.rule == Derivation::Rule::Decompose);
    CHECK(b.path == P({{"f", 2}, {"g", 1}}));
    CHECK(b.premise().is_base());

    Derivation chain = c.derive(Statement(T("g(y,z)"), T("y")));
    CHECK(chain.rule == Derivation::Rule::Transitive);
    REQUIRE(chain.premises.size() == 2);
    std::vector<Statement> links{chain.premise(0).conclusion, chain.premise(1).conclusion};
    CHECK(std::count(links.begin(), links.end(), Statement(T("g(y,z)"), T("x"))) == 1);
    CHECK(std::count(links.begin(), links.end(), Statement(T("x"), T("y"))) == 1);
    CHECK(chain.statement_count() == 4);
    CHECK_FALSE(replay(chain, kDeriveS, kDeriveT));

    CHECK_THROWS_AS(c.derive(Statement(T("y"), T("g(x,z)"))), PreconditionError);
  }

  TEST_CASE("replay rejects unsound derivations") {
    Closure c = close(kDeriveS, kDeriveT);
    Derivation d = c.derive(Statement(T("g(y,z)"), T("x")));
    d.path = P({{"f", 2}});
    CHECK(replay(d, kDeriveS, kDeriveT));

    Derivation wrong_base = c.derive(Statement(T("x"), T("y")));
    CHECK(replay(wrong_base, kStarS, kStarT));
  }

  TEST_CASE("deduction listing") {
    Closure c = close(kDeriveS, kDeriveT);
    std::string text = format_deduction(c.derive(Statement(T("g(y,z)"), T("y"))));
    CHECK(text.find("1. " + format_statement(Statement(kDeriveS, kDeriveT)) + "    [base]") != std::string::npos);
    CHECK(text.find("[decompose 1 at f_1]") != std::string::npos);
    CHECK(text.find("[decompose 1 at f_2.g_1]") != std::string::npos);
    CHECK(text.find("[transitive 2, 3]") != std::string::npos);
  }

  TEST_CASE("mgu of the star example") {
    auto out = unify(kStarS, kStarT);
    REQUIRE(std::holds_alternative<Unifiable>(out));
    const auto& u = std::get<Unifiable>(out);
    CHECK(u.unifier == T("m(m(x,m(x,x)),m(m(x,m(x,x)),m(x,x)))"));
    CHECK(termsep::apply(u.subst, kStarS) == u.unifier);
    CHECK(termsep::apply(u.subst, kStarT) == u.unifier);
    CHECK(format_substitution(u.subst) == "{y ↦ m(x,x), z ↦ m(x,m(x,x))}");
  }

  TEST_CASE("binding a variable to an application") {
    auto out = unify(T("x"), T("g(a,b)"));
    REQUIRE(std::holds_alternative<Unifiable>(out));
    const auto& u = std::get<Unifiable>(out);
    REQUIRE(u.subst.size() == 1);
    CHECK(u.subst.at("x") == T("g(a,b)"));
  }

  TEST_CASE("variable-only classes bind to one representative") {
    auto out = unify(T("g(x,y)"), T("g(y,z)"));
    REQUIRE(std::holds_alternative<Unifiable>(out));
    const auto& u = std::get<Unifiable>(out);
    CHECK(termsep::apply(u.subst, T("g(x,y)")) == termsep::apply(u.subst, T("g(y,z)")));
    CHECK(variables(u.unifier).size() == 1);
  }

  TEST_CASE("extract_mgu refuses failed closures") {
    CHECK_THROWS_AS(extract_mgu(close(kCycleS, kCycleT)), PreconditionError);
    CHECK_THROWS_AS(extract_mgu(close(kConflictS, kConflictT)), PreconditionError);
  }

  TEST_CASE("cycle candidates are ordered by length") {
    auto all = cycle_candidates(close(kCycleS, kCycleT), 64, 2);
    REQUIRE_FALSE(all.empty());
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].size() <= all[i].size());
    CHECK(cycle_candidates(close(kStarS, kStarT)).empty());
  }
}
