#include "support.hpp"

#include "termsep/errors.hpp"
#include "termsep/separator.hpp"

using namespace termsep;
using termsep::testing::sig;
using termsep::testing::T;

namespace {

using K = Transformation;


const Term kS = T("f(g(u,v),f(w,x,f(u,v,w)),c)");
const Term kT = T("f(g(v,v),f(w,w,g(y,z)),c)");
const Term kCycleS = T("f(x,g(u,v),y)");
const Term kCycleT = T("f(g(y,w),g(x,z),g(u,v))");

SeparationCertificate certificate(const Term& s, const Term& t) {
  auto r = separate(s, t, sig());
  REQUIRE(std::holds_alternative<SeparationCertificate>(r));
  return std::get<SeparationCertificate>(r);
}

AffineForm root_difference(const FiniteAlgebra& a, const Term& s, const Term& t) {
  return eval_affine(a, s).at(0) ^ eval_affine(a, t).at(0);
}

}  // namespace

TEST_SUITE("separator") {
  TEST_CASE("conflict case of the two-level example") {
    auto cert = certificate(kS, kT);
    CHECK(cert.kind == SeparationCase::Conflict);
    CHECK(cert.verified);
    CHECK(cert.algebra.dimension() <= 4);
    CHECK(eval_affine(cert.algebra, kS).at(0) == AffineForm::constant_form(false));
    CHECK(eval_affine(cert.algebra, kT).at(0) == AffineForm::constant_form(true));
    CHECK(check_separation_bruteforce(cert.algebra, kS, kT, std::uint64_t{1} << 20));
    CHECK(cert.witness == "g(y,z) ≡ f(u,v,w)");
  }

  TEST_CASE("variable case") {
    auto cert = certificate(T("x"), T("g(x,y)"));
    CHECK(cert.kind == SeparationCase::Variable);
    CHECK(cert.sum.summands() == std::vector<Transformation>{K::tweaked("g", 0, 1, 0)});
    CHECK(check_separation_bruteforce(cert.algebra, T("x"), T("g(x,y)")));
    auto flipped = certificate(T("g(x,y)"), T("x"));
    CHECK(flipped.sum.summands() == cert.sum.summands());
  }

  TEST_CASE("subterm case") {
    auto cert = certificate(T("g(x,y)"), T("h(g(x,y))"));
    CHECK(cert.kind == SeparationCase::Subterm);
    CHECK(cert.sum.summands() == std::vector<Transformation>{K::tweaked("h", 0, 1, 0)});
  }

  TEST_CASE("unifiable inputs") {
    auto same = separate(kS, kS, sig());
    REQUIRE(std::holds_alternative<Unifiable>(same));
    CHECK(std::get<Unifiable>(same).subst.empty());
    auto unif = separate(T("g(x,y)"), T("g(y,c)"), sig());
    REQUIRE(std::holds_alternative<Unifiable>(unif));
    CHECK(std::get<Unifiable>(unif).unifier == T("g(c,c)"));
  }

  TEST_CASE("separate_variable picks the first occurrence") {
    IndexAllocator a;
    CHECK(separate_variable(T("f(y,x,z)"), T("x"), a).summands() ==
          std::vector<Transformation>{K::tweaked("f", 0, 2, 0)});

    IndexAllocator b;
    Term s = T("g(g(x,x),y)");
    TransformSum l = separate_variable(s, T("x"), b);
    CHECK(l.summands() == std::vector<Transformation>{K::tweaked("g", 1, 1, 0), K::assign("g", 0, 1, 1)});
    CHECK(check_separation_bruteforce(alg_of(l, sig()), s, T("x")));

    IndexAllocator c;
    CHECK_THROWS_AS(separate_variable(T("g(y,z)"), T("x"), c), PreconditionError);
    CHECK_THROWS_AS(separate_variable(T("x"), T("x"), c), PreconditionError);
    CHECK_THROWS_AS(separate_variable(T("g(x,z)"), T("c"), c), PreconditionError);
  }

  TEST_CASE("separate_subterm") {
    IndexAllocator a;
    Term inner = T("h(z)");
    CHECK(separate_subterm(T("g(h(z),y)"), inner, a).summands() ==
          std::vector<Transformation>{K::tweaked("g", 0, 1, 0)});

    IndexAllocator b;
    Term outer = T("f(x,g(h(z),y),c)");
    TransformSum l = separate_subterm(outer, inner, b);
    CHECK(l.size() == 2);
    CHECK(l.summands().front().kind == Transformation::Kind::TweakedAssign);
    CHECK(l.summands().front().op == "g");
    CHECK(check_separation_bruteforce(alg_of(l, sig()), outer, inner));

    CHECK_THROWS_AS(separate_subterm(outer, T("h(y)"), b), PreconditionError);
    CHECK_THROWS_AS(separate_subterm(outer, outer, b), PreconditionError);
  }

  TEST_CASE("lift: base statement") {
    Closure c = close(kS, kT);
    Statement root(kS, kT);
    Derivation base = c.derive(root);
    IndexAllocator a;
    CHECK(lift(root, base, 0, a).empty());
    CHECK_THROWS_AS(lift(root, base, 3, a), PreconditionError);
  }

  TEST_CASE("lift: one decomposition") {
    Closure c = close(kS, kT);
    Statement st(T("f(u,v,w)"), T("g(y,z)"));
    Derivation d = c.derive(st);
    IndexAllocator a(6);
    TransformSum l = lift(st, d, 5, a);
    CHECK(l.summands() == std::vector<Transformation>{K::assign("f", 6, 3, 5), K::assign("f", 0, 2, 6)});
    CHECK_THROWS_AS(lift(st, d, 0, a), PreconditionError);
    CHECK_THROWS_AS(lift(Statement(T("u"), T("v")), d, 5, a), PreconditionError);
  }

  TEST_CASE("lift: transitive chains cancel in the middle") {
    Term s = T("f(g(y,z),g(y,x),x)");
    Term t = T("f(x,g(x,z),g(y,z))");
    Closure c = close(s, t);
    Statement st(T("g(y,z)"), T("y"));
    Derivation d = c.derive(st);
    REQUIRE(d.rule == Derivation::Rule::Transitive);
    IndexAllocator a;
    Index k = a.fresh();
    TransformSum l = lift(st, d, k, a);
    FiniteAlgebra alg = alg_of(l, sig());
    auto lhs = eval_affine(alg, T("g(y,z)")).at(k) ^ eval_affine(alg, T("y")).at(k);
    CHECK(lhs == root_difference(alg, s, t));
  }

  TEST_CASE("build_conflict on distinct constants") {
    Signature cd = parse_signature_list("c/0,d/0");
    Term c = parse_term("c", cd);
    Term d = parse_term("d", cd);
    auto w = check_homogeneous(close(c, d));
    REQUIRE(w);
    IndexAllocator a;
    TransformSum l = build_conflict(c, d, *w, a);
    CHECK(l.summands() == std::vector<Transformation>{K::flag("c", 0)});
    FiniteAlgebra alg = alg_of(l, cd);
    CHECK(eval_affine(alg, c).at(0) == AffineForm::constant_form(true));
    CHECK(eval_affine(alg, d).at(0) == AffineForm::constant_form(false));
  }

  TEST_CASE("build_conflict on the two-level example flags g") {
    auto w = check_homogeneous(close(kS, kT));
    REQUIRE(w);
    IndexAllocator a;
    TransformSum l = build_conflict(kS, kT, *w, a);
    CHECK(l.summands() ==
          std::vector<Transformation>{K::assign("f", 2, 3, 1), K::assign("f", 0, 2, 2), K::flag("g", 1)});
    CHECK(root_difference(alg_of(l, sig()), kS, kT) == AffineForm::constant_form(true));
  }

  TEST_CASE("build_cycle on the occurs check") {
    Term x = T("x");
    Term g = T("g(x,y)");
    auto w = check_acyclic(close(x, g));
    REQUIRE(w);
    IndexAllocator a;
    TransformSum l = build_cycle(x, g, *w, a);
    CHECK(l.summands() == std::vector<Transformation>{K::tweaked("g", 0, 1, 0)});
    CHECK(root_difference(alg_of(l, sig()), x, g) == AffineForm::constant_form(true));
  }

  TEST_CASE("build_cycle on the cycle example") {
    auto cert = certificate(kCycleS, kCycleT);
    CHECK(cert.kind == SeparationCase::Cycle);
    CHECK(root_difference(cert.algebra, kCycleS, kCycleT) == AffineForm::constant_form(true));
    CHECK(cert.attempts == 1);
    auto n = assignment_count(cert.algebra, kCycleS, kCycleT);
    REQUIRE(n);
    if (*n <= (std::uint64_t{1} << 24)) CHECK(check_separation_bruteforce(cert.algebra, kCycleS, kCycleT, *n));
  }

  TEST_CASE("build_cycle rejects malformed witnesses") {
    IndexAllocator a;
    CHECK_THROWS_AS(build_cycle(kCycleS, kCycleT, CycleWitness{}, a), PreconditionError);
  }

  TEST_CASE("allocator offset renames indices only") {
    auto w = check_homogeneous(close(kS, kT));
    REQUIRE(w);
    IndexAllocator low;
    IndexAllocator high(100);
    TransformSum a = build_conflict(kS, kT, *w, low);
    TransformSum b = build_conflict(kS, kT, *w, high);
    REQUIRE(a.size() == b.size());
    auto rename = [](Index i) { return i == 0 ? Index{0} : i + 99; };
    for (std::size_t i = 0; i < a.size(); ++i) {
      Transformation tr = a.summands()[i];
      tr.out = rename(tr.out);
      if (tr.kind != Transformation::Kind::FlagConst) tr.in = rename(tr.in);
      CHECK(tr == b.summands()[i]);
    }
  }

  TEST_CASE("case names") {
    CHECK(to_string(SeparationCase::Variable) == "variable");
    CHECK(to_string(SeparationCase::Subterm) == "subterm");
    CHECK(to_string(SeparationCase::Conflict) == "conflict");
    CHECK(to_string(SeparationCase::Cycle) == "cycle");
  }
}
