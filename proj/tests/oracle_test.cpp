#include "support.hpp"

#include "corpus.hpp"
#include "robinson.hpp"

using namespace termsep;
using termsep::testing::T;

TEST_SUITE("oracle") {
  TEST_CASE("Robinson unifier on known pairs") {
    auto star = oracle::robinson_unify(T("m(m(x,y),m(z,y))"), T("m(z,m(m(x,y),m(x,x)))"));
    REQUIRE(star);
    CHECK(oracle::equal_up_to_renaming(star->unifier, T("m(m(x,m(x,x)),m(m(x,m(x,x)),m(x,x)))")));
    CHECK_FALSE(oracle::robinson_unify(T("x"), T("g(x,y)")));
    CHECK_FALSE(oracle::robinson_unify(T("g(x,y)"), T("h(x)")));
    CHECK_FALSE(oracle::robinson_unify(T("f(x,g(u,v),y)"), T("f(g(y,w),g(x,z),g(u,v))")));
    auto id = oracle::robinson_unify(T("g(x,y)"), T("g(x,y)"));
    REQUIRE(id);
    CHECK(id->bindings.empty());
  }

  TEST_CASE("renaming equivalence is bijective") {
    CHECK(oracle::equal_up_to_renaming(T("g(x,y)"), T("g(a,b)")));
    CHECK_FALSE(oracle::equal_up_to_renaming(T("g(x,y)"), T("g(a,a)")));
    CHECK_FALSE(oracle::equal_up_to_renaming(T("g(x,x)"), T("g(a,b)")));
    CHECK_FALSE(oracle::equal_up_to_renaming(T("g(x,c)"), T("g(a,b)")));
  }

  TEST_CASE("corpus: closure unifier matches the oracle and every separation verifies") {
    corpus::CorpusOptions opts;
    opts.count = 1000;
    opts.seed = 1;
    auto report = corpus::run_corpus(opts);
    for (const auto& cx : report.counterexamples)
      FAIL_CHECK("#" << cx.index << " " << cx.s << " vs " << cx.t << ": " << cx.reason);
    CHECK(report.pairs == 1000);
    CHECK(report.unifiable + report.separated == report.pairs);
    CHECK(report.variable_case + report.subterm_case + report.conflict_case + report.cycle_case == report.separated);
    CHECK(report.cycle_case > 0);
    CHECK(report.bruteforce_checked > 0);
  }

  TEST_CASE("corpus: other seeds") {
    for (std::uint64_t seed : {7u, 99u, 2024u}) {
      corpus::CorpusOptions opts;
      opts.count = 300;
      opts.seed = seed;
      auto report = corpus::run_corpus(opts);
      CHECK_MESSAGE(report.clean(), "seed " << seed << ": " << report.mismatches() << " mismatches");
    }
  }

  TEST_CASE("corpus: empty run is a vacuous pass") {
    corpus::CorpusOptions opts;
    opts.count = 0;
    auto report = corpus::run_corpus(opts);
    CHECK(report.pairs == 0);
    CHECK(report.clean());
  }

  TEST_CASE("corpus: reports are deterministic") {
    corpus::CorpusOptions opts;
    opts.count = 200;
    opts.seed = 5;
    auto a = corpus::run_corpus(opts);
    auto b = corpus::run_corpus(opts);
    CHECK(a.unifiable == b.unifiable);
    CHECK(a.conflict_case == b.conflict_case);
    CHECK(a.cycle_case == b.cycle_case);
    CHECK(a.bruteforce_checked == b.bruteforce_checked);
  }

  TEST_CASE("corpus: a damaged separator is caught") {
    corpus::CorpusOptions opts;
    opts.count = 200;
    opts.inject_fault = true;
    auto report = corpus::run_corpus(opts);
    CHECK(report.mismatches() > 0);
  }
}
