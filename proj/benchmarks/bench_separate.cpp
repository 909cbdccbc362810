#include <benchmark/benchmark.h>

#include <variant>
#include <vector>

#include "random_terms.hpp"
#include "termsep/separator.hpp"

namespace {

using namespace termsep;

struct Case {
  Term s;
  Term t;
};

std::vector<Case> separable(std::size_t max_nodes) {
  corpus::TermGenerator gen(corpus::default_signature(), 23, {max_nodes, 4});
  std::vector<Case> out;
  while (out.size() < 128) {
    auto [s, t] = gen.pair();
    if (std::holds_alternative<Failed>(unify(s, t))) out.push_back({s, t});
  }
  return out;
}

void BM_Separate(benchmark::State& state) {
  Signature sig = corpus::default_signature();
  auto input = separable(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const Case& c = input[i++ % input.size()];
    benchmark::DoNotOptimize(separate(c.s, c.t, sig));
  }
}
BENCHMARK(BM_Separate)->Arg(8)->Arg(32)->Arg(128);

void BM_BruteForce(benchmark::State& state) {
  Signature sig = corpus::default_signature();
  Term s = parse_term("f(x,g(u,v),y)", sig);
  Term t = parse_term("f(g(y,w),g(x,z),g(u,v))", sig);
  auto cert = std::get<SeparationCertificate>(separate(s, t, sig));
  auto n = assignment_count(cert.algebra, s, t).value();
  for (auto _ : state) benchmark::DoNotOptimize(check_separation_bruteforce(cert.algebra, s, t, n));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

void BM_Eval(benchmark::State& state) {
  Signature sig = corpus::default_signature();
  auto input = separable(32);
  std::vector<FiniteAlgebra> algebras;
  for (const Case& c : input) algebras.push_back(std::get<SeparationCertificate>(separate(c.s, c.t, sig)).algebra);
  std::size_t i = 0;
  for (auto _ : state) {
    std::size_t k = i++ % input.size();
    benchmark::DoNotOptimize(check_separation(algebras[k], input[k].s, input[k].t));
  }
}
BENCHMARK(BM_Eval);

}  // namespace
