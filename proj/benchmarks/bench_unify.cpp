#include <benchmark/benchmark.h>

#include <vector>

#include "random_terms.hpp"
#include "termsep/unification.hpp"

namespace {

using namespace termsep;

std::vector<std::pair<Term, Term>> pairs(std::size_t max_nodes) {
  corpus::TermGenerator gen(corpus::default_signature(), 17, {max_nodes, 4});
  std::vector<std::pair<Term, Term>> out;
  for (int i = 0; i < 256; ++i) out.push_back(gen.pair());
  return out;
}

void BM_Unify(benchmark::State& state) {
  auto input = pairs(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [s, t] = input[i++ % input.size()];
    benchmark::DoNotOptimize(unify(s, t));
  }
}
BENCHMARK(BM_Unify)->Arg(8)->Arg(32)->Arg(128);

// Chain x_n = g(x_{n-1}, x_{n-1}): the mgu is exponential as a tree.
void BM_UnifyChain(benchmark::State& state) {
  Signature sig = corpus::default_signature();
  const auto n = static_cast<int>(state.range(0));
  std::string lhs = "h(x0)";
  std::string rhs = "h(x0)";
  for (int k = n; k > 0; --k) {
    lhs = "g(x" + std::to_string(k) + "," + lhs + ")";
    rhs = "g(g(x" + std::to_string(k - 1) + ",x" + std::to_string(k - 1) + ")," + rhs + ")";
  }
  Term s = parse_term(lhs, sig);
  Term t = parse_term(rhs, sig);
  for (auto _ : state) benchmark::DoNotOptimize(close(s, t));
}
BENCHMARK(BM_UnifyChain)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
