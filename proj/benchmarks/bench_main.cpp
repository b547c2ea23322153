#include <benchmark/benchmark.h>

#include "monel/formula.hpp"
#include "monel/syntax.hpp"

static void BM_Parse(benchmark::State& state) {
  const std::string src =
      "forall x. ((p(x) | q(x)) -> exists y. (r(y) & x != y))";
  for (auto _ : state) {
    benchmark::DoNotOptimize(monel::parse(src));
  }
}
BENCHMARK(BM_Parse);

BENCHMARK_MAIN();
