#include <benchmark/benchmark.h>

#include "abmod/ab_element.hpp"

using namespace abm;

static void BM_SkewMul(benchmark::State& state) {
  AbElement x = AbElement::a() - Scalar(Rational(3, 2)) * AbElement::b();
  AbElement y = AbElement::a() - Scalar(Rational(1, 2)) * AbElement::b();
  for (auto _ : state) {
    benchmark::DoNotOptimize(x * y);
  }
}
BENCHMARK(BM_SkewMul);

BENCHMARK_MAIN();
