/* microbenchmarks for the symbolic layer */

#include "worldline/calculus.hpp"
#include "worldline/parse.hpp"

#include <benchmark/benchmark.h>

using namespace worldline;

namespace {

struct Fixture {
  Algebra alg;
  Fixture() {
    alg.constant("m", true);
    alg.constant("E", true);
    alg.field("q1");
    alg.field("q2");
    alg.field("xi", Parity::odd, 1);
  }
};

void bm_normalize_product(benchmark::State& state) {
  Fixture fx;
  GradedExpr a = parse_expr(fx.alg, "m*q1'^2 + m*q2'^2 + xi*q1'*q2 - 2*E*q1*q2");
  for (auto _ : state) {
    GradedExpr p = a * a * a;
    benchmark::DoNotOptimize(&p);
  }
}
BENCHMARK(bm_normalize_product);

void bm_euler_derivative(benchmark::State& state) {
  Fixture fx;
  GradedExpr L = parse_expr(fx.alg, "m*q1'^2/2 + m*q2'^2/2 - q1^2*q2^2");
  GenId q1 = fx.alg.require("q1");
  for (auto _ : state) {
    GradedExpr e = euler_derivative(L, q1);
    benchmark::DoNotOptimize(&e);
  }
}
BENCHMARK(bm_euler_derivative);

}  // namespace

BENCHMARK_MAIN();
