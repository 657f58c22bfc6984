#include <benchmark/benchmark.h>

#include "turing/kernels.hpp"
#include "turing/pde.hpp"

namespace {

turing::ModelParams params() {
  turing::ModelParams p;
  p.d11 = 0.1, p.d12 = 1, p.d21 = 1, p.d22 = 2, p.d3 = 3, p.d4 = 2;
  p.sigma1 = 2, p.sigma2 = 3, p.lambda1 = 2, p.lambda2 = 1, p.eta1 = 10, p.eta2 = 2;
  p.a1 = p.a2 = p.b1 = p.b2 = 0.5;
  return p;
}

template <bool Parallel>
void BM_step(benchmark::State& state) {
  const auto p = params();
  const int n = static_cast<int>(state.range(0));
  const turing::GridSpec g{n, n, 1.0, 1.0};
  turing::InitSpec s{*turing::coexistence(p)};
  turing::FieldSet a = turing::init_fields(g, s), b(g);
  for (auto _ : state) {
    const auto st = Parallel ? turing::kernels::step_parallel(p, g, 0.01, a, b)
                             : turing::kernels::step_reference(p, g, 0.01, a, b);
    benchmark::DoNotOptimize(st);
    std::swap(a, b);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.cells()));
}

}  // namespace

BENCHMARK(BM_step<false>)->Name("step_reference")->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_step<true>)->Name("step_parallel")->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
