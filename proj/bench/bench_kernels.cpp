// Serial reference vs OpenMP for the quadratic-cost kernels and the two
// quadratic-form evaluations built on them.
//   ./bench_kernels --benchmark_filter=l1
// Thread count follows OMP_NUM_THREADS.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "fkdvb/fracops.hpp"
#include "fkdvb/kernels.hpp"
#include "fkdvb/quadform.hpp"

using namespace fkdvb;

namespace {

std::vector<double> ramp(std::size_t n) {
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = std::exp(-0.01 * static_cast<double>(n - i));
  return f;
}

template <bool Parallel>
void BM_l1_history(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = ramp(n);
  const auto b = l1_weights(n, 0.5);
  std::vector<double> out(n);
  for (auto _ : st) {
    if constexpr (Parallel)
      kernels::l1_history_omp(f, b, out);
    else
      kernels::l1_history_serial(f, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetComplexityN(st.range(0));
}

template <bool Parallel>
void BM_linear_history(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto d = ramp(n);
  std::vector<double> a(n), c(n), out(n);
  for (std::size_t k = 1; k < n; ++k) {
    a[k] = 1.0 / std::sqrt(static_cast<double>(k));
    c[k] = 0.5 * a[k];
  }
  for (auto _ : st) {
    if constexpr (Parallel)
      kernels::linear_history_omp(d, a, c, out);
    else
      kernels::linear_history_serial(d, a, c, out);
    benchmark::DoNotOptimize(out.data());
  }
}

HalfLineFunction bench_function() {
  const Grid g = random_family_grid();
  return sample_half_line(random_h2_0_family(7, 1).front(), g);
}

template <Execution E>
void BM_eval_I_direct(benchmark::State& st) {
  const auto v = bench_function();
  const FracParams p(0.5);
  for (auto _ : st) benchmark::DoNotOptimize(eval_I_direct(v, p, E).value);
}

template <Execution E>
void BM_eval_I_kernel(benchmark::State& st) {
  const auto v = bench_function();
  const FracParams p(0.5);
  const auto k = build_kernel(p);
  for (auto _ : st) benchmark::DoNotOptimize(eval_I_kernel(v, k, {}, E).value);
}

}  // namespace

BENCHMARK(BM_l1_history<false>)->Name("l1_history/serial")->Arg(2001)->Arg(8001);
BENCHMARK(BM_l1_history<true>)->Name("l1_history/omp")->Arg(2001)->Arg(8001);
BENCHMARK(BM_linear_history<false>)->Name("linear_history/serial")->Arg(2001)->Arg(8001);
BENCHMARK(BM_linear_history<true>)->Name("linear_history/omp")->Arg(2001)->Arg(8001);
BENCHMARK(BM_eval_I_direct<Execution::Serial>)->Name("eval_I_direct/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_I_direct<Execution::Parallel>)->Name("eval_I_direct/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_I_kernel<Execution::Serial>)->Name("eval_I_kernel/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_I_kernel<Execution::Parallel>)->Name("eval_I_kernel/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
