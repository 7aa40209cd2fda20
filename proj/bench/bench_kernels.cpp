// Serial reference kernels against their OpenMP versions, plus the two
// end-to-end paths that use them.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "imbq/data.hpp"
#include "imbq/illposedness.hpp"
#include "imbq/kernels.hpp"
#include "imbq/solver.hpp"

using namespace imbq;
using kernels::Exec;

namespace {

std::vector<cplx> noise(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

Exec mode(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void BM_multiply(benchmark::State& st) {
  auto data = noise(st.range(0));
  const auto f = noise(st.range(0));
  for (auto _ : st) {
    kernels::multiply(data, f, mode(st));
    benchmark::DoNotOptimize(data.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_power(benchmark::State& st) {
  const auto src = noise(st.range(0));
  auto data = src;
  for (auto _ : st) {
    data = src;
    kernels::power(data, 3, 1.0, true, mode(st));
    benchmark::DoNotOptimize(data.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_duhamel_sums(benchmark::State& st) {
  const int n = 33;
  const auto m = static_cast<std::size_t>(st.range(0));
  const auto q = window_quadrature(0.1, n);
  std::vector<double> lam(m);
  for (std::size_t k = 0; k < m; ++k) lam[k] = lambda_symbol(0.01 * double(k));
  const auto forcing = noise(n * m);
  std::vector<cplx> s(n * m), c(n * m);
  const kernels::DuhamelArgs args{q.times, q.weights, lam, forcing};
  for (auto _ : st) {
    kernels::duhamel_sums(args, s, c, mode(st));
    benchmark::DoNotOptimize(s.data());
  }
}

void BM_solve(benchmark::State& st) {
  const auto g = grid_with_spacing(1.0 / 8, 16.0);
  const CauchyData d(gaussian_bump(g, 0.3, 2.0, 0.0, false), gaussian_bump(g, 0.2, 1.5, 1.0, true));
  SolverConfig cfg;
  cfg.horizon = 0.25;
  cfg.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(solve(d, cfg).final_u().size());
}

void BM_compute_Ap(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  const auto d = make_ip_data(N, grid_with_spacing(1.0 / 32, 2.0 * (N + 2) + 2));
  QuadratureConfig q;
  q.exec = mode(st);
  q.check_convergence = false;
  for (auto _ : st) benchmark::DoNotOptimize(compute_Ap(d, 2, 1.0, 0.5, q).size());
}

}  // namespace

BENCHMARK(BM_multiply)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}});
BENCHMARK(BM_power)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}});
BENCHMARK(BM_duhamel_sums)->ArgsProduct({{256, 2048}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compute_Ap)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
