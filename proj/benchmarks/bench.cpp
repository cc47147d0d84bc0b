// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "swmimo/engine.hpp"

using namespace swmimo;

namespace {

ScenarioConfig bench_config(std::size_t n_r) {
  ScenarioConfig cfg;
  cfg.n_r = n_r;
  cfg.n_t = 1;
  cfg.tx_radius_m = 100.0 * cfg.spacing_m;
  return cfg;
}

void bm_block_recursion(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  FreqCorrGenerator gen(n, 1e7, 2e-9);
  Rng rng(1);
  ComplexVector u(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.next_cnormal();
  for (auto _ : state) benchmark::DoNotOptimize(gen.next_block(u));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_block_recursion)->Arg(64)->Arg(512);

void bm_whitener(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(static_cast<std::size_t>(state.range(0)));
  const FrequencyContext ctx = build_frequency_context(cfg, cfg.grid(), 1e9);
  const NoiseParams params{kBoltzmann,
                           cfg.temperature_k,
                           cfg.delta_f_hz,
                           cfg.r_in_ohm,
                           std::pow(10.0, cfg.noise_figure_db / 10.0),
                           cfg.lna_gain};
  for (auto _ : state)
    benchmark::DoNotOptimize(build_noise_model(ctx.imp.p, ctx.imp.z_r, params));
}
BENCHMARK(bm_whitener)->Arg(8)->Arg(32);

void bm_spatial_quadrature(benchmark::State& state) {
  const SpatialCorrModel model{0.0, 10.0 * kPi / 180.0, 0.005};
  const double f = 3e10;  // band top, most oscillatory integrand
  const int lag = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(spatial_correlation_entry(0, lag, f, model));
}
BENCHMARK(bm_spatial_quadrature)->Arg(1)->Arg(31);

void bm_frequency_context(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_frequency_context(cfg, cfg.grid(), 1e9));
}
BENCHMARK(bm_frequency_context)->Arg(8)->Arg(32);

void bm_whitened_channel(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(static_cast<std::size_t>(state.range(0)));
  const FrequencyContext ctx = build_frequency_context(cfg, cfg.grid(), 1e9);
  Rng rng(2);
  ComplexMatrix u(ctx.b_r.cols(), ctx.b_t.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j) u(i, j) = rng.next_cnormal();
  for (auto _ : state)
    benchmark::DoNotOptimize(whitened_channel(ctx.imp.alpha, ctx.beta_los * 2.0, 1.0,
                                              ctx.w_r, ctx.w_t, ctx.b_r, u, ctx.b_t));
}
BENCHMARK(bm_whitened_channel)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
