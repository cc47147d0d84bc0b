// SPDX-License-Identifier: Apache-2.0
#include "swmimo/engine.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "swmimo/constants.hpp"

namespace swmimo {

namespace {

constexpr std::uint64_t kKDrawTag = 0x4b647261774c6f67ULL;

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min(n, hw == 0 ? std::size_t{1} : hw);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

FrequencyContext build_frequency_context(const ScenarioConfig& config,
                                         const FrequencyGrid& asd_grid, double f) {
  const UlaConfig tx = config.tx_array();
  const UlaConfig rx = config.rx_array();
  const KernelOptions opts = config.kernel_options();
  const auto tx_model = make_regime_model(config.regime, config.spacing_m, opts,
                                          config.tx_radius_m);
  const auto rx_model = make_regime_model(config.regime, config.spacing_m, opts, 0.0);
  NoiseParams noise_params;
  noise_params.boltzmann = kBoltzmann;
  noise_params.temperature = config.temperature_k;
  noise_params.delta_f = config.delta_f_hz;
  noise_params.r_in = config.r_in_ohm;
  noise_params.noise_factor_linear = std::pow(10.0, config.noise_figure_db / 10.0);
  noise_params.lna_gain = config.lna_gain;

  FrequencyContext ctx;
  ctx.f = f;
  ctx.imp = build_impedance_set(tx, rx, f, *tx_model, *rx_model, config.r_ohm,
                                config.r_in_ohm, config.lna_gain);
  ctx.noise = build_noise_model(ctx.imp.p, ctx.imp.z_r, noise_params);
  const double asd = asd_schedule(f, asd_grid, config.asd_low_deg * kPi / 180.0,
                                  config.asd_high_deg * kPi / 180.0);
  const SpatialCorrModel rx_corr{config.theta_r_rad, asd, config.spacing_m};
  const SpatialCorrModel tx_corr{config.theta_t_rad, asd, config.spacing_m};
  ctx.r_r = spatial_correlation_matrix(config.n_r, f, rx_corr);
  ctx.r_t = spatial_correlation_matrix(config.n_t, f, tx_corr);
  ctx.r_r_sqrt = hermitian_sqrt(ctx.r_r);
  ctx.r_t_sqrt = hermitian_sqrt(ctx.r_t);
  ctx.a_r = steering_vector(config.n_r, config.spacing_m, f, config.theta_r_rad);
  ctx.a_t = steering_vector(config.n_t, config.spacing_m, f, config.theta_t_rad);
  ctx.w_r = equivalent_rx_steering(ctx.noise.whitener, ctx.imp.p, ctx.a_r);
  ctx.w_t = equivalent_tx_steering(ctx.imp.q, ctx.a_t);
  ctx.c_r = equivalent_rx_corr(ctx.noise.whitener, ctx.imp.p, ctx.r_r);
  ctx.c_t = equivalent_tx_corr(ctx.imp.q, ctx.r_t);
  ctx.b_r = equivalent_rx_factor(ctx.noise.whitener, ctx.imp.p, ctx.r_r_sqrt);
  ctx.b_t = equivalent_tx_factor(ctx.r_t_sqrt, ctx.imp.q);
  const double amp = kSpeedOfLight /
                     (2.0 * kPi * f * std::pow(config.distance_m, config.gamma / 2.0));
  ctx.beta_los = config.g_t * config.g_r * amp * amp;
  return ctx;
}

ScenarioEngine::ScenarioEngine(ScenarioConfig config)
    : config_(std::move(config)), grid_(config_.grid()) {
  config_.validate();
  k_model_.mu_slope = config_.k_mu_slope;
  k_model_.mu_intercept = config_.k_mu_intercept;
  k_model_.var_slope = config_.k_var_slope;
  k_model_.var_intercept = config_.k_var_intercept;
  contexts_.resize(grid_.count);
  parallel_for(grid_.count, [&](std::size_t l) {
    contexts_[l] = build_frequency_context(config_, grid_, grid_.center(l));
  });
}

double k_standard_draw(const ScenarioConfig& config, std::uint64_t trial) {
  const std::uint64_t tag = config.k_draw == KDrawMode::kPerRun ? 0 : trial + 1;
  return Rng::stream(config.seed, kKDrawTag, tag).next_normal();
}

double ScenarioEngine::k_draw_z(std::uint64_t trial) const {
  return k_standard_draw(config_, trial);
}

double ScenarioEngine::k_at(std::size_t l, double z) const {
  return k_model_.k_linear(grid_.center(l), z);
}

std::vector<ChannelRealization> ScenarioEngine::realize_trial(
    std::uint64_t trial, bool include_context_fields) const {
  const double z = k_draw_z(trial);
  FadingStreamParams stream;
  stream.block_len = config_.block_len;
  stream.tau_rms = config_.tau_rms_ns * 1e-9;
  stream.master_seed = config_.seed;
  const std::vector<ComplexMatrix> field =
      generate_unit_field(config_.n_r, config_.n_t, grid_.count, grid_.delta_f, stream, trial);

  std::vector<ChannelRealization> out(grid_.count);
  for (std::size_t l = 0; l < grid_.count; ++l) {
    const FrequencyContext& ctx = contexts_[l];
    ChannelRealization& r = out[l];
    r.k_linear = k_at(l, z);
    const PathGain gain = path_gain(ctx.f, r.k_linear, config_.g_t, config_.g_r,
                                    config_.distance_m, config_.gamma);
    r.path_gain_los = gain.beta_los;
    r.path_gain = gain.beta;
    const RicianWeights w = rician_weights(r.k_linear);
    const Complex scale = ctx.imp.alpha * std::sqrt(gain.beta);
    r.h_mimo = assemble_h_mimo(r.k_linear, gain.beta, ctx.a_r, ctx.a_t, ctx.r_r_sqrt,
                               field[l], ctx.r_t_sqrt);
    r.h_eq_los = scale * w.los * (ctx.w_r * ctx.w_t.adjoint());
    r.h_eq_sc = scale * w.scattered * (ctx.b_r * field[l] * ctx.b_t);
    r.h_tilde = r.h_eq_los + r.h_eq_sc;
    if (include_context_fields) {
      r.w_r = ctx.w_r;
      r.w_t = ctx.w_t;
      r.c_r = ctx.c_r;
      r.c_t = ctx.c_t;
    }
  }
  return out;
}

}  // namespace swmimo
