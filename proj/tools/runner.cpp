// SPDX-License-Identifier: Apache-2.0
#include "runner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "swmimo/analysis.hpp"
#include "swmimo/engine.hpp"

namespace swmimo::runner {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string freq_label(double f_hz) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%gGHz", f_hz / 1e9);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);  // binary: byte-stable newlines
  if (!out) throw std::runtime_error("cannot open output file " + (dir / name).string());
  return out;
}

// Minimal self-contained line chart. One polyline per series, shared axes.
void write_svg_lines(const std::filesystem::path& path, const std::string& title,
                     const std::vector<std::vector<std::pair<double, double>>>& series,
                     const std::vector<std::string>& names, const std::string& x_label,
                     const std::string& y_label) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s) {
      x0 = std::min(x0, x); x1 = std::max(x1, x);
      y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;
  const double w = 800, h = 500, ml = 70, mr = 20, mt = 40, mb = 50;
  const auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
  const auto py = [&](double y) { return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b"};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " " << h
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
      << h - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << (mt + h - mb) / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << (mt + h - mb) / 2 << ")\">" << y_label
      << "</text>\n";
  out << "<text x=\"" << ml << "\" y=\"" << h - mb + 18 << "\" text-anchor=\"middle\">"
      << num(x0) << "</text>\n";
  out << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 18 << "\" text-anchor=\"end\">"
      << num(x1) << "</text>\n";
  out << "<text x=\"" << ml - 6 << "\" y=\"" << h - mb << "\" text-anchor=\"end\">" << num(y0)
      << "</text>\n";
  out << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4 << "\" text-anchor=\"end\">" << num(y1)
      << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[s]) out << px(x) << "," << py(y) << " ";
    out << "\"/>\n";
    if (s < names.size())
      out << "<text x=\"" << w - mr - 10 << "\" y=\"" << mt + 18 * (s + 1)
          << "\" text-anchor=\"end\" fill=\"" << color << "\">" << names[s] << "</text>\n";
  }
  out << "</svg>\n";
}

std::size_t snr_subchannels(const ScenarioConfig& config) {
  return config.power_split == PowerSplit::kTotal ? config.grid().count : 1;
}

double per_mode_power(const ScenarioConfig& config) {
  const std::size_t modes = std::min(config.n_r, config.n_t);
  return config.p_total_w /
         (static_cast<double>(snr_subchannels(config)) * static_cast<double>(modes));
}

Rng entry_stream_at_freq(const ScenarioConfig& config, double f, std::uint64_t trial,
                         std::size_t i, std::size_t j) {
  const std::uint64_t fbits = std::bit_cast<std::uint64_t>(f);
  return Rng::stream(Rng::mix(config.seed, fbits), trial, i, j);
}

// Single-frequency scattered draw: the Jakes process is marginally CN(0,1)
// at every frequency, so per-frequency statistics do not need the recursion.
ComplexMatrix unit_draw_at_freq(const ScenarioConfig& config, double f, std::uint64_t trial) {
  ComplexMatrix u(static_cast<Eigen::Index>(config.n_r), static_cast<Eigen::Index>(config.n_t));
  for (std::size_t i = 0; i < config.n_r; ++i)
    for (std::size_t j = 0; j < config.n_t; ++j) {
      Rng rng = entry_stream_at_freq(config, f, trial, i, j);
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.next_cnormal();
    }
  return u;
}

}  // namespace

void run_snr(const ScenarioConfig& config, const RunOptions& opts) {
  ScenarioConfig cfg = config;
  // SIMO reference transmitter: electrically large element, far above the
  // coupled-regime sizes, unless the user pinned a radius.
  if (cfg.n_t == 1 && cfg.tx_radius_m == 0.0) cfg.tx_radius_m = 100.0 * cfg.spacing_m;
  cfg.validate();
  ScenarioEngine engine(cfg);
  const std::size_t n_subch = snr_subchannels(cfg);
  const std::size_t trials = cfg.trials;
  const std::size_t count = engine.grid().count;

  // rows keyed (freq index, trial)
  std::vector<double> snr_db(trials * count);
  std::vector<std::vector<ChannelRealization>> all(trials);
  parallel_for(trials, [&](std::size_t t) {
    all[t] = engine.realize_trial(t);
  });
  for (std::size_t t = 0; t < trials; ++t)
    for (std::size_t l = 0; l < count; ++l)
      snr_db[l * trials + t] =
          eigen_snrs(all[t][l].h_tilde, cfg.p_total_w, n_subch)[0].snr_db;

  std::ofstream out = open_out(opts.out_dir, "snr_vs_freq.csv");
  out << "freq_Hz,trial,snr_dB\n";
  for (std::size_t l = 0; l < count; ++l)
    for (std::size_t t = 0; t < trials; ++t)
      out << num(engine.grid().center(l)) << "," << t << "," << num(snr_db[l * trials + t])
          << "\n";

  if (opts.svg) {
    std::vector<std::pair<double, double>> median(count);
    for (std::size_t l = 0; l < count; ++l) {
      std::vector<double> col(snr_db.begin() + static_cast<long>(l * trials),
                              snr_db.begin() + static_cast<long>((l + 1) * trials));
      std::nth_element(col.begin(), col.begin() + static_cast<long>(trials / 2), col.end());
      median[l] = {engine.grid().center(l) / 1e9, col[trials / 2]};
    }
    write_svg_lines(opts.out_dir / "snr_vs_freq.svg", "Median eigenmode SNR vs frequency",
                    {median}, {regime_name(cfg.regime)}, "f [GHz]", "SNR [dB]");
  }
}

void run_power_cdf(const ScenarioConfig& config, const std::vector<double>& freqs,
                   const RunOptions& opts) {
  ScenarioConfig cfg = config;
  cfg.validate();
  if (freqs.empty()) throw std::invalid_argument("power-cdf: need at least one frequency");
  const double p_t = per_mode_power(cfg);
  const FrequencyGrid grid = cfg.grid();

  std::ofstream out = open_out(opts.out_dir, "power_cdf.csv");
  out << "freq_label,value,prob\n";
  std::vector<std::vector<std::pair<double, double>>> svg_series;
  std::vector<std::string> svg_names;
  for (const double f : freqs) {
    const FrequencyContext ctx = build_frequency_context(cfg, grid, f);
    std::vector<double> samples(cfg.trials);
    parallel_for(cfg.trials, [&](std::size_t t) {
      const double z = k_standard_draw(cfg, t);
      KFactorModel model;
      model.mu_slope = cfg.k_mu_slope;
      model.mu_intercept = cfg.k_mu_intercept;
      model.var_slope = cfg.k_var_slope;
      model.var_intercept = cfg.k_var_intercept;
      const double k = model.k_linear(f, z);
      const PathGain gain = path_gain(f, k, cfg.g_t, cfg.g_r, cfg.distance_m, cfg.gamma);
      const RicianWeights w = rician_weights(k);
      const ComplexMatrix u = unit_draw_at_freq(cfg, f, t);
      const ComplexMatrix h_sc = ctx.imp.alpha * std::sqrt(gain.beta) * w.scattered *
                                 (ctx.b_r * u * ctx.b_t);
      samples[t] = scattered_power(h_sc, p_t);
    });
    const auto cdf = empirical_cdf(samples);
    const std::string label = freq_label(f);
    for (const auto& point : cdf)
      out << label << "," << num(point.value) << "," << num(point.prob) << "\n";
    if (opts.svg) {
      std::vector<std::pair<double, double>> line(cdf.size());
      for (std::size_t i = 0; i < cdf.size(); ++i)
        line[i] = {10.0 * std::log10(std::max(cdf[i].value, 1e-300)), cdf[i].prob};
      svg_series.push_back(std::move(line));
      svg_names.push_back(label);
    }
  }
  if (opts.svg)
    write_svg_lines(opts.out_dir / "power_cdf.svg", "Scattered power CDF", svg_series,
                    svg_names, "power [dB]", "P(X <= x)");
}

void run_steering(const ScenarioConfig& config, double freq, const RunOptions& opts) {
  ScenarioConfig cfg = config;
  cfg.validate();
  const FrequencyContext ctx = build_frequency_context(cfg, cfg.grid(), freq);
  std::ofstream out = open_out(opts.out_dir, "steering_profile.csv");
  out << "rank,magnitude,regime,end\n";
  const std::string regime = regime_name(cfg.regime);
  std::vector<std::vector<std::pair<double, double>>> svg_series;
  std::vector<std::string> svg_names;
  for (const auto& [end, w] : {std::pair<const char*, const ComplexVector&>{"rx", ctx.w_r},
                               {"tx", ctx.w_t}}) {
    const std::vector<double> profile = steering_magnitude_profile(w);
    std::vector<std::pair<double, double>> line;
    for (std::size_t r = 0; r < profile.size(); ++r) {
      out << r + 1 << "," << num(profile[r]) << "," << regime << "," << end << "\n";
      line.emplace_back(static_cast<double>(r + 1), profile[r]);
    }
    svg_series.push_back(std::move(line));
    svg_names.push_back(end);
  }
  if (opts.svg)
    write_svg_lines(opts.out_dir / "steering_profile.svg",
                    "Ordered normalized steering magnitudes (" + regime + ")", svg_series,
                    svg_names, "rank", "|w|/||w||");
}

void run_corr_row(const ScenarioConfig& config, const std::vector<double>& freqs,
                  const RunOptions& opts) {
  ScenarioConfig cfg = config;
  cfg.validate();
  if (freqs.empty()) throw std::invalid_argument("corr-row: need at least one frequency");
  std::ofstream out = open_out(opts.out_dir, "corr_row.csv");
  out << "element_index,magnitude,regime,freq_label\n";
  const std::string regime = regime_name(cfg.regime);
  std::vector<std::vector<std::pair<double, double>>> svg_series;
  std::vector<std::string> svg_names;
  for (const double f : freqs) {
    const FrequencyContext ctx = build_frequency_context(cfg, cfg.grid(), f);
    const std::vector<double> row = effective_corr_row(ctx.c_r);
    const std::string label = freq_label(f);
    std::vector<std::pair<double, double>> line;
    for (std::size_t m = 0; m < row.size(); ++m) {
      out << m + 1 << "," << num(row[m]) << "," << regime << "," << label << "\n";
      line.emplace_back(static_cast<double>(m + 1), row[m]);
    }
    svg_series.push_back(std::move(line));
    svg_names.push_back(label);
  }
  if (opts.svg)
    write_svg_lines(opts.out_dir / "corr_row.svg",
                    "Equivalent receive correlation, first row (" + regime + ")", svg_series,
                    svg_names, "element", "|C(1,m)|/C(1,1)");
}

int validate(const ScenarioConfig& config, std::ostream& out) {
  ScenarioConfig cfg = config;
  cfg.validate();
  int failures = 0;
  const auto report = [&](const char* name, bool ok, double measured, double limit) {
    out << (ok ? "PASS" : "FAIL") << "  " << name << "  measured=" << measured
        << "  limit=" << limit << "\n";
    if (!ok) ++failures;
  };
  const FrequencyGrid grid = cfg.grid();
  const double f_mid = std::sqrt(grid.f_start * grid.f_stop());
  const double probes[] = {grid.f_start, f_mid, grid.f_stop()};

  double worst_passivity = 1e300, worst_whiten = 0.0, worst_pipe = 0.0;
  for (const double f : probes) {
    const FrequencyContext ctx = build_frequency_context(cfg, grid, f);
    const ComplexMatrix re_z = 0.5 * (ctx.imp.z_r + ctx.imp.z_r.adjoint());
    const HermitianFactor eig = hermitian_eigen(re_z);
    worst_passivity =
        std::min(worst_passivity, eig.eigenvalues(eig.eigenvalues.size() - 1) /
                                      std::max(eig.eigenvalues(0), 1e-300));
    const Eigen::Index n = ctx.noise.r_n.rows();
    worst_whiten = std::max(
        worst_whiten, (ctx.noise.whitener * ctx.noise.r_n * ctx.noise.whitener.adjoint() -
                       ComplexMatrix::Identity(n, n))
                          .norm());
    // raw pipeline vs equivalent assembly on shared draws
    for (std::uint64_t t = 0; t < 5; ++t) {
      const double z = k_standard_draw(cfg, t);
      KFactorModel model;
      model.mu_slope = cfg.k_mu_slope;
      model.mu_intercept = cfg.k_mu_intercept;
      model.var_slope = cfg.k_var_slope;
      model.var_intercept = cfg.k_var_intercept;
      const double k = model.k_linear(f, z);
      const PathGain gain = path_gain(f, k, cfg.g_t, cfg.g_r, cfg.distance_m, cfg.gamma);
      const ComplexMatrix u = unit_draw_at_freq(cfg, f, t);
      const ComplexMatrix h_mimo = assemble_h_mimo(k, gain.beta, ctx.a_r, ctx.a_t,
                                                   ctx.r_r_sqrt, u, ctx.r_t_sqrt);
      const ComplexMatrix z_rt =
          trans_impedance(ctx.imp.z_r, ctx.imp.z_t, h_mimo, ctx.imp.phi);
      const ComplexMatrix h_raw = ctx.noise.whitener *
                                  raw_channel(cfg.lna_gain, cfg.r_in_ohm, ctx.imp.p, z_rt,
                                              ctx.imp.q);
      const ComplexMatrix h_eq = whitened_channel(ctx.imp.alpha, gain.beta, k, ctx.w_r,
                                                  ctx.w_t, ctx.b_r, u, ctx.b_t);
      worst_pipe = std::max(worst_pipe, (h_raw - h_eq).norm() / h_raw.norm());
    }
  }
  report("passivity: min eig Re{Z_R} / max eig", worst_passivity >= -1e-12, worst_passivity,
         -1e-12);
  report("whitening: ||W R_n W^H - I||_F", worst_whiten <= 1e-9, worst_whiten, 1e-9);
  report("pipeline equivalence: rel diff raw vs equivalent", worst_pipe <= 1e-9, worst_pipe,
         1e-9);

  {
    const std::size_t n = 8;
    FreqCorrGenerator gen(n, cfg.delta_f_hz, cfg.tau_rms_ns * 1e-9);
    const ComplexMatrix r1 = gen.r1().cast<Complex>();
    const double stat = (gen.transition() * r1 * gen.transition().adjoint() +
                         gen.u3_adjoint() * gen.u3_adjoint().adjoint() - r1)
                            .norm();
    report("recursion stationarity: ||A R1 A^H + U3^H U3 - R1||", stat <= 1e-12, stat, 1e-12);
    const Eigen::Index ni = static_cast<Eigen::Index>(n);
    ComplexMatrix g = ComplexMatrix::Zero(2 * ni, 2 * ni);
    g.topLeftCorner(ni, ni) = gen.u1_adjoint();
    g.bottomLeftCorner(ni, ni) = gen.transition() * gen.u1_adjoint();
    g.bottomRightCorner(ni, ni) = gen.u3_adjoint();
    const double cov = (g * g.adjoint() -
                        jakes_matrix(2 * n, cfg.delta_f_hz, cfg.tau_rms_ns * 1e-9)
                            .cast<Complex>())
                           .norm();
    report("recursion covariance: two-block vs Jakes", cov <= 1e-12, cov, 1e-12);
  }

  {
    // Kronecker covariance probe on a reduced array (keeps the run short).
    ScenarioConfig probe = cfg;
    probe.n_r = std::min<std::size_t>(cfg.n_r, 3);
    probe.n_t = std::min<std::size_t>(cfg.n_t, 2);
    probe.tx_radius_m = 0.0;
    const FrequencyContext ctx = build_frequency_context(probe, grid, f_mid);
    const Eigen::Index d = static_cast<Eigen::Index>(probe.n_r * probe.n_t);
    const std::size_t m_trials = 20000;
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (std::size_t t = 0; t < m_trials; ++t) {
      const ComplexMatrix x = ctx.b_r * unit_draw_at_freq(probe, f_mid, t) * ctx.b_t;
      const ComplexVector v = Eigen::Map<const ComplexVector>(x.data(), d);
      acc.noalias() += v * v.adjoint();
    }
    acc /= static_cast<double>(m_trials);
    ComplexMatrix truth(d, d);
    const ComplexMatrix ct_t = ctx.c_t.transpose();
    for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(probe.n_t); ++a)
      for (Eigen::Index b = 0; b < static_cast<Eigen::Index>(probe.n_t); ++b)
        truth.block(a * static_cast<Eigen::Index>(probe.n_r),
                    b * static_cast<Eigen::Index>(probe.n_r),
                    static_cast<Eigen::Index>(probe.n_r),
                    static_cast<Eigen::Index>(probe.n_r)) = ct_t(a, b) * ctx.c_r;
    const double scale = truth.cwiseAbs().maxCoeff();
    const double err = (acc - truth).cwiseAbs().maxCoeff() / scale;
    const double limit = 5.0 / std::sqrt(static_cast<double>(m_trials));
    report("Kronecker covariance: max entry error / scale", err <= limit, err, limit);
  }

  return failures;
}

std::string schema_text() {
  return
      "snr_vs_freq.csv: freq_Hz,trial,snr_dB\n"
      "power_cdf.csv: freq_label,value,prob\n"
      "steering_profile.csv: rank,magnitude,regime,end\n"
      "corr_row.csv: element_index,magnitude,regime,freq_label\n";
}

}  // namespace swmimo::runner
