// SPDX-License-Identifier: Apache-2.0
#include "swmimo/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "swmimo/fading.hpp"

namespace swmimo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + ": not a number: '" + value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config: " + key + ": trailing junk in '" + value + "'");
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
    throw std::invalid_argument("config: " + key + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

MutualKernel parse_kernel(const std::string& value) {
  if (value == "chu") return MutualKernel::kChuCoupled;
  if (value == "sinc") return MutualKernel::kCmsSinc;
  if (value == "none") return MutualKernel::kNone;
  throw std::invalid_argument("config: circuit.mutual_kernel: expected chu|sinc|none, got '" +
                              value + "'");
}

using Setter = std::function<void(ScenarioConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"circuit.r_ohm", [](ScenarioConfig& c, const std::string& v) { c.r_ohm = parse_double("circuit.r_ohm", v); }},
      {"circuit.r_in_ohm", [](ScenarioConfig& c, const std::string& v) { c.r_in_ohm = parse_double("circuit.r_in_ohm", v); }},
      {"circuit.lna_gain", [](ScenarioConfig& c, const std::string& v) { c.lna_gain = parse_double("circuit.lna_gain", v); }},
      {"noise.noise_figure_db", [](ScenarioConfig& c, const std::string& v) { c.noise_figure_db = parse_double("noise.noise_figure_db", v); }},
      {"noise.temperature_k", [](ScenarioConfig& c, const std::string& v) { c.temperature_k = parse_double("noise.temperature_k", v); }},
      {"circuit.mutual_kernel", [](ScenarioConfig& c, const std::string& v) { c.mutual_kernel = parse_kernel(v); }},
      {"circuit.elastance_coeff", [](ScenarioConfig& c, const std::string& v) { c.elastance_coeff = parse_double("circuit.elastance_coeff", v); }},
      {"circuit.elastance_exponent", [](ScenarioConfig& c, const std::string& v) { c.elastance_exponent = parse_double("circuit.elastance_exponent", v); }},
      {"circuit.r_rad", [](ScenarioConfig& c, const std::string& v) { c.r_rad = parse_double("circuit.r_rad", v); }},
      {"link.p_total_w", [](ScenarioConfig& c, const std::string& v) { c.p_total_w = parse_double("link.p_total_w", v); }},
      {"link.distance_m", [](ScenarioConfig& c, const std::string& v) { c.distance_m = parse_double("link.distance_m", v); }},
      {"link.gamma", [](ScenarioConfig& c, const std::string& v) { c.gamma = parse_double("link.gamma", v); }},
      {"link.theta_t_rad", [](ScenarioConfig& c, const std::string& v) { c.theta_t_rad = parse_double("link.theta_t_rad", v); }},
      {"link.theta_r_rad", [](ScenarioConfig& c, const std::string& v) { c.theta_r_rad = parse_double("link.theta_r_rad", v); }},
      {"link.g_t", [](ScenarioConfig& c, const std::string& v) { c.g_t = parse_double("link.g_t", v); }},
      {"link.g_r", [](ScenarioConfig& c, const std::string& v) { c.g_r = parse_double("link.g_r", v); }},
      {"link.power_split",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "total") c.power_split = PowerSplit::kTotal;
         else if (v == "per_subchannel") c.power_split = PowerSplit::kPerSubchannel;
         else throw std::invalid_argument("config: link.power_split: expected total|per_subchannel");
       }},
      {"array.n_t", [](ScenarioConfig& c, const std::string& v) { c.n_t = parse_count("array.n_t", v); }},
      {"array.n_r", [](ScenarioConfig& c, const std::string& v) { c.n_r = parse_count("array.n_r", v); }},
      {"array.spacing_m", [](ScenarioConfig& c, const std::string& v) { c.spacing_m = parse_double("array.spacing_m", v); }},
      {"array.regime", [](ScenarioConfig& c, const std::string& v) { c.regime = parse_regime(v); }},
      {"array.tx_radius_m", [](ScenarioConfig& c, const std::string& v) { c.tx_radius_m = parse_double("array.tx_radius_m", v); }},
      {"grid.f_start_hz", [](ScenarioConfig& c, const std::string& v) { c.f_start_hz = parse_double("grid.f_start_hz", v); }},
      {"grid.f_stop_hz", [](ScenarioConfig& c, const std::string& v) { c.f_stop_hz = parse_double("grid.f_stop_hz", v); }},
      {"grid.delta_f_hz", [](ScenarioConfig& c, const std::string& v) { c.delta_f_hz = parse_double("grid.delta_f_hz", v); }},
      {"fading.tau_rms_ns", [](ScenarioConfig& c, const std::string& v) { c.tau_rms_ns = parse_double("fading.tau_rms_ns", v); }},
      {"fading.block_len", [](ScenarioConfig& c, const std::string& v) { c.block_len = parse_count("fading.block_len", v); }},
      {"fading.uncorrelated_threshold", [](ScenarioConfig& c, const std::string& v) { c.uncorrelated_threshold = parse_double("fading.uncorrelated_threshold", v); }},
      {"fading.asd_low_deg", [](ScenarioConfig& c, const std::string& v) { c.asd_low_deg = parse_double("fading.asd_low_deg", v); }},
      {"fading.asd_high_deg", [](ScenarioConfig& c, const std::string& v) { c.asd_high_deg = parse_double("fading.asd_high_deg", v); }},
      {"fading.k_mu_slope", [](ScenarioConfig& c, const std::string& v) { c.k_mu_slope = parse_double("fading.k_mu_slope", v); }},
      {"fading.k_mu_intercept", [](ScenarioConfig& c, const std::string& v) { c.k_mu_intercept = parse_double("fading.k_mu_intercept", v); }},
      {"fading.k_var_slope", [](ScenarioConfig& c, const std::string& v) { c.k_var_slope = parse_double("fading.k_var_slope", v); }},
      {"fading.k_var_intercept", [](ScenarioConfig& c, const std::string& v) { c.k_var_intercept = parse_double("fading.k_var_intercept", v); }},
      {"fading.k_draw",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "per_trial") c.k_draw = KDrawMode::kPerTrial;
         else if (v == "per_run") c.k_draw = KDrawMode::kPerRun;
         else throw std::invalid_argument("config: fading.k_draw: expected per_trial|per_run");
       }},
      {"run.trials", [](ScenarioConfig& c, const std::string& v) { c.trials = parse_count("run.trials", v); }},
      {"run.seed",
       [](ScenarioConfig& c, const std::string& v) {
         try {
           c.seed = std::stoull(v);
         } catch (const std::exception&) {
           throw std::invalid_argument("config: run.seed: not an integer: '" + v + "'");
         }
       }},
  };
  return table;
}

void set_key(ScenarioConfig& config, const std::string& full_key, const std::string& value,
             const std::string& origin) {
  const auto it = setters().find(full_key);
  if (it == setters().end())
    throw std::invalid_argument("config: unknown key '" + full_key + "' (" + origin + ")");
  it->second(config, value);
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(std::string("config: ") + message);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(r_ohm > 0.0, "circuit.r_ohm must be positive");
  require(r_in_ohm > 0.0, "circuit.r_in_ohm must be positive");
  require(lna_gain > 0.0, "circuit.lna_gain must be positive");
  require(noise_figure_db >= 0.0, "noise.noise_figure_db must be non-negative");
  require(temperature_k > 0.0, "noise.temperature_k must be positive");
  require(elastance_coeff >= 0.0, "circuit.elastance_coeff must be non-negative");
  require(r_rad > 0.0, "circuit.r_rad must be positive");
  require(p_total_w > 0.0, "link.p_total_w must be positive");
  require(distance_m > 0.0, "link.distance_m must be positive");
  require(gamma > 0.0, "link.gamma must be positive");
  require(g_t > 0.0 && g_r > 0.0, "link gains must be positive");
  require(n_t > 0 && n_r > 0, "array sizes must be positive");
  require(spacing_m > 0.0, "array.spacing_m must be positive");
  require(tx_radius_m >= 0.0, "array.tx_radius_m must be non-negative");
  require(f_start_hz > 0.0, "grid.f_start_hz must be positive");
  require(f_stop_hz > f_start_hz, "grid.f_stop_hz must exceed grid.f_start_hz");
  require(delta_f_hz > 0.0, "grid.delta_f_hz must be positive");
  require(tau_rms_ns > 0.0, "fading.tau_rms_ns must be positive");
  require(block_len > 0, "fading.block_len must be positive");
  require(uncorrelated_threshold > 0.0, "fading.uncorrelated_threshold must be positive");
  require(asd_low_deg >= 0.0 && asd_high_deg >= 0.0, "fading ASD must be non-negative");
  require(trials > 0, "run.trials must be positive");
  tx_array().validate();
  rx_array().validate();
  // Blocks must be long enough that cross-block truncation is acceptable.
  const double residual =
      jakes_entry(2 * static_cast<long>(block_len), delta_f_hz, tau_rms_ns * 1e-9);
  if (residual >= uncorrelated_threshold)
    throw std::invalid_argument(
        "config: fading.block_len too short: residual correlation at lag 2n is " +
        std::to_string(residual) + ", threshold " + std::to_string(uncorrelated_threshold));
}

FrequencyGrid ScenarioConfig::grid() const {
  return build_frequency_grid(f_start_hz, f_stop_hz, delta_f_hz);
}

UlaConfig ScenarioConfig::tx_array() const {
  UlaConfig a;
  a.n_elements = n_t;
  a.spacing = spacing_m;
  a.element_radius =
      tx_radius_m > 0.0 ? tx_radius_m : regime_element_radius(regime, spacing_m);
  return a;
}

UlaConfig ScenarioConfig::rx_array() const {
  UlaConfig a;
  a.n_elements = n_r;
  a.spacing = spacing_m;
  a.element_radius = regime_element_radius(regime, spacing_m);
  return a;
}

KernelOptions ScenarioConfig::kernel_options() const {
  KernelOptions opts;
  opts.kernel = mutual_kernel;
  opts.elastance_coeff = elastance_coeff;
  opts.elastance_exponent = elastance_exponent;
  opts.r_rad = r_rad;
  return opts;
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  ScenarioConfig config;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: malformed section header (" + where + ")");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value (" + where + ")");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("config: key '" + key + "' outside any section (" + where + ")");
    set_key(config, section + "." + key, value, where);
  }
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

void apply_override(ScenarioConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("config: override must look like section.key=value, got '" +
                                assignment + "'");
  set_key(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "override");
}

}  // namespace swmimo
