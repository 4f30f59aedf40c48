#include "ofdmrad/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ofdmrad/baselines.hpp"
#include "ofdmrad/metrics.hpp"

namespace ofdmrad {

double Scatterer::range_m() const { return std::hypot(x_m, y_m); }

TargetModel TargetModel::synthesize_rectangle(int count,
                                              double center_range_m,
                                              double depth_m, double width_m,
                                              std::uint64_t seed) {
  if (count < 1)
    throw std::invalid_argument("target: scatterer count must be >= 1");
  if (!(center_range_m > 0.0) || depth_m < 0.0 || width_m < 0.0)
    throw std::invalid_argument("target: invalid rectangle geometry");

  TargetModel target;
  target.scatterers.resize(count);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> along(center_range_m - depth_m / 2.0,
                                               center_range_m + depth_m / 2.0);
  std::uniform_real_distribution<double> across(-width_m / 2.0,
                                                width_m / 2.0);
  for (auto& s : target.scatterers) {
    s.x_m = along(rng);
    s.y_m = across(rng);
    s.sqrt_sigma = 1.0;
  }
  target.validate();
  return target;
}

void TargetModel::validate() const {
  if (scatterers.empty())
    throw std::invalid_argument("target: needs at least one scatterer");
  for (const auto& s : scatterers) {
    if (!std::isfinite(s.x_m) || !std::isfinite(s.y_m) ||
        !std::isfinite(s.sqrt_sigma) || s.sqrt_sigma < 0.0)
      throw std::invalid_argument("target: scatterer fields must be finite");
    if (!(s.range_m() > 0.0))
      throw std::invalid_argument("target: scatterer range must be positive");
  }
}

ReflectivitySpectrum reflectivity_spectrum(const TargetModel& target,
                                           double carrier_hz,
                                           double bandwidth_hz,
                                           int n_subcarriers, double c) {
  target.validate();
  if (n_subcarriers < 1)
    throw std::invalid_argument("spectrum: N must be >= 1");
  if (!(bandwidth_hz > 0.0) || carrier_hz < 0.0 || !(c > 0.0))
    throw std::invalid_argument("spectrum: invalid frequency plan");

  ReflectivitySpectrum spectrum;
  spectrum.carrier_hz = carrier_hz;
  spectrum.spacing_hz = bandwidth_hz / n_subcarriers;
  spectrum.values.resize(n_subcarriers);
  for (int n = 0; n < n_subcarriers; ++n) {
    const double f = carrier_hz + n * spectrum.spacing_hz;
    std::complex<double> sum = 0.0;
    for (const auto& s : target.scatterers) {
      const double phase = -4.0 * std::numbers::pi * f * s.range_m() / c;
      sum += s.sqrt_sigma * std::polar(1.0, phase);
    }
    spectrum.values[n] = sum;
  }
  return spectrum;
}

namespace {

double total_power(const ReflectivitySpectrum& spectrum) {
  double power = 0.0;
  for (const auto& v : spectrum.values) power += std::norm(v);
  return power;
}

}  // namespace

ReflectivitySpectrum normalize_spectrum(const ReflectivitySpectrum& raw) {
  if (raw.values.empty())
    throw std::invalid_argument("normalize: empty spectrum");
  const double power = total_power(raw);
  if (!(power > 0.0))
    throw std::invalid_argument("normalize: spectrum has zero power");

  const double n = static_cast<double>(raw.values.size());
  const double scale = n / std::sqrt(power);
  ReflectivitySpectrum normalized = raw;
  for (auto& v : normalized.values) v *= scale;
  normalized.normalized = true;
  return normalized;
}

WeightSolution optimal_weights(const ReflectivitySpectrum& spectrum,
                               double weight_floor) {
  if (!spectrum.normalized)
    throw std::invalid_argument("weights: spectrum must be normalized first");
  if (!(weight_floor > 0.0) || weight_floor >= 1.0)
    throw std::invalid_argument("weights: floor must be in (0, 1)");

  const std::size_t n = spectrum.values.size();
  const double power = total_power(spectrum);

  WeightSolution solution;
  solution.weights.resize(n);
  const double scale = std::sqrt(static_cast<double>(n) / power);
  for (std::size_t i = 0; i < n; ++i)
    solution.weights[i] =
        std::max(scale * std::abs(spectrum.values[i]), weight_floor);

  double sum_sq = 0.0;
  for (double w : solution.weights) sum_sq += w * w;
  const double renorm = std::sqrt(static_cast<double>(n) / sum_sq);
  for (double& w : solution.weights) w *= renorm;

  const std::vector<double> flat(n, 1.0);
  solution.snr_gain_db = 10.0 * std::log10(snr_linear(solution.weights,
                                                      spectrum) /
                                           snr_linear(flat, spectrum));
  return solution;
}

double snr_linear(std::span<const double> weights,
                  const ReflectivitySpectrum& spectrum, double noise_psd) {
  if (weights.size() != spectrum.values.size())
    throw std::invalid_argument("snr: weight count must match spectrum");
  if (!(noise_psd > 0.0))
    throw std::invalid_argument("snr: noise PSD must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    sum += weights[i] * weights[i] * std::norm(spectrum.values[i]);
  return sum / (static_cast<double>(weights.size()) * noise_psd);
}

TwoStepResult two_step_design(const TargetModel& target, double carrier_hz,
                              double bandwidth_hz, int n_subcarriers,
                              const SgaConfig& sga_cfg, int oversampling,
                              int random_code_draws) {
  if (random_code_draws < 1)
    throw std::invalid_argument("two_step: need at least one random draw");

  TwoStepResult result;
  result.spectrum = normalize_spectrum(reflectivity_spectrum(
      target, carrier_hz, bandwidth_hz, n_subcarriers));
  result.weights = optimal_weights(result.spectrum);

  OfdmParams params(n_subcarriers, 1, bandwidth_hz, oversampling);
  params.weights = result.weights.weights;

  std::vector<double> random_pmepr(random_code_draws);
  for (int draw = 0; draw < random_code_draws; ++draw) {
    const PhaseCodeMatrix codes =
        random_phases(n_subcarriers, 1, sga_cfg.seed + 1000003ULL * draw);
    random_pmepr[draw] =
        power_ratio_db(pmepr(synthesize_pulse(params, codes)));
  }
  std::nth_element(random_pmepr.begin(),
                   random_pmepr.begin() + random_code_draws / 2,
                   random_pmepr.end());
  result.report.pmepr_random_median_db = random_pmepr[random_code_draws / 2];

  SgaResult optimized = run_sga(params, sga_cfg);
  result.codes = std::move(optimized.best_codes);
  result.report.snr_gain_db = result.weights.snr_gain_db;
  result.report.pmepr_optimized_db = optimized.best_pmepr_db;
  result.report.generations_run = optimized.generations_run;
  result.report.converged = optimized.converged;
  return result;
}

}  // namespace ofdmrad
