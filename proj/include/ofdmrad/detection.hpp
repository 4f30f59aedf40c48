#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ofdmrad/design_rules.hpp"
#include "ofdmrad/sga.hpp"
#include "ofdmrad/waveform.hpp"

namespace ofdmrad {

// One point scatterer at (x, y) seen from a radar at the origin.
struct Scatterer {
  double x_m = 0.0;
  double y_m = 0.0;
  double sqrt_sigma = 1.0;  // reflectivity amplitude

  double range_m() const;
};

struct TargetModel {
  std::vector<Scatterer> scatterers;

  // `count` unit scatterers uniform over a rectangle centered on
  // (center_range_m, 0): depth_m along the range axis, width_m across it.
  static TargetModel synthesize_rectangle(int count, double center_range_m,
                                          double depth_m, double width_m,
                                          std::uint64_t seed);

  void validate() const;
};

/**
 * @brief Compound reflectivity sampled on the subcarrier grid.
 *
 * values[n] = sum_i sqrt(sigma_i) * exp(-j*4*pi*f_n*R_i/c) at
 * f_n = carrier + n*spacing. When `normalized`, the mean of |values|^2
 * over the N subcarriers equals N (unit average power rule).
 */
struct ReflectivitySpectrum {
  std::vector<std::complex<double>> values;
  double carrier_hz = 0.0;
  double spacing_hz = 0.0;
  bool normalized = false;
};

// Per-subcarrier amplitude weights maximizing matched-filter SNR under
// sum w_n^2 = N, with the gain over flat weights they achieve.
struct WeightSolution {
  std::vector<double> weights;
  double snr_gain_db = 0.0;
};

ReflectivitySpectrum reflectivity_spectrum(const TargetModel& target,
                                           double carrier_hz,
                                           double bandwidth_hz,
                                           int n_subcarriers,
                                           double c = design::kSpeedOfLight);

// Scales magnitudes so sum |values|^2 = N^2 / N = N per subcarrier on
// average; phases preserved. Idempotent.
ReflectivitySpectrum normalize_spectrum(const ReflectivitySpectrum& raw);

/**
 * @brief SNR-optimal weights for a normalized spectrum.
 *
 * w_n is proportional to |values[n]|, scaled to sum w^2 = N, floored at
 * `weight_floor` (every subcarrier keeps nonzero power) and rescaled.
 * The gain compares against flat unit weights, which satisfy the same
 * power constraint.
 */
WeightSolution optimal_weights(const ReflectivitySpectrum& spectrum,
                               double weight_floor = 1e-3);

// Matched-filter SNR of Eq.-style weighting: sum w_n^2 |s_n|^2 / (N * n0).
double snr_linear(std::span<const double> weights,
                  const ReflectivitySpectrum& spectrum,
                  double noise_psd = 1.0);

struct TwoStepReport {
  double snr_gain_db = 0.0;
  double pmepr_random_median_db = 0.0;  // random codes, same weights
  double pmepr_optimized_db = 0.0;      // after the GA pass
  int generations_run = 0;
  bool converged = false;
};

struct TwoStepResult {
  WeightSolution weights;
  PhaseCodeMatrix codes;
  ReflectivitySpectrum spectrum;  // normalized
  TwoStepReport report;
};

/**
 * @brief Two-step pulse design against a known target.
 *
 * Step 1 derives the SNR-optimal subcarrier weights from the target's
 * normalized reflectivity spectrum. Step 2 runs the single-objective GA
 * with those weights fixed in the frame, minimizing the PMEPR of the
 * weighted pulse; the report compares the result with the median PMEPR of
 * `random_code_draws` random phase codes under the same weights.
 */
TwoStepResult two_step_design(const TargetModel& target, double carrier_hz,
                              double bandwidth_hz, int n_subcarriers,
                              const SgaConfig& sga_cfg, int oversampling = 20,
                              int random_code_draws = 101);

}  // namespace ofdmrad
