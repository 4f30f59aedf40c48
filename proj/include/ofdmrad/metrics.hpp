#pragma once

#include <complex>
#include <vector>

#include "ofdmrad/waveform.hpp"

namespace ofdmrad {

/**
 * @brief Pulse quality metrics in dB.
 *
 * PMEPR is a power ratio, reported as 10*log10. PSLR and ISLR compare
 * correlation magnitudes, reported as 20*log10. All three are >= their
 * theoretical floors (0 dB for PMEPR; PSLR/ISLR may be negative).
 */
struct ObjectiveVector {
  double pmepr_db = 0.0;
  double pslr_db = 0.0;
  double islr_db = 0.0;
};

/**
 * @brief Aperiodic autocorrelation R[m] = sum_p x[p] * conj(x[p-m]).
 *
 * Lags run m = -(M-1) .. M-1 for M samples and satisfy
 * R[-m] = conj(R[m]); R[0] equals the total sample power and is real.
 * Consecutive lags are one sample period apart.
 */
class AutocorrOutput {
 public:
  AutocorrOutput(std::vector<std::complex<double>> values,
                 double lag_period_s);

  int max_lag() const { return max_lag_; }
  double lag_period_s() const { return lag_period_s_; }

  const std::complex<double>& at_lag(int m) const;
  double peak() const { return at_lag(0).real(); }

  // Values in lag order -(M-1) .. M-1; R[0] sits at index M-1.
  std::span<const std::complex<double>> values() const { return values_; }

 private:
  std::vector<std::complex<double>> values_;
  double lag_period_s_ = 0.0;
  int max_lag_ = 0;
};

// Computed via FFT of length 2M; the negative half is filled by conjugate
// symmetry, so R[-m] == conj(R[m]) holds exactly.
AutocorrOutput autocorrelation(const SampledPulse& pulse);

// max_p |x[p]|^2 / mean_p |x[p]|^2 over every sample. Linear ratio >= 1.
double pmepr(const SampledPulse& pulse);

// Sidelobe region: lags with |m| * t_s >= 1/B, i.e. delays at or beyond
// the first resolution cell. Both return linear ratios against |R[0]|.
double pslr(const AutocorrOutput& acf, double bandwidth_hz);   // max |R[m]|
double islr(const AutocorrOutput& acf, double bandwidth_hz);   // sum |R[m]|

double power_ratio_db(double ratio);      // 10*log10
double magnitude_ratio_db(double ratio);  // 20*log10

ObjectiveVector evaluate_objectives(const SampledPulse& pulse,
                                    double bandwidth_hz);

}  // namespace ofdmrad
