#include "ofdmrad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ofdmrad/fft.hpp"

namespace ofdmrad {

AutocorrOutput::AutocorrOutput(std::vector<std::complex<double>> values,
                               double lag_period_s)
    : values_(std::move(values)), lag_period_s_(lag_period_s) {
  if (values_.empty() || values_.size() % 2 == 0)
    throw std::invalid_argument("autocorr: expected 2M-1 lag values");
  max_lag_ = static_cast<int>(values_.size() / 2);
}

const std::complex<double>& AutocorrOutput::at_lag(int m) const {
  if (m < -max_lag_ || m > max_lag_)
    throw std::out_of_range("autocorr: lag out of range");
  return values_[static_cast<std::size_t>(m + max_lag_)];
}

AutocorrOutput autocorrelation(const SampledPulse& pulse) {
  const std::size_t m_count = pulse.samples.size();
  if (m_count == 0) throw std::invalid_argument("autocorr: empty pulse");

  // Zero-pad to 2M and use |FFT|^2 -> IFFT; the linear correlation of the
  // padded sequence equals the aperiodic one for lags 0 .. M-1.
  const std::size_t fft_size = 2 * m_count;
  std::vector<std::complex<double>> padded(fft_size);
  std::copy(pulse.samples.begin(), pulse.samples.end(), padded.begin());

  std::vector<std::complex<double>> spectrum(fft_size);
  fft::forward(padded, spectrum);
  for (auto& s : spectrum) s = std::norm(s);
  fft::backward(spectrum, padded);

  const double inv = 1.0 / static_cast<double>(fft_size);
  std::vector<std::complex<double>> values(2 * m_count - 1);
  const std::size_t zero_index = m_count - 1;
  for (std::size_t m = 0; m < m_count; ++m) {
    const std::complex<double> r = padded[m] * inv;
    values[zero_index + m] = r;
    values[zero_index - m] = std::conj(r);
  }
  values[zero_index] = values[zero_index].real();  // R[0] is a power sum
  return AutocorrOutput(std::move(values), pulse.sample_period_s);
}

double pmepr(const SampledPulse& pulse) {
  if (pulse.samples.empty()) throw std::invalid_argument("pmepr: empty pulse");
  double peak = 0.0;
  double sum = 0.0;
  for (const auto& x : pulse.samples) {
    const double p = std::norm(x);
    peak = std::max(peak, p);
    sum += p;
  }
  if (sum <= 0.0) throw std::invalid_argument("pmepr: pulse has zero power");
  return peak * pulse.samples.size() / sum;
}

namespace {

// Smallest sidelobe lag: |m| * t_s >= 1/B. The boundary lag counts as
// sidelobe; the tolerance absorbs rounding in t_s = 1/(rho*B).
int first_sidelobe_lag(const AutocorrOutput& acf, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("metrics: bandwidth must be positive");
  const double lags = 1.0 / (bandwidth_hz * acf.lag_period_s());
  int first = static_cast<int>(std::ceil(lags - 1e-9));
  first = std::max(first, 1);
  if (first > acf.max_lag())
    throw std::invalid_argument("metrics: pulse shorter than one range cell");
  return first;
}

}  // namespace

double pslr(const AutocorrOutput& acf, double bandwidth_hz) {
  const int first = first_sidelobe_lag(acf, bandwidth_hz);
  double worst = 0.0;
  for (int m = first; m <= acf.max_lag(); ++m)
    worst = std::max(worst, std::abs(acf.at_lag(m)));
  return worst / acf.peak();
}

double islr(const AutocorrOutput& acf, double bandwidth_hz) {
  const int first = first_sidelobe_lag(acf, bandwidth_hz);
  double total = 0.0;
  for (int m = first; m <= acf.max_lag(); ++m) total += std::abs(acf.at_lag(m));
  return 2.0 * total / acf.peak();  // R[-m] mirrors R[m]
}

double power_ratio_db(double ratio) { return 10.0 * std::log10(ratio); }

double magnitude_ratio_db(double ratio) { return 20.0 * std::log10(ratio); }

ObjectiveVector evaluate_objectives(const SampledPulse& pulse,
                                    double bandwidth_hz) {
  ObjectiveVector objectives;
  objectives.pmepr_db = power_ratio_db(pmepr(pulse));
  const AutocorrOutput acf = autocorrelation(pulse);
  objectives.pslr_db = magnitude_ratio_db(pslr(acf, bandwidth_hz));
  objectives.islr_db = magnitude_ratio_db(islr(acf, bandwidth_hz));
  return objectives;
}

}  // namespace ofdmrad
