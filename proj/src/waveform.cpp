#include "ofdmrad/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "ofdmrad/fft.hpp"

namespace ofdmrad {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_phase(double theta) {
  double wrapped = theta - kTwoPi * std::floor(theta / kTwoPi);
  if (wrapped >= kTwoPi) wrapped -= kTwoPi;  // floor rounding at the seam
  if (wrapped < 0.0) wrapped = 0.0;
  return wrapped;
}

OfdmParams::OfdmParams(int n_subcarriers_, int n_symbols_, double bandwidth_hz_,
                       int oversampling_)
    : n_subcarriers(n_subcarriers_),
      n_symbols(n_symbols_),
      bandwidth_hz(bandwidth_hz_),
      oversampling(oversampling_),
      mask(static_cast<std::size_t>(std::max(n_subcarriers_, 0)), 1),
      weights(static_cast<std::size_t>(std::max(n_subcarriers_, 0)), 1.0) {}

int OfdmParams::active_count() const {
  if (mask.empty()) return n_subcarriers;
  return static_cast<int>(std::count_if(mask.begin(), mask.end(),
                                        [](std::uint8_t m) { return m != 0; }));
}

void OfdmParams::validate() const {
  if (n_subcarriers < 1) throw std::invalid_argument("params: N must be >= 1");
  if (n_symbols < 1) throw std::invalid_argument("params: K must be >= 1");
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("params: bandwidth must be positive");
  if (oversampling < 1)
    throw std::invalid_argument("params: oversampling must be >= 1");
  if (!mask.empty() && mask.size() != static_cast<std::size_t>(n_subcarriers))
    throw std::invalid_argument("params: mask length must equal N");
  if (!weights.empty() &&
      weights.size() != static_cast<std::size_t>(n_subcarriers))
    throw std::invalid_argument("params: weights length must equal N");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("params: weights must be finite and >= 0");
  if (active_count() < 1)
    throw std::invalid_argument("params: mask disables every subcarrier");
}

PhaseCodeMatrix::PhaseCodeMatrix(int n_subcarriers, int n_symbols)
    : n_(n_subcarriers), k_(n_symbols) {
  if (n_ < 1 || k_ < 1)
    throw std::invalid_argument("codes: dimensions must be >= 1");
  phases_.assign(static_cast<std::size_t>(n_) * k_, 0.0);
}

PhaseCodeMatrix PhaseCodeMatrix::from_phases(int n_subcarriers, int n_symbols,
                                             std::span<const double> phases) {
  PhaseCodeMatrix codes(n_subcarriers, n_symbols);
  if (phases.size() != codes.size())
    throw std::invalid_argument("codes: expected N*K phases, got " +
                                std::to_string(phases.size()));
  for (std::size_t i = 0; i < phases.size(); ++i)
    codes.phases_[i] = wrap_phase(phases[i]);
  return codes;
}

std::complex<double> PhaseCodeMatrix::code(int n, int k) const {
  return std::polar(1.0, phase(n, k));
}

std::size_t PhaseCodeMatrix::index(int n, int k) const {
  if (n < 0 || n >= n_ || k < 0 || k >= k_)
    throw std::out_of_range("codes: index out of range");
  return static_cast<std::size_t>(k) * n_ + n;
}

double SampledPulse::energy() const {
  double power = 0.0;
  for (const auto& x : samples) power += std::norm(x);
  return power * sample_period_s;
}

SampledPulse synthesize_pulse(const OfdmParams& params,
                              const PhaseCodeMatrix& codes) {
  params.validate();
  if (codes.n_subcarriers() != params.n_subcarriers ||
      codes.n_symbols() != params.n_symbols)
    throw std::invalid_argument("synthesize: code matrix shape mismatch");

  const int n = params.n_subcarriers;
  const int k_count = params.n_symbols;
  const std::size_t bins = static_cast<std::size_t>(params.oversampling) * n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  SampledPulse pulse;
  pulse.sample_period_s = params.sample_period_s();
  pulse.samples.resize(params.samples_per_pulse());

  std::vector<std::complex<double>> spectrum(bins);
  for (int k = 0; k < k_count; ++k) {
    std::fill(spectrum.begin(), spectrum.end(), std::complex<double>{});
    for (int sub = 0; sub < n; ++sub) {
      if (!params.mask.empty() && params.mask[sub] == 0) continue;
      const double w = params.weights.empty() ? 1.0 : params.weights[sub];
      spectrum[sub] = std::polar(w, codes.phase(sub, k));
    }
    std::span<std::complex<double>> symbol(
        pulse.samples.data() + static_cast<std::size_t>(k) * bins, bins);
    fft::backward(spectrum, symbol);
    for (auto& x : symbol) x *= scale;
  }
  return pulse;
}

OfdmParams apply_mask(const OfdmParams& params, double fraction_active,
                      std::uint64_t seed) {
  params.validate();
  if (!(fraction_active > 0.0) || fraction_active > 1.0)
    throw std::invalid_argument("mask: fraction must be in (0, 1]");

  const int n = params.n_subcarriers;
  const int keep = static_cast<int>(std::ceil(fraction_active * n));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(keep);
  return apply_mask(params, order);
}

OfdmParams apply_mask(const OfdmParams& params,
                      std::span<const int> active_indices) {
  params.validate();
  if (active_indices.empty())
    throw std::invalid_argument("mask: at least one subcarrier must stay on");

  OfdmParams masked = params;
  masked.mask.assign(static_cast<std::size_t>(params.n_subcarriers), 0);
  for (int idx : active_indices) {
    if (idx < 0 || idx >= params.n_subcarriers)
      throw std::invalid_argument("mask: subcarrier index out of range");
    masked.mask[idx] = 1;
  }
  return masked;
}

}  // namespace ofdmrad
