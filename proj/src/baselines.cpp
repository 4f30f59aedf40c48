#include "ofdmrad/baselines.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

namespace ofdmrad {

PhaseCodeMatrix newman_phases(int n_subcarriers) {
  PhaseCodeMatrix codes(n_subcarriers, 1);
  for (int n = 1; n <= n_subcarriers; ++n) {
    const double theta = std::numbers::pi * static_cast<double>(n - 1) *
                         (n - 1) / n_subcarriers;
    codes.set_phase(n - 1, 0, theta);
  }
  return codes;
}

PhaseCodeMatrix uncoded(int n_subcarriers, int n_symbols) {
  return PhaseCodeMatrix(n_subcarriers, n_symbols);
}

PhaseCodeMatrix random_phases(int n_subcarriers, int n_symbols,
                              std::uint64_t seed) {
  PhaseCodeMatrix codes(n_subcarriers, n_symbols);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < n_symbols; ++k)
    for (int n = 0; n < n_subcarriers; ++n) codes.set_phase(n, k, uniform(rng));
  return codes;
}

PhaseCodeMatrix random_phases(int n_subcarriers, int n_symbols,
                              int bits_per_phase, std::uint64_t seed) {
  if (bits_per_phase < 1 || bits_per_phase > 30)
    throw std::invalid_argument("baselines: bits_per_phase must be in 1..30");
  const std::uint32_t levels = 1u << bits_per_phase;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(levels);

  PhaseCodeMatrix codes(n_subcarriers, n_symbols);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> uniform(0, levels - 1);
  for (int k = 0; k < n_symbols; ++k)
    for (int n = 0; n < n_subcarriers; ++n)
      codes.set_phase(n, k, uniform(rng) * step);
  return codes;
}

}  // namespace ofdmrad
