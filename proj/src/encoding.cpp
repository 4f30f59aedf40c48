#include "ofdmrad/encoding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofdmrad {

namespace {

void check_bits(int bits_per_phase) {
  if (bits_per_phase < 1 || bits_per_phase > 30)
    throw std::invalid_argument("encoding: bits_per_phase must be in 1..30");
}

}  // namespace

PhaseCodeMatrix decode(const Chromosome& chromosome, int n_subcarriers,
                       int n_symbols, int bits_per_phase) {
  check_bits(bits_per_phase);
  PhaseCodeMatrix codes(n_subcarriers, n_symbols);
  const std::size_t expected = codes.size() * bits_per_phase;
  if (chromosome.genes.size() != expected)
    throw std::invalid_argument("decode: expected N*K*q genes");

  const double step =
      2.0 * std::numbers::pi / static_cast<double>(1u << bits_per_phase);
  for (std::size_t block = 0; block < codes.size(); ++block) {
    std::uint32_t value = 0;
    for (int bit = 0; bit < bits_per_phase; ++bit)
      value = (value << 1) |
              (chromosome.genes[block * bits_per_phase + bit] ? 1u : 0u);
    const int n = static_cast<int>(block % n_subcarriers);
    const int k = static_cast<int>(block / n_subcarriers);
    codes.set_phase(n, k, value * step);
  }
  return codes;
}

Chromosome encode(const PhaseCodeMatrix& codes, int bits_per_phase) {
  check_bits(bits_per_phase);
  const std::uint32_t levels = 1u << bits_per_phase;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(levels);

  Chromosome chromosome;
  chromosome.genes.resize(codes.size() * bits_per_phase);
  for (std::size_t block = 0; block < codes.size(); ++block) {
    const int n = static_cast<int>(block % codes.n_subcarriers());
    const int k = static_cast<int>(block / codes.n_subcarriers());
    const auto value = static_cast<std::uint32_t>(
        std::llround(codes.phase(n, k) / step) % levels);
    for (int bit = 0; bit < bits_per_phase; ++bit)
      chromosome.genes[block * bits_per_phase + bit] =
          (value >> (bits_per_phase - 1 - bit)) & 1u;
  }
  return chromosome;
}

int population_size_for_coverage(long long gene_count, double probability) {
  if (gene_count < 1)
    throw std::invalid_argument("coverage: gene_count must be >= 1");
  if (!(probability > 0.0) || !(probability < 1.0))
    throw std::invalid_argument("coverage: probability must be in (0, 1)");

  // log P(L) = Q * log1p(-2^-L), monotone in L; scan for the first hit.
  const double target = std::log(probability);
  for (int size = 1; size <= 128; ++size) {
    const double log_p =
        static_cast<double>(gene_count) * std::log1p(-std::exp2(-size));
    if (log_p >= target) return size;
  }
  throw std::invalid_argument("coverage: no population size up to 128 works");
}

}  // namespace ofdmrad
