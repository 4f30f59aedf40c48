#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ofdmrad/waveform.hpp"

namespace ofdmrad {

/**
 * @brief Binary chromosome: q bits per phase, N*K*q genes total.
 *
 * Gene block b (big-endian within the block) holds the integer v of the
 * phase for subcarrier n = b mod N during symbol k = b div N, decoded as
 * theta = 2*pi*v / 2^q.
 */
struct Chromosome {
  std::vector<std::uint8_t> genes;  // one bit per entry, 0 or 1
  std::optional<double> fitness_db;
};

PhaseCodeMatrix decode(const Chromosome& chromosome, int n_subcarriers,
                       int n_symbols, int bits_per_phase);

// Inverse of decode up to quantization: each phase is rounded to the
// nearest grid point 2*pi*v / 2^q (mod 2^q).
Chromosome encode(const PhaseCodeMatrix& codes, int bits_per_phase);

// Smallest population size L such that a uniform random population covers
// the whole search space with probability at least `probability`:
// (1 - 2^-L)^gene_count >= probability.
int population_size_for_coverage(long long gene_count, double probability);

}  // namespace ofdmrad
