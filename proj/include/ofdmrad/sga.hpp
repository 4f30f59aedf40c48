#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ofdmrad/waveform.hpp"

namespace ofdmrad {

/**
 * @brief Single-objective GA settings.
 *
 * The population holds L binary chromosomes of Q = N*K*q genes. Each
 * generation replaces the worst individual with a copy of the best, pairs
 * the result at random, applies one-point crossover to every pair, and on
 * odd generation numbers flips one gene in each of L_mut offspring. The
 * loop stops when mean fitness is within mean_gap_db of the best AND the
 * population standard deviation drops to std_threshold_db, or after
 * max_generations.
 */
struct SgaConfig {
  int population_size = 22;        // L, must be even
  int mutation_count = 5;          // L_mut, offspring mutated per odd gen
  int bits_per_phase = 18;         // q
  double mean_gap_db = 0.1;        // stop: mean <= best + mean_gap_db ...
  double std_threshold_db = 0.05;  // ... and std <= std_threshold_db
  int max_generations = 5000;
  std::uint64_t seed = 1;
  int threads = 1;  // 0 = one per hardware thread

  void validate(int n_subcarriers, int n_symbols) const;
};

struct SgaGeneration {
  int generation = 0;  // 1-based
  double best_db = 0.0;
  double mean_db = 0.0;
  double std_db = 0.0;
};

struct SgaTrace {
  std::vector<SgaGeneration> generations;
  // Best fitness seen so far, one entry per generation; nonincreasing.
  std::vector<double> best_ever_db;
};

struct SgaResult {
  PhaseCodeMatrix best_codes;  // best-ever individual, decoded
  double best_pmepr_db = 0.0;
  SgaTrace trace;
  int generations_run = 0;
  bool converged = false;  // stopping thresholds met before the cap
};

/**
 * @brief Minimizes PMEPR over q-bit phase codes for the given frame.
 *
 * Fitness is the PMEPR in dB of the oversampled pulse synthesized from the
 * decoded chromosome. Bit-reproducible for a fixed seed: every random draw
 * happens on the main thread in a fixed order; only fitness evaluation
 * fans out to worker threads.
 */
SgaResult run_sga(const OfdmParams& params, const SgaConfig& cfg);

// One row per generation: generation,best_db,mean_db,std_db.
void write_trace_csv(const SgaTrace& trace, std::ostream& out);

}  // namespace ofdmrad
