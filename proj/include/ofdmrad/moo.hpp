#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ofdmrad/metrics.hpp"
#include "ofdmrad/waveform.hpp"

namespace ofdmrad {

/**
 * @brief One real-coded candidate: NK phases plus its evaluation.
 *
 * `rank` is the 1-based index of the non-dominated front the individual
 * fell into at the last sort; `crowding` is its NSGA-II crowding distance
 * there (+infinity on front boundaries).
 */
struct Individual {
  std::vector<double> phases;  // length N*K, each in [0, 2*pi)
  ObjectiveVector objectives;
  int rank = 0;
  double crowding = 0.0;
};

struct MooConfig {
  int population_size = 40;  // L, must be even
  int generations = 500;
  int n_objectives = 2;      // 2 = (PMEPR, PSLR); 3 adds ISLR
  double sbx_eta = 15.0;     // eta_c
  double mutation_eta = 20.0;  // eta_m
  double mutation_probability = -1.0;  // < 0 means 1/(N*K)
  double crossover_probability = 0.9;
  std::uint64_t seed = 1;
  int threads = 1;  // 0 = one per hardware thread
  // Hypervolume reference point (size n_objectives). Empty = derived from
  // the initial population: componentwise max + 1.
  std::vector<double> hv_reference;

  void validate() const;
};

// True when a is at least as good as b on every axis and strictly better
// on one (minimization).
bool dominates(std::span<const double> a, std::span<const double> b);

/**
 * @brief Fast non-dominated sort (minimization on every axis).
 *
 * Returns fronts as index lists: front 0 is the non-dominated set, each
 * later front is non-dominated once earlier fronts are removed. Fronts
 * partition the input; empty input yields no fronts.
 */
std::vector<std::vector<std::size_t>> non_dominated_sort(
    const std::vector<std::vector<double>>& objectives);

/**
 * @brief NSGA-II crowding distance for one front.
 *
 * Per objective the front is sorted; boundary individuals get +infinity,
 * interior ones accumulate the normalized gap between their neighbors.
 * An objective with zero range across the front contributes nothing.
 */
std::vector<double> crowding_distance(
    const std::vector<std::vector<double>>& front_objectives);

// Indices of the `keep` individuals NSGA-II retains from a combined
// population: whole fronts in order, the straddling front cut by crowding
// distance (descending, ties by index).
std::vector<std::size_t> environmental_selection(
    const std::vector<std::vector<double>>& objectives, std::size_t keep);

/**
 * @brief Hypervolume dominated by `points` within the box below `reference`.
 *
 * Minimization, 2 or 3 objectives. Points that fail to dominate the
 * reference on every axis contribute nothing.
 */
double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& reference);

// s = alpha*PMEPR + beta*PSLR + gamma*ISLR, all in dB.
double scalarized_objective(double alpha, double beta, double gamma,
                            const ObjectiveVector& objectives);

struct MooGeneration {
  int generation = 0;  // 0 = initial population
  int front_size = 0;  // rank-1 members of the current population
  // Hypervolume of the all-time nondominated archive against the fixed
  // reference point; nondecreasing by construction.
  double hypervolume = 0.0;
};

struct MooResult {
  std::vector<Individual> population;  // final population, size L
  std::vector<Individual> front;       // its rank-1 members
  // Nondominated set of every individual evaluated during the run. The
  // selection step alone can drop rank-1 points when a front overflows the
  // population, so the best attained trade-offs are archived externally,
  // mirroring the best-ever bookkeeping of the single-objective GA.
  std::vector<Individual> archive;
  std::vector<MooGeneration> trace;
  std::vector<double> hv_reference;    // reference point actually used
};

// Invoked after every environmental selection (and once for the initial
// population) with the generation number and the current population.
using MooCheckpoint =
    std::function<void(int generation, const std::vector<Individual>&)>;

/**
 * @brief NSGA-II over phase vectors (Deb's canonical loop).
 *
 * Per generation: binary tournaments (rank, then crowding, then random)
 * fill an L/2 parent pool; SBX plus polynomial mutation breed offspring
 * from shuffled pool pairings until L exist; the best L of the combined
 * 2L individuals survive by (rank, crowding). Runs exactly G generations;
 * with G=0 the initial population is evaluated and sorted only. Seeded
 * draws stay on the main thread, so runs are bit-reproducible.
 */
MooResult run_nsga2(const OfdmParams& params, const MooConfig& cfg,
                    const MooCheckpoint& checkpoint = {});

// id,phase_0..phase_{NK-1},pmepr_db,pslr_db,islr_db,rank,crowding
void write_front_csv(std::span<const Individual> front, std::ostream& out);
// generation,front_size,hypervolume
void write_moo_trace_csv(std::span<const MooGeneration> trace,
                         std::ostream& out);

}  // namespace ofdmrad
