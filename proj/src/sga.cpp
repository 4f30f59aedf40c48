#include "ofdmrad/sga.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "ofdmrad/encoding.hpp"
#include "ofdmrad/metrics.hpp"
#include "ofdmrad/parallel.hpp"

namespace ofdmrad {

void SgaConfig::validate(int n_subcarriers, int n_symbols) const {
  if (population_size < 2 || population_size % 2 != 0)
    throw std::invalid_argument("sga: population size must be even and >= 2");
  if (mutation_count < 0 || mutation_count > population_size)
    throw std::invalid_argument("sga: mutation count must be in 0..L");
  if (bits_per_phase < 1 || bits_per_phase > 30)
    throw std::invalid_argument("sga: bits_per_phase must be in 1..30");
  if (mean_gap_db < 0.0 || std_threshold_db < 0.0)
    throw std::invalid_argument("sga: stopping thresholds must be >= 0");
  if (max_generations < 1)
    throw std::invalid_argument("sga: max_generations must be >= 1");
  if (threads < 0) throw std::invalid_argument("sga: threads must be >= 0");
  const long long genes =
      static_cast<long long>(n_subcarriers) * n_symbols * bits_per_phase;
  if (genes < 2)
    throw std::invalid_argument("sga: need at least 2 genes for crossover");
}

namespace {

struct PopulationStats {
  int best_index = 0;
  int worst_index = 0;
  double best = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

PopulationStats compute_stats(const std::vector<double>& fitness) {
  PopulationStats stats;
  double sum = 0.0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    sum += fitness[i];
    if (fitness[i] < fitness[stats.best_index]) stats.best_index = (int)i;
    if (fitness[i] > fitness[stats.worst_index]) stats.worst_index = (int)i;
  }
  stats.best = fitness[stats.best_index];
  stats.mean = sum / fitness.size();
  double var = 0.0;
  for (double f : fitness) var += (f - stats.mean) * (f - stats.mean);
  stats.stddev = std::sqrt(var / fitness.size());
  return stats;
}

}  // namespace

SgaResult run_sga(const OfdmParams& params, const SgaConfig& cfg) {
  params.validate();
  cfg.validate(params.n_subcarriers, params.n_symbols);

  const int pop_size = cfg.population_size;
  const std::size_t genes = static_cast<std::size_t>(params.n_subcarriers) *
                            params.n_symbols * cfg.bits_per_phase;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coin(0, 1);

  std::vector<std::vector<std::uint8_t>> population(pop_size);
  for (auto& genome : population) {
    genome.resize(genes);
    for (auto& gene : genome) gene = static_cast<std::uint8_t>(coin(rng));
  }

  const auto evaluate = [&](const std::vector<std::uint8_t>& genome) {
    Chromosome chromosome;
    chromosome.genes = genome;
    const PhaseCodeMatrix codes = decode(chromosome, params.n_subcarriers,
                                         params.n_symbols, cfg.bits_per_phase);
    return power_ratio_db(pmepr(synthesize_pulse(params, codes)));
  };

  SgaResult result;
  std::vector<std::uint8_t> best_genome;
  double best_ever = std::numeric_limits<double>::infinity();

  std::vector<double> fitness(pop_size);
  std::vector<int> order(pop_size);
  std::vector<std::vector<std::uint8_t>> offspring(pop_size);

  for (int gen = 1; gen <= cfg.max_generations; ++gen) {
    parallel_for(static_cast<std::size_t>(pop_size), cfg.threads,
                 [&](std::size_t i) { fitness[i] = evaluate(population[i]); });

    const PopulationStats stats = compute_stats(fitness);
    if (stats.best < best_ever) {
      best_ever = stats.best;
      best_genome = population[stats.best_index];
    }
    result.trace.generations.push_back(
        {gen, stats.best, stats.mean, stats.stddev});
    result.trace.best_ever_db.push_back(best_ever);
    result.generations_run = gen;

    if (stats.mean <= stats.best + cfg.mean_gap_db &&
        stats.stddev <= cfg.std_threshold_db) {
      result.converged = true;
      break;
    }
    if (gen == cfg.max_generations) break;

    // Intermediate population: the worst individual gives way to a second
    // copy of the best.
    population[stats.worst_index] = population[stats.best_index];

    // Random disjoint pairs; one-point crossover at a uniform cut.
    for (int i = 0; i < pop_size; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<std::size_t> cut_dist(1, genes - 1);
    for (int pair = 0; pair < pop_size / 2; ++pair) {
      const auto& a = population[order[2 * pair]];
      const auto& b = population[order[2 * pair + 1]];
      const std::size_t cut = cut_dist(rng);
      auto& child_a = offspring[2 * pair];
      auto& child_b = offspring[2 * pair + 1];
      child_a.assign(a.begin(), a.end());
      child_b.assign(b.begin(), b.end());
      for (std::size_t g = cut; g < genes; ++g)
        std::swap(child_a[g], child_b[g]);
    }

    // Mutation runs every other generation: L_mut distinct offspring get
    // one gene flipped each.
    if (gen % 2 == 1 && cfg.mutation_count > 0) {
      for (int i = 0; i < pop_size; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      std::uniform_int_distribution<std::size_t> gene_dist(0, genes - 1);
      for (int m = 0; m < cfg.mutation_count; ++m) {
        auto& gene = offspring[order[m]][gene_dist(rng)];
        gene = gene ? 0 : 1;
      }
    }

    population.swap(offspring);
  }

  Chromosome best;
  best.genes = std::move(best_genome);
  best.fitness_db = best_ever;
  result.best_codes = decode(best, params.n_subcarriers, params.n_symbols,
                             cfg.bits_per_phase);
  result.best_pmepr_db = best_ever;
  return result;
}

void write_trace_csv(const SgaTrace& trace, std::ostream& out) {
  out << "generation,best_db,mean_db,std_db\n";
  char line[128];
  for (const auto& g : trace.generations) {
    std::snprintf(line, sizeof(line), "%d,%.4f,%.4f,%.4f\n", g.generation,
                  g.best_db, g.mean_db, g.std_db);
    out << line;
  }
}

}  // namespace ofdmrad
