#include "ofdmrad/moo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "ofdmrad/parallel.hpp"

namespace ofdmrad {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void MooConfig::validate() const {
  if (population_size < 4 || population_size % 2 != 0)
    throw std::invalid_argument("moo: population size must be even and >= 4");
  if (generations < 0)
    throw std::invalid_argument("moo: generations must be >= 0");
  if (n_objectives != 2 && n_objectives != 3)
    throw std::invalid_argument("moo: n_objectives must be 2 or 3");
  if (!(sbx_eta > 0.0) || !(mutation_eta > 0.0))
    throw std::invalid_argument("moo: distribution indices must be positive");
  if (mutation_probability > 1.0)
    throw std::invalid_argument("moo: mutation probability must be <= 1");
  if (crossover_probability < 0.0 || crossover_probability > 1.0)
    throw std::invalid_argument("moo: crossover probability must be in 0..1");
  if (threads < 0) throw std::invalid_argument("moo: threads must be >= 0");
  if (!hv_reference.empty() &&
      hv_reference.size() != static_cast<std::size_t>(n_objectives))
    throw std::invalid_argument(
        "moo: reference point size must match n_objectives");
}

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: dimension mismatch");
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly = true;
  }
  return strictly;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(
    const std::vector<std::vector<double>>& objectives) {
  const std::size_t n = objectives.size();
  std::vector<std::vector<std::size_t>> fronts;
  if (n == 0) return fronts;
  for (const auto& row : objectives)
    if (row.size() != objectives.front().size())
      throw std::invalid_argument("sort: dimension mismatch");

  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> domination_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(objectives[i], objectives[j])) {
        dominated[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(objectives[j], objectives[i])) {
        dominated[j].push_back(i);
        ++domination_count[i];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i)
    if (domination_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t i : current)
      for (std::size_t j : dominated[i])
        if (--domination_count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(
    const std::vector<std::vector<double>>& front_objectives) {
  const std::size_t n = front_objectives.size();
  if (n == 0) return {};
  const std::size_t dims = front_objectives.front().size();
  for (const auto& row : front_objectives)
    if (row.size() != dims)
      throw std::invalid_argument("crowding: dimension mismatch");

  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInf);
    return distance;
  }

  std::vector<std::size_t> order(n);
  for (std::size_t axis = 0; axis < dims; ++axis) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (front_objectives[a][axis] != front_objectives[b][axis])
        return front_objectives[a][axis] < front_objectives[b][axis];
      return a < b;
    });
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    const double range = front_objectives[order.back()][axis] -
                         front_objectives[order.front()][axis];
    if (range <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      distance[order[i]] += (front_objectives[order[i + 1]][axis] -
                             front_objectives[order[i - 1]][axis]) /
                            range;
  }
  return distance;
}

std::vector<std::size_t> environmental_selection(
    const std::vector<std::vector<double>>& objectives, std::size_t keep) {
  if (keep > objectives.size())
    throw std::invalid_argument("selection: keep exceeds population");
  std::vector<std::size_t> kept;
  kept.reserve(keep);
  for (const auto& front : non_dominated_sort(objectives)) {
    if (kept.size() == keep) break;
    if (kept.size() + front.size() <= keep) {
      kept.insert(kept.end(), front.begin(), front.end());
      continue;
    }
    std::vector<std::vector<double>> front_objs;
    front_objs.reserve(front.size());
    for (std::size_t i : front) front_objs.push_back(objectives[i]);
    const std::vector<double> crowd = crowding_distance(front_objs);

    std::vector<std::size_t> order(front.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
      return front[a] < front[b];
    });
    for (std::size_t i = 0; kept.size() < keep; ++i)
      kept.push_back(front[order[i]]);
    break;
  }
  return kept;
}

namespace {

double hypervolume_2d(std::vector<std::vector<double>> points,
                      const std::vector<double>& reference) {
  std::sort(points.begin(), points.end());
  double volume = 0.0;
  double best_y = reference[1];
  // Staircase sweep left to right; each kept point owns the strip from its
  // x to the next kept x, up to the lowest y seen so far.
  std::vector<std::vector<double>> staircase;
  for (const auto& p : points) {
    if (p[1] < best_y) {
      staircase.push_back(p);
      best_y = p[1];
    }
  }
  for (std::size_t i = 0; i < staircase.size(); ++i) {
    const double x_next =
        (i + 1 < staircase.size()) ? staircase[i + 1][0] : reference[0];
    volume += (x_next - staircase[i][0]) * (reference[1] - staircase[i][1]);
  }
  return volume;
}

}  // namespace

double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& reference) {
  const std::size_t dims = reference.size();
  if (dims != 2 && dims != 3)
    throw std::invalid_argument("hypervolume: 2 or 3 objectives only");

  std::vector<std::vector<double>> kept;
  for (const auto& p : points) {
    if (p.size() != dims)
      throw std::invalid_argument("hypervolume: dimension mismatch");
    bool inside = true;
    for (std::size_t a = 0; a < dims; ++a)
      if (!(p[a] < reference[a])) inside = false;
    if (inside) kept.push_back(p);
  }
  if (kept.empty()) return 0.0;
  if (dims == 2) return hypervolume_2d(std::move(kept), reference);

  // Sweep z slabs: within [z_j, z_next) exactly the points with z <= z_j
  // cover area, so the slab volume is that 2D hypervolume times its height.
  std::vector<double> zs;
  for (const auto& p : kept) zs.push_back(p[2]);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

  double volume = 0.0;
  const std::vector<double> ref_xy{reference[0], reference[1]};
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const double z_next = (j + 1 < zs.size()) ? zs[j + 1] : reference[2];
    std::vector<std::vector<double>> slab;
    for (const auto& p : kept)
      if (p[2] <= zs[j]) slab.push_back({p[0], p[1]});
    volume += (z_next - zs[j]) * hypervolume_2d(std::move(slab), ref_xy);
  }
  return volume;
}

double scalarized_objective(double alpha, double beta, double gamma,
                            const ObjectiveVector& objectives) {
  return alpha * objectives.pmepr_db + beta * objectives.pslr_db +
         gamma * objectives.islr_db;
}

namespace {

std::vector<double> objective_slice(const ObjectiveVector& objectives,
                                    int n_objectives) {
  std::vector<double> slice{objectives.pmepr_db, objectives.pslr_db};
  if (n_objectives == 3) slice.push_back(objectives.islr_db);
  return slice;
}

void assign_ranks(std::vector<Individual>& population, int n_objectives) {
  std::vector<std::vector<double>> objs;
  objs.reserve(population.size());
  for (const auto& ind : population)
    objs.push_back(objective_slice(ind.objectives, n_objectives));
  const auto fronts = non_dominated_sort(objs);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    std::vector<std::vector<double>> front_objs;
    front_objs.reserve(fronts[f].size());
    for (std::size_t i : fronts[f]) front_objs.push_back(objs[i]);
    const std::vector<double> crowd = crowding_distance(front_objs);
    for (std::size_t i = 0; i < fronts[f].size(); ++i) {
      population[fronts[f][i]].rank = static_cast<int>(f) + 1;
      population[fronts[f][i]].crowding = crowd[i];
    }
  }
}

class Variation {
 public:
  Variation(const MooConfig& cfg, std::size_t n_vars, std::mt19937_64& rng)
      : cfg_(cfg), n_vars_(n_vars), rng_(rng) {}

  // Binary tournament on (rank, crowding); ties fall to a coin flip.
  std::size_t tournament(const std::vector<Individual>& population) {
    std::uniform_int_distribution<std::size_t> first(0, population.size() - 1);
    std::uniform_int_distribution<std::size_t> second(0, population.size() - 2);
    const std::size_t a = first(rng_);
    std::size_t b = second(rng_);
    if (b >= a) ++b;
    const Individual& ia = population[a];
    const Individual& ib = population[b];
    if (ia.rank != ib.rank) return ia.rank < ib.rank ? a : b;
    if (ia.crowding != ib.crowding) return ia.crowding > ib.crowding ? a : b;
    return coin() ? a : b;
  }

  // Simulated binary crossover; children wrapped back into [0, 2*pi).
  std::pair<std::vector<double>, std::vector<double>> crossover(
      const std::vector<double>& p1, const std::vector<double>& p2) {
    std::vector<double> c1 = p1;
    std::vector<double> c2 = p2;
    if (uniform() > cfg_.crossover_probability) return {c1, c2};
    for (std::size_t v = 0; v < n_vars_; ++v) {
      if (uniform() > 0.5) continue;
      if (std::abs(p1[v] - p2[v]) < 1e-14) continue;
      const double lo = std::min(p1[v], p2[v]);
      const double hi = std::max(p1[v], p2[v]);
      const double u = uniform();
      const double exponent = 1.0 / (cfg_.sbx_eta + 1.0);
      const double beta = u <= 0.5 ? std::pow(2.0 * u, exponent)
                                   : std::pow(0.5 / (1.0 - u), exponent);
      double a = 0.5 * ((1.0 + beta) * lo + (1.0 - beta) * hi);
      double b = 0.5 * ((1.0 - beta) * lo + (1.0 + beta) * hi);
      if (coin()) std::swap(a, b);
      c1[v] = wrap_phase(a);
      c2[v] = wrap_phase(b);
    }
    return {c1, c2};
  }

  // Polynomial mutation with step scale 2*pi, wrapped.
  void mutate(std::vector<double>& phases, double probability) {
    for (std::size_t v = 0; v < n_vars_; ++v) {
      if (uniform() > probability) continue;
      const double u = uniform();
      const double exponent = 1.0 / (cfg_.mutation_eta + 1.0);
      const double delta = u < 0.5
                               ? std::pow(2.0 * u, exponent) - 1.0
                               : 1.0 - std::pow(2.0 * (1.0 - u), exponent);
      phases[v] = wrap_phase(phases[v] + delta * kTwoPi);
    }
  }

 private:
  double uniform() { return draw_(rng_); }
  bool coin() { return uniform() <= 0.5; }

  const MooConfig& cfg_;
  std::size_t n_vars_;
  std::mt19937_64& rng_;
  std::uniform_real_distribution<double> draw_{0.0, 1.0};
};

}  // namespace

MooResult run_nsga2(const OfdmParams& params, const MooConfig& cfg,
                    const MooCheckpoint& checkpoint) {
  params.validate();
  cfg.validate();

  const std::size_t n_vars =
      static_cast<std::size_t>(params.n_subcarriers) * params.n_symbols;
  const double mutation_probability =
      cfg.mutation_probability < 0.0
          ? 1.0 / static_cast<double>(n_vars)
          : cfg.mutation_probability;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> phase_draw(0.0, kTwoPi);
  Variation variation(cfg, n_vars, rng);

  const auto evaluate_all = [&](std::vector<Individual>& group) {
    parallel_for(group.size(), cfg.threads, [&](std::size_t i) {
      const PhaseCodeMatrix codes = PhaseCodeMatrix::from_phases(
          params.n_subcarriers, params.n_symbols, group[i].phases);
      group[i].objectives =
          evaluate_objectives(synthesize_pulse(params, codes),
                              params.bandwidth_hz);
    });
  };

  std::vector<Individual> population(cfg.population_size);
  for (auto& ind : population) {
    ind.phases.resize(n_vars);
    for (auto& phase : ind.phases) phase = phase_draw(rng);
  }
  evaluate_all(population);
  assign_ranks(population, cfg.n_objectives);

  MooResult result;
  result.hv_reference = cfg.hv_reference;
  if (result.hv_reference.empty()) {
    result.hv_reference.assign(cfg.n_objectives,
                               -std::numeric_limits<double>::infinity());
    for (const auto& ind : population) {
      const auto slice = objective_slice(ind.objectives, cfg.n_objectives);
      for (int a = 0; a < cfg.n_objectives; ++a)
        result.hv_reference[a] = std::max(result.hv_reference[a], slice[a]);
    }
    for (auto& r : result.hv_reference) r += 1.0;
  }

  // All-time nondominated archive. Environmental selection can cut rank-1
  // points once a front overflows L, so attained trade-offs are kept here,
  // outside the evolving population.
  std::vector<Individual> archive;
  std::vector<std::vector<double>> archive_objs;
  const auto absorb = [&](const std::vector<Individual>& group) {
    for (const auto& ind : group) {
      const auto objs = objective_slice(ind.objectives, cfg.n_objectives);
      bool covered = false;
      for (const auto& held : archive_objs) {
        if (held == objs || dominates(held, objs)) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      std::size_t kept = 0;
      for (std::size_t i = 0; i < archive.size(); ++i) {
        if (dominates(objs, archive_objs[i])) continue;
        if (kept != i) {
          archive[kept] = std::move(archive[i]);
          archive_objs[kept] = std::move(archive_objs[i]);
        }
        ++kept;
      }
      archive.resize(kept);
      archive_objs.resize(kept);
      archive.push_back(ind);
      archive.back().rank = 1;
      archive.back().crowding = 0.0;
      archive_objs.push_back(objs);
    }
  };
  absorb(population);

  const auto record = [&](int generation) {
    int front_size = 0;
    for (const auto& ind : population)
      if (ind.rank == 1) ++front_size;
    result.trace.push_back({generation, front_size,
                            hypervolume(archive_objs, result.hv_reference)});
  };
  record(0);
  if (checkpoint) checkpoint(0, population);

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    std::vector<std::size_t> pool(cfg.population_size / 2);
    for (auto& parent : pool) parent = variation.tournament(population);

    std::vector<Individual> offspring;
    offspring.reserve(cfg.population_size);
    std::vector<std::size_t> order(pool.size());
    while (offspring.size() < static_cast<std::size_t>(cfg.population_size)) {
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i = 0;
           i + 1 < order.size() &&
           offspring.size() < static_cast<std::size_t>(cfg.population_size);
           i += 2) {
        auto children = variation.crossover(population[pool[order[i]]].phases,
                                            population[pool[order[i + 1]]].phases);
        variation.mutate(children.first, mutation_probability);
        variation.mutate(children.second, mutation_probability);
        offspring.push_back({std::move(children.first), {}, 0, 0.0});
        if (offspring.size() < static_cast<std::size_t>(cfg.population_size))
          offspring.push_back({std::move(children.second), {}, 0, 0.0});
      }
    }
    evaluate_all(offspring);
    absorb(offspring);

    std::vector<Individual> combined = std::move(population);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    std::vector<std::vector<double>> combined_objs;
    combined_objs.reserve(combined.size());
    for (const auto& ind : combined)
      combined_objs.push_back(
          objective_slice(ind.objectives, cfg.n_objectives));

    population.clear();
    population.reserve(cfg.population_size);
    for (std::size_t i : environmental_selection(
             combined_objs, static_cast<std::size_t>(cfg.population_size)))
      population.push_back(std::move(combined[i]));
    assign_ranks(population, cfg.n_objectives);

    record(gen);
    if (checkpoint) checkpoint(gen, population);
  }

  for (const auto& ind : population)
    if (ind.rank == 1) result.front.push_back(ind);
  result.population = std::move(population);
  result.archive = std::move(archive);
  return result;
}

void write_front_csv(std::span<const Individual> front, std::ostream& out) {
  if (front.empty()) {
    out << "id,pmepr_db,pslr_db,islr_db,rank,crowding\n";
    return;
  }
  out << "id";
  for (std::size_t v = 0; v < front.front().phases.size(); ++v)
    out << ",phase_" << v;
  out << ",pmepr_db,pslr_db,islr_db,rank,crowding\n";

  char buffer[64];
  for (std::size_t i = 0; i < front.size(); ++i) {
    out << i;
    for (double phase : front[i].phases) {
      std::snprintf(buffer, sizeof(buffer), ",%.17g", phase);
      out << buffer;
    }
    std::snprintf(buffer, sizeof(buffer), ",%.4f,%.4f,%.4f,%d,",
                  front[i].objectives.pmepr_db, front[i].objectives.pslr_db,
                  front[i].objectives.islr_db, front[i].rank);
    out << buffer;
    if (std::isinf(front[i].crowding)) {
      out << "inf";
    } else {
      std::snprintf(buffer, sizeof(buffer), "%.6g", front[i].crowding);
      out << buffer;
    }
    out << "\n";
  }
}

void write_moo_trace_csv(std::span<const MooGeneration> trace,
                         std::ostream& out) {
  out << "generation,front_size,hypervolume\n";
  char line[96];
  for (const auto& g : trace) {
    std::snprintf(line, sizeof(line), "%d,%d,%.10g\n", g.generation,
                  g.front_size, g.hypervolume);
    out << line;
  }
}

}  // namespace ofdmrad
