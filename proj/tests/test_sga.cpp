#include "ofdmrad/sga.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ofdmrad/baselines.hpp"
#include "ofdmrad/metrics.hpp"

using namespace ofdmrad;

namespace {

double pmepr_db_of(const OfdmParams& params, const PhaseCodeMatrix& codes) {
  return power_ratio_db(pmepr(synthesize_pulse(params, codes)));
}

// Smallest PMEPR over every q-bit code for a tiny frame, by enumeration.
double exhaustive_optimum_db(const OfdmParams& params, int bits_per_phase) {
  const int levels = 1 << bits_per_phase;
  const int n = params.n_subcarriers;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= levels;
  double best = std::numeric_limits<double>::infinity();
  for (long long v = 0; v < total; ++v) {
    PhaseCodeMatrix codes(n, 1);
    long long rest = v;
    for (int i = 0; i < n; ++i) {
      codes.set_phase(i, 0,
                      2.0 * std::numbers::pi * (rest % levels) / levels);
      rest /= levels;
    }
    best = std::min(best, pmepr_db_of(params, codes));
  }
  return best;
}

double std_of_best_diffs(const SgaTrace& trace) {
  const auto& gens = trace.generations;
  REQUIRE(gens.size() >= 2);
  const std::size_t count = gens.size() - 1;
  std::vector<double> diffs(count);
  double mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    diffs[i] = gens[i + 1].best_db - gens[i].best_db;
    mean += diffs[i];
  }
  mean /= static_cast<double>(count);
  double var = 0.0;
  for (double d : diffs) var += (d - mean) * (d - mean);
  return std::sqrt(var / static_cast<double>(count));
}

}  // namespace

TEST_SUITE("sga") {

TEST_CASE("config validation") {
  const SgaConfig base;
  base.validate(10, 1);

  SgaConfig cfg = base;
  cfg.population_size = 7;
  CHECK_THROWS_AS(cfg.validate(10, 1), std::invalid_argument);
  cfg = base;
  cfg.population_size = 0;
  CHECK_THROWS_AS(cfg.validate(10, 1), std::invalid_argument);
  cfg = base;
  cfg.mutation_count = 23;
  CHECK_THROWS_AS(cfg.validate(10, 1), std::invalid_argument);
  cfg = base;
  cfg.bits_per_phase = 0;
  CHECK_THROWS_AS(cfg.validate(10, 1), std::invalid_argument);
  cfg = base;
  cfg.bits_per_phase = 31;
  CHECK_THROWS_AS(cfg.validate(10, 1), std::invalid_argument);
  cfg = base;
  cfg.mean_gap_db = -0.1;
  CHECK_THROWS_AS(cfg.validate(10, 1), std::invalid_argument);
  cfg = base;
  cfg.max_generations = 0;
  CHECK_THROWS_AS(cfg.validate(10, 1), std::invalid_argument);
  cfg = base;
  cfg.bits_per_phase = 1;
  CHECK_THROWS_AS(cfg.validate(1, 1), std::invalid_argument);  // one gene
}

TEST_CASE("fixed seed reproduces the run bit for bit") {
  const OfdmParams params(8, 1, 1e6, 8);
  SgaConfig cfg;
  cfg.max_generations = 60;
  cfg.seed = 42;

  const SgaResult a = run_sga(params, cfg);
  const SgaResult b = run_sga(params, cfg);
  REQUIRE(a.trace.generations.size() == b.trace.generations.size());
  for (std::size_t i = 0; i < a.trace.generations.size(); ++i) {
    CHECK(a.trace.generations[i].best_db == b.trace.generations[i].best_db);
    CHECK(a.trace.generations[i].mean_db == b.trace.generations[i].mean_db);
    CHECK(a.trace.generations[i].std_db == b.trace.generations[i].std_db);
  }
  CHECK(a.best_pmepr_db == b.best_pmepr_db);
  for (int n = 0; n < 8; ++n)
    CHECK(a.best_codes.phase(n, 0) == b.best_codes.phase(n, 0));

  cfg.seed = 43;
  const SgaResult c = run_sga(params, cfg);
  bool differs = c.best_pmepr_db != a.best_pmepr_db;
  for (int n = 0; n < 8 && !differs; ++n)
    differs = c.best_codes.phase(n, 0) != a.best_codes.phase(n, 0);
  CHECK(differs);
}

TEST_CASE("worker thread count does not change the result") {
  const OfdmParams params(8, 1, 1e6, 8);
  SgaConfig cfg;
  cfg.max_generations = 40;
  cfg.seed = 7;

  const SgaResult serial = run_sga(params, cfg);
  cfg.threads = 4;
  const SgaResult parallel = run_sga(params, cfg);
  REQUIRE(serial.trace.generations.size() ==
          parallel.trace.generations.size());
  for (std::size_t i = 0; i < serial.trace.generations.size(); ++i)
    CHECK(serial.trace.generations[i].best_db ==
          parallel.trace.generations[i].best_db);
  CHECK(serial.best_pmepr_db == parallel.best_pmepr_db);
}

TEST_CASE("trace bookkeeping invariants") {
  const OfdmParams params(10, 1, 1e6, 8);
  SgaConfig cfg;
  cfg.max_generations = 120;
  cfg.mean_gap_db = 0.0;
  cfg.std_threshold_db = 0.0;
  cfg.seed = 3;

  const SgaResult result = run_sga(params, cfg);
  const auto& gens = result.trace.generations;
  REQUIRE(gens.size() == static_cast<std::size_t>(result.generations_run));
  REQUIRE(result.trace.best_ever_db.size() == gens.size());

  double running_best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    CHECK(gens[i].generation == static_cast<int>(i) + 1);
    CHECK(gens[i].mean_db >= gens[i].best_db);
    CHECK(gens[i].std_db >= 0.0);
    running_best = std::min(running_best, gens[i].best_db);
    CHECK(result.trace.best_ever_db[i] == running_best);
    if (i > 0)
      CHECK(result.trace.best_ever_db[i] <= result.trace.best_ever_db[i - 1]);
  }
  CHECK(result.best_pmepr_db == result.trace.best_ever_db.back());
}

TEST_CASE("best codes re-evaluate to the reported fitness") {
  const OfdmParams params(12, 2, 1e6, 8);
  SgaConfig cfg;
  cfg.max_generations = 50;
  cfg.seed = 11;
  const SgaResult result = run_sga(params, cfg);
  CHECK(pmepr_db_of(params, result.best_codes) ==
        doctest::Approx(result.best_pmepr_db).epsilon(1e-14));
}

TEST_CASE("convergence flag and generation cap") {
  const OfdmParams params(8, 1, 1e6, 8);
  SgaConfig cfg;
  cfg.max_generations = 5;
  cfg.mean_gap_db = 0.0;
  cfg.std_threshold_db = 0.0;
  cfg.seed = 1;
  const SgaResult capped = run_sga(params, cfg);
  CHECK(capped.generations_run == 5);
  CHECK_FALSE(capped.converged);

  // Two BPSK tones always produce the same envelope ratio, so the very
  // first population has zero fitness spread and the loop stops at once.
  const OfdmParams tiny(2, 1, 1e6, 20);
  SgaConfig tiny_cfg;
  tiny_cfg.population_size = 4;
  tiny_cfg.mutation_count = 2;
  tiny_cfg.bits_per_phase = 1;
  tiny_cfg.seed = 5;
  const SgaResult done = run_sga(tiny, tiny_cfg);
  CHECK(done.converged);
  CHECK(done.generations_run == 1);
}

TEST_CASE("bpsk pair matches the exhaustive optimum") {
  // N=2, q=1: only 4 codes exist and all share PMEPR = 2 (3.0103 dB).
  const OfdmParams params(2, 1, 1e6, 20);
  const double best = exhaustive_optimum_db(params, 1);
  CHECK(best == doctest::Approx(power_ratio_db(2.0)).epsilon(1e-12));

  SgaConfig cfg;
  cfg.population_size = 4;
  cfg.mutation_count = 2;
  cfg.bits_per_phase = 1;
  cfg.max_generations = 50;
  cfg.seed = 9;
  const SgaResult result = run_sga(params, cfg);
  CHECK(result.best_pmepr_db == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("qpsk triple reaches the exhaustive optimum from any seed") {
  const OfdmParams params(3, 1, 1e6, 20);
  const double best = exhaustive_optimum_db(params, 2);  // 64 codes
  CHECK(best == doctest::Approx(2.218487).epsilon(1e-5));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SgaConfig cfg;
    cfg.population_size = 8;
    cfg.mutation_count = 3;
    cfg.bits_per_phase = 2;
    cfg.mean_gap_db = 0.0;
    cfg.std_threshold_db = 0.0;
    cfg.max_generations = 300;
    cfg.seed = seed;
    const SgaResult result = run_sga(params, cfg);
    CHECK(result.best_pmepr_db == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("ten tones optimized below the quadratic-phase reference") {
  const OfdmParams params(10, 1, 1e6, 20);
  const double newman_db = pmepr_db_of(params, newman_phases(10));

  SgaConfig cfg;
  cfg.mean_gap_db = 0.0;
  cfg.std_threshold_db = 0.0;
  cfg.max_generations = 2000;
  cfg.seed = 1;
  const SgaResult result = run_sga(params, cfg);
  CHECK(result.best_pmepr_db < newman_db);
}

TEST_CASE("coarse phase grids converge with larger fitness swings") {
  // Generation-to-generation movement of the population best is noticeably
  // rougher at q=2 than at q=18 on the same frame.
  const OfdmParams params(12, 1, 1e6, 8);
  double avg_sd[2] = {0.0, 0.0};
  const int qs[2] = {2, 18};
  for (int which = 0; which < 2; ++which) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      SgaConfig cfg;
      cfg.bits_per_phase = qs[which];
      cfg.mean_gap_db = 0.0;
      cfg.std_threshold_db = 0.0;
      cfg.max_generations = 400;
      cfg.seed = seed;
      avg_sd[which] += std_of_best_diffs(run_sga(params, cfg).trace);
    }
    avg_sd[which] /= 3.0;
  }
  CHECK(avg_sd[0] > 1.2 * avg_sd[1]);
}

TEST_CASE("trace csv layout") {
  const OfdmParams params(4, 1, 1e6, 8);
  SgaConfig cfg;
  cfg.bits_per_phase = 2;
  cfg.max_generations = 3;
  cfg.mean_gap_db = 0.0;
  cfg.std_threshold_db = 0.0;
  const SgaResult result = run_sga(params, cfg);

  std::ostringstream out;
  write_trace_csv(result.trace, out);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "generation,best_db,mean_db,std_db");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    int generation = 0;
    double best = 0.0, mean = 0.0, sd = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &generation, &best,
                        &mean, &sd) == 4);
    CHECK(generation == rows);
  }
  CHECK(rows == result.generations_run);
}

}  // TEST_SUITE
