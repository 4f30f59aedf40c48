// Acceptance gate: ten end-to-end checks, one verdict line each, exit
// code equal to the number of failures. Pass the CLI binary as argv[1]
// (or via OFDMRAD_CLI); without it, check 1 falls back to the library
// functions the CLI wraps.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ofdmrad/baselines.hpp"
#include "ofdmrad/design_rules.hpp"
#include "ofdmrad/detection.hpp"
#include "ofdmrad/fft.hpp"
#include "ofdmrad/metrics.hpp"
#include "ofdmrad/moo.hpp"
#include "ofdmrad/sga.hpp"
#include "ofdmrad/waveform.hpp"

namespace {

using namespace ofdmrad;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string g_cli;  // empty = use the library directly

struct Verdict {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buffer[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buffer, sizeof(buffer), pattern, args);
  va_end(args);
  return buffer;
}

double pmepr_db_of(const OfdmParams& params, const PhaseCodeMatrix& codes) {
  return evaluate_objectives(synthesize_pulse(params, codes),
                             params.bandwidth_hz)
      .pmepr_db;
}

// ---------------------------------------------------------------------
// 1. Frame design budgets.

bool run_design(double extent, double margin, double rmin, double& bandwidth,
                long long& n_max, double& pulse) {
  if (g_cli.empty()) {
    bandwidth = design::bandwidth_from_extent(extent, margin, 3e8);
    n_max = design::max_subcarriers(bandwidth, rmin, 3e8);
    pulse = design::max_pulse_length(rmin, 3e8);
    return true;
  }
  const std::string command = fmt(
      "'%s' design --range-extent %g --margin %g --rmin %g --c 3e8 2>&1",
      g_cli.c_str(), extent, margin, rmin);
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return false;
  std::string output;
  char buffer[512];
  while (std::fgets(buffer, sizeof(buffer), pipe) != nullptr)
    output += buffer;
  const int status = ::pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return false;
  const auto newline = output.find('\n');
  if (newline == std::string::npos) return false;
  return std::sscanf(output.c_str() + newline + 1, "%lf,%lld,%lf", &bandwidth,
                     &n_max, &pulse) == 3;
}

Verdict check_design() {
  struct Row {
    double extent, margin, bandwidth;
    long long n_max;
  };
  const Row rows[] = {{2.0, 1.0, 5e7, 500}, {10.0, 5.0, 1e7, 100}};
  for (const Row& row : rows) {
    double bandwidth = 0.0, pulse = 0.0;
    long long n_max = 0;
    if (!run_design(row.extent, row.margin, 1500.0, bandwidth, n_max, pulse))
      return {false, "design invocation failed"};
    if (bandwidth != row.bandwidth || n_max != row.n_max || pulse != 1e-5)
      return {false,
              fmt("extent=%g: got B=%g N=%lld tp=%g, want B=%g N=%lld tp=1e-5",
                  row.extent, bandwidth, n_max, pulse, row.bandwidth,
                  row.n_max)};
  }
  return {true, fmt("both budgets exact (%s)",
                    g_cli.empty() ? "library path" : "CLI path")};
}

// ---------------------------------------------------------------------
// 2. Newman full-band PMEPR near the 1.8x reference ratio.

Verdict check_newman() {
  const double target_db = power_ratio_db(1.8);
  std::string detail;
  for (int n : {100, 500}) {
    const OfdmParams params(n, 1, 1e6, 20);
    const double db = pmepr_db_of(params, newman_phases(n));
    detail += fmt("%sN=%d: %.3f dB", detail.empty() ? "" : ", ", n, db);
    if (std::abs(db - target_db) > 0.3)
      return {false, detail + fmt(" (want %.3f +/- 0.3)", target_db)};
  }
  return {true, detail + fmt(" (reference %.3f dB)", target_db)};
}

// ---------------------------------------------------------------------
// 3. Uncoded PMEPR equals N exactly at critical sampling.

Verdict check_uncoded() {
  double worst = 0.0;
  for (int n : {3, 10, 100}) {
    const OfdmParams params(n, 1, 1e6, 1);
    const double ratio = pmepr(synthesize_pulse(params, uncoded(n, 1)));
    worst = std::max(worst, std::abs(ratio - n));
  }
  return {worst <= 1e-9, fmt("max |PMEPR - N| = %.2e (tol 1e-9)", worst)};
}

// ---------------------------------------------------------------------
// 4. Masked GA strictly beats the same-mask Newman code.

Verdict check_masked_ga() {
  const double bound_db = power_ratio_db(3.5);
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const OfdmParams masked = apply_mask(OfdmParams(100, 1, 1e6, 20), 0.7,
                                         seed);
    SgaConfig cfg;
    cfg.population_size = 22;
    cfg.mutation_count = 5;
    cfg.bits_per_phase = 18;
    cfg.mean_gap_db = 0.0;
    cfg.std_threshold_db = 0.0;
    cfg.max_generations = 2000;
    cfg.seed = seed;
    cfg.threads = 0;
    const double ga_db = run_sga(masked, cfg).best_pmepr_db;
    const double newman_db = pmepr_db_of(masked, newman_phases(100));
    detail += fmt("%sseed %llu: %.2f vs %.2f dB", detail.empty() ? "" : ", ",
                  (unsigned long long)seed, ga_db, newman_db);
    if (ga_db > bound_db || ga_db >= newman_db)
      return {false, detail + fmt(" (bound %.2f dB)", bound_db)};
  }
  return {true, detail + fmt(" (bound %.2f dB)", bound_db)};
}

// ---------------------------------------------------------------------
// 5. GA equals the exhaustive optimum on tiny instances.

double exhaustive_best_db(const OfdmParams& params, int bits_per_phase) {
  const int n = params.n_subcarriers;
  const int levels = 1 << bits_per_phase;
  const long long total = 1LL << (n * bits_per_phase);
  std::vector<double> phases(n);
  double best = std::numeric_limits<double>::infinity();
  for (long long word = 0; word < total; ++word) {
    long long rest = word;
    for (int i = 0; i < n; ++i) {
      phases[i] = kTwoPi * (rest % levels) / levels;
      rest /= levels;
    }
    best = std::min(
        best, pmepr_db_of(params, PhaseCodeMatrix::from_phases(n, 1, phases)));
  }
  return best;
}

Verdict check_tiny_optimality() {
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (int q : {1, 2}) {
      const OfdmParams params(n, 1, 1e6, 20);
      const double optimum = exhaustive_best_db(params, q);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SgaConfig cfg;
        cfg.population_size = 8;
        cfg.mutation_count = 3;
        cfg.bits_per_phase = q;
        cfg.mean_gap_db = 0.0;
        cfg.std_threshold_db = 0.0;
        cfg.max_generations = 300;
        cfg.seed = seed;
        const double gap =
            std::abs(run_sga(params, cfg).best_pmepr_db - optimum);
        worst = std::max(worst, gap);
        if (gap > 1e-9)
          return {false, fmt("N=%d q=%d seed %llu misses optimum by %.2e dB",
                             n, q, (unsigned long long)seed, gap)};
      }
    }
  }
  return {true, fmt("4 instances x 5 seeds, max gap %.2e dB (tol 1e-9)",
                    worst)};
}

// ---------------------------------------------------------------------
// 6. QPSK GA meets the full-band bound.

Verdict check_qpsk() {
  const double bound_db = power_ratio_db(4.0);
  SgaConfig cfg;
  cfg.population_size = 22;
  cfg.mutation_count = 5;
  cfg.bits_per_phase = 2;
  cfg.mean_gap_db = 0.0;
  cfg.std_threshold_db = 0.0;
  cfg.max_generations = 2000;
  cfg.seed = 1;
  cfg.threads = 0;
  const double db = run_sga(OfdmParams(100, 1, 1e6, 20), cfg).best_pmepr_db;
  return {db <= bound_db, fmt("%.3f dB (bound %.3f dB)", db, bound_db)};
}

// ---------------------------------------------------------------------
// 7. Evolved front dominates random phase codes.

Verdict check_front_dominance() {
  const OfdmParams params(25, 4, 1e6, 20);
  MooConfig cfg;
  cfg.population_size = 40;
  cfg.generations = 1000;
  cfg.seed = 1;
  cfg.threads = 0;
  const MooResult result = run_nsga2(params, cfg);

  int dominated = 0;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    const ObjectiveVector point = evaluate_objectives(
        synthesize_pulse(params, random_phases(25, 4, 90000 + i)),
        params.bandwidth_hz);
    for (const Individual& member : result.front) {
      const bool no_worse = member.objectives.pmepr_db <= point.pmepr_db &&
                            member.objectives.pslr_db <= point.pslr_db;
      const bool better = member.objectives.pmepr_db < point.pmepr_db ||
                          member.objectives.pslr_db < point.pslr_db;
      if (no_worse && better) {
        ++dominated;
        break;
      }
    }
  }
  const double fraction = double(dominated) / draws;
  return {fraction >= 0.95,
          fmt("front of %zu dominates %d/%d random codes (%.1f%%, need 95%%)",
              result.front.size(), dominated, draws, 100.0 * fraction)};
}

// ---------------------------------------------------------------------
// 8. Sorting, crowding and hypervolume oracles.

std::vector<std::vector<std::size_t>> brute_force_sort(
    const std::vector<std::vector<double>>& objectives) {
  std::vector<std::size_t> remaining(objectives.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::vector<std::vector<std::size_t>> fronts;
  while (!remaining.empty()) {
    std::vector<std::size_t> front, rest;
    for (std::size_t a : remaining) {
      bool is_dominated = false;
      for (std::size_t b : remaining)
        if (b != a && dominates(objectives[b], objectives[a])) {
          is_dominated = true;
          break;
        }
      (is_dominated ? rest : front).push_back(a);
    }
    fronts.push_back(std::move(front));
    remaining = std::move(rest);
  }
  return fronts;
}

Verdict check_moo_oracles() {
  std::mt19937_64 rng(2024);
  for (int instance = 0; instance < 500; ++instance) {
    const std::size_t count = 1 + rng() % 50;
    const int dims = 2 + int(rng() % 2);
    std::vector<std::vector<double>> objectives(count);
    for (auto& row : objectives) {
      row.resize(dims);
      for (double& v : row) v = double(rng() % 5);
    }
    auto fast = non_dominated_sort(objectives);
    auto brute = brute_force_sort(objectives);
    for (auto& front : fast) std::sort(front.begin(), front.end());
    for (auto& front : brute) std::sort(front.begin(), front.end());
    if (fast != brute)
      return {false, fmt("sort mismatch on instance %d", instance)};
  }

  const std::vector<std::vector<double>> fixture = {{0, 2}, {1, 1}, {2, 0}};
  const std::vector<double> crowding = crowding_distance(fixture);
  const bool crowding_ok = std::isinf(crowding[0]) && crowding[1] == 2.0 &&
                           std::isinf(crowding[2]);
  if (!crowding_ok)
    return {false, fmt("crowding fixture: got {%g, %g, %g}, want {inf, 2, inf}",
                       crowding[0], crowding[1], crowding[2])};

  for (std::uint64_t seed : {2ull, 4ull, 6ull}) {
    MooConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 40;
    cfg.seed = seed;
    const MooResult result = run_nsga2(OfdmParams(8, 1, 1e6, 4), cfg);
    for (std::size_t g = 1; g < result.trace.size(); ++g)
      if (result.trace[g].hypervolume < result.trace[g - 1].hypervolume)
        return {false, fmt("hypervolume drops at generation %zu (seed %llu)",
                           g, (unsigned long long)seed)};
  }
  return {true,
          "500 sort instances, crowding fixture, hypervolume monotone x3"};
}

// ---------------------------------------------------------------------
// 9. Detection weighting.

Verdict check_detection() {
  int in_band = 0;
  double worst_power_dev = 0.0;
  ReflectivitySpectrum first_spectrum;
  WeightSolution first_weights;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TargetModel target =
        TargetModel::synthesize_rectangle(50, 10000.0, 10.0, 5.0, seed);
    const ReflectivitySpectrum spectrum =
        normalize_spectrum(reflectivity_spectrum(target, 9e9, 2e9, 100));
    const WeightSolution solution = optimal_weights(spectrum);
    if (seed == 1) {
      first_spectrum = spectrum;
      first_weights = solution;
    }
    in_band += solution.snr_gain_db >= 1.5 && solution.snr_gain_db <= 3.5;
    double power = 0.0;
    for (double w : solution.weights) power += w * w;
    worst_power_dev = std::max(worst_power_dev, std::abs(power - 100.0));
  }
  if (in_band < 15)
    return {false, fmt("only %d/20 gains inside [1.5, 3.5] dB", in_band)};
  if (worst_power_dev > 1e-10)
    return {false, fmt("weight power off by %.2e (tol 1e-10)",
                       worst_power_dev)};

  // SNR depends on the weights alone: the per-subcarrier magnitudes of the
  // critically sampled spectrum stay sqrt(N) * w_n for any phase code.
  OfdmParams frame(100, 1, 2e9, 1);
  frame.weights = first_weights.weights;
  const double snr_before = snr_linear(first_weights.weights, first_spectrum);
  double worst_mag_dev = 0.0;
  std::vector<std::complex<double>> bins(100);
  for (std::uint64_t code_seed : {7ull, 8ull, 9ull}) {
    const SampledPulse pulse =
        synthesize_pulse(frame, random_phases(100, 1, code_seed));
    fft::forward(pulse.samples, bins);
    for (int n = 0; n < 100; ++n)
      worst_mag_dev =
          std::max(worst_mag_dev, std::abs(std::abs(bins[n]) -
                                           10.0 * first_weights.weights[n]));
  }
  const double snr_after = snr_linear(first_weights.weights, first_spectrum);
  if (worst_mag_dev > 1e-10 || snr_before != snr_after)
    return {false, fmt("code change moved subcarrier power by %.2e",
                       worst_mag_dev)};

  // No random feasible weighting may beat the closed-form optimum.
  std::mt19937_64 rng(424242);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double optimal = snr_linear(first_weights.weights, first_spectrum);
  int beats = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<double> weights(100);
    double power = 0.0;
    for (double& w : weights) {
      w = std::abs(gauss(rng));
      power += w * w;
    }
    const double scale = std::sqrt(100.0 / power);
    for (double& w : weights) w *= scale;
    beats += snr_linear(weights, first_spectrum) > optimal;
  }
  if (beats > 0)
    return {false, fmt("%d/1000 random weightings beat the optimum", beats)};
  return {true, fmt("%d/20 gains in band, power dev %.1e, spectrum dev %.1e, "
                    "0/1000 random wins",
                    in_band, worst_power_dev, worst_mag_dev)};
}

// ---------------------------------------------------------------------
// 10. Metric properties on random frames.

Verdict check_metric_properties() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  double worst_acf_dev = 0.0;
  double min_pmepr_db = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + int(rng() % 11);
    const int k = 1 + int(rng() % 3);
    const int rho = 2 + int(rng() % 7);
    const OfdmParams params(n, k, 1e6, rho);
    const PhaseCodeMatrix codes = random_phases(n, k, 100000 + i);
    const SampledPulse pulse = synthesize_pulse(params, codes);
    const ObjectiveVector objectives =
        evaluate_objectives(pulse, params.bandwidth_hz);

    min_pmepr_db = std::min(min_pmepr_db, objectives.pmepr_db);
    if (objectives.pmepr_db < -1e-12)
      return {false, fmt("pulse %d: PMEPR %.3e dB below 0", i,
                         objectives.pmepr_db)};
    if (objectives.islr_db < objectives.pslr_db - 1e-12)
      return {false, fmt("pulse %d: ISLR %.3f dB below PSLR %.3f dB", i,
                         objectives.islr_db, objectives.pslr_db)};

    // Global phase rotation leaves every metric unchanged.
    const double shift = uniform(rng);
    std::vector<double> shifted(codes.phases().begin(), codes.phases().end());
    for (double& phase : shifted) phase += shift;
    const ObjectiveVector rotated = evaluate_objectives(
        synthesize_pulse(params, PhaseCodeMatrix::from_phases(n, k, shifted)),
        params.bandwidth_hz);
    if (std::abs(rotated.pmepr_db - objectives.pmepr_db) > 1e-9 ||
        std::abs(rotated.pslr_db - objectives.pslr_db) > 1e-9 ||
        std::abs(rotated.islr_db - objectives.islr_db) > 1e-9)
      return {false, fmt("pulse %d: metrics moved under a global phase", i)};

    // Autocorrelation: direct-sum reference for both lag signs.
    const AutocorrOutput acf = autocorrelation(pulse);
    const auto& x = pulse.samples;
    const int m_count = int(x.size());
    const double peak = acf.peak();
    for (int m = 0; m < m_count; ++m) {
      std::complex<double> positive = 0.0, negative = 0.0;
      for (int p = m; p < m_count; ++p) {
        positive += x[p] * std::conj(x[p - m]);
        negative += x[p - m] * std::conj(x[p]);
      }
      if (std::abs(negative - std::conj(positive)) > 1e-9 * peak)
        return {false, fmt("pulse %d: lag %d breaks conjugate symmetry", i,
                           m)};
      worst_acf_dev = std::max(
          {worst_acf_dev, std::abs(acf.at_lag(m) - positive) / peak,
           std::abs(acf.at_lag(-m) - negative) / peak});
      if (std::abs(acf.at_lag(m)) > peak * (1.0 + 1e-12))
        return {false, fmt("pulse %d: lag %d above the zero-lag peak", i, m)};
    }
    if (worst_acf_dev > 1e-9)
      return {false, fmt("pulse %d: FFT autocorrelation off by %.2e", i,
                         worst_acf_dev)};

    // Oversampling can only reveal higher peaks.
    const OfdmParams critical(n, k, 1e6, 1);
    if (objectives.pmepr_db < pmepr_db_of(critical, codes) - 1e-9)
      return {false, fmt("pulse %d: oversampled PMEPR below critical", i)};
  }
  return {true, fmt("1000 frames, min PMEPR %.2e dB, FFT-vs-direct dev %.1e",
                    min_pmepr_db, worst_acf_dev)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    g_cli = argv[1];
  } else if (const char* env = std::getenv("OFDMRAD_CLI")) {
    g_cli = env;
  }

  struct Check {
    const char* label;
    Verdict (*run)();
  };
  const Check checks[] = {
      {"frame design reproduces the reference budgets", check_design},
      {"Newman full-band PMEPR sits at the reference level", check_newman},
      {"uncoded PMEPR equals N at critical sampling", check_uncoded},
      {"masked GA beats the Newman baseline under a 70% mask",
       check_masked_ga},
      {"GA reaches the exhaustive optimum on tiny instances",
       check_tiny_optimality},
      {"QPSK GA meets the full-band PMEPR bound", check_qpsk},
      {"evolved front dominates random phase codes", check_front_dominance},
      {"front sorting, crowding and hypervolume oracles agree",
       check_moo_oracles},
      {"detection weighting maximizes matched-filter SNR", check_detection},
      {"pulse metric properties hold on random frames",
       check_metric_properties},
  };

  int failures = 0;
  int index = 0;
  for (const Check& check : checks) {
    ++index;
    Verdict verdict;
    try {
      verdict = check.run();
    } catch (const std::exception& error) {
      verdict = {false, fmt("threw: %s", error.what())};
    }
    std::printf("[%s] %2d. %s\n", verdict.ok ? "PASS" : "FAIL", index,
                check.label);
    if (!verdict.detail.empty())
      std::printf("           %s\n", verdict.detail.c_str());
    failures += !verdict.ok;
  }
  std::printf("%d/10 checks passed\n", 10 - failures);
  return failures;
}
