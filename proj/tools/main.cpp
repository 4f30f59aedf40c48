// Command-line driver: designs pulse frames, runs the optimizers and
// baselines, and emits every result as CSV for plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ofdmrad/baselines.hpp"
#include "ofdmrad/design_rules.hpp"
#include "ofdmrad/detection.hpp"
#include "ofdmrad/io.hpp"
#include "ofdmrad/metrics.hpp"
#include "ofdmrad/moo.hpp"
#include "ofdmrad/sga.hpp"
#include "ofdmrad/waveform.hpp"

namespace {

using namespace ofdmrad;

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

void print_metrics_row(const ObjectiveVector& objectives) {
  std::printf("pmepr_db,pslr_db,islr_db\n%.4f,%.4f,%.4f\n",
              objectives.pmepr_db, objectives.pslr_db, objectives.islr_db);
}

struct DesignArgs {
  double range_extent = 0.0;
  double margin = 0.0;
  double rmin = 0.0;
  double c = design::kSpeedOfLight;
};

void add_design(CLI::App& app) {
  auto args = std::make_shared<DesignArgs>();
  CLI::App* cmd = app.add_subcommand(
      "design", "Derive bandwidth, subcarrier budget and pulse length");
  cmd->add_option("--range-extent", args->range_extent,
                  "Target range extent to resolve (m)")
      ->required();
  cmd->add_option("--margin", args->margin, "Extra resolution margin (m)")
      ->required();
  cmd->add_option("--rmin", args->rmin, "Closest target range (m)")
      ->required();
  cmd->add_option("--c", args->c, "Wave speed (m/s)")
      ->capture_default_str();
  cmd->callback([args] {
    const double bandwidth =
        design::bandwidth_from_extent(args->range_extent, args->margin,
                                      args->c);
    std::printf("bandwidth_hz,n_max,pulse_length_s\n%.10g,%lld,%.10g\n",
                bandwidth, design::max_subcarriers(bandwidth, args->rmin,
                                                   args->c),
                design::max_pulse_length(args->rmin, args->c));
  });
}

struct FrameArgs {
  int n = 0;
  int k = 1;
  double bandwidth = 1e6;
  int rho = 20;
  double sparsity = 1.0;
};

void add_frame_options(CLI::App* cmd, FrameArgs& frame, bool with_sparsity) {
  cmd->add_option("--n", frame.n, "Subcarrier count")->required();
  cmd->add_option("--k", frame.k, "Symbols per pulse")
      ->capture_default_str();
  cmd->add_option("--bandwidth", frame.bandwidth, "Pulse bandwidth (Hz)")
      ->capture_default_str();
  cmd->add_option("--rho", frame.rho, "Oversampling factor")
      ->capture_default_str();
  if (with_sparsity)
    cmd->add_option("--sparsity", frame.sparsity,
                    "Fraction of subcarriers kept active")
        ->capture_default_str();
}

OfdmParams make_params(const FrameArgs& frame, std::uint64_t seed) {
  OfdmParams params(frame.n, frame.k, frame.bandwidth, frame.rho);
  if (frame.sparsity < 1.0) params = apply_mask(params, frame.sparsity, seed);
  return params;
}

struct PmeprArgs {
  FrameArgs frame;
  SgaConfig sga;
  std::string out_dir = ".";
};

void add_optimize_pmepr(CLI::App& optimize) {
  auto args = std::make_shared<PmeprArgs>();
  CLI::App* cmd = optimize.add_subcommand(
      "pmepr", "Single-objective GA minimizing PMEPR");
  add_frame_options(cmd, args->frame, true);
  cmd->add_option("--q", args->sga.bits_per_phase, "Bits per phase")
      ->capture_default_str();
  cmd->add_option("--seed", args->sga.seed, "RNG seed")
      ->capture_default_str();
  cmd->add_option("--pop", args->sga.population_size, "Population size")
      ->capture_default_str();
  cmd->add_option("--lmut", args->sga.mutation_count,
                  "Offspring mutated on odd generations")
      ->capture_default_str();
  cmd->add_option("--max-generations", args->sga.max_generations,
                  "Generation cap")
      ->capture_default_str();
  cmd->add_option("--mean-gap", args->sga.mean_gap_db,
                  "Stop when mean fitness is this close to the best (dB)")
      ->capture_default_str();
  cmd->add_option("--std-threshold", args->sga.std_threshold_db,
                  "Stop when fitness std falls below this (dB)")
      ->capture_default_str();
  cmd->add_option("--threads", args->sga.threads,
                  "Worker threads (0 = one per hardware thread)")
      ->capture_default_str();
  cmd->add_option("--out-dir", args->out_dir, "Output directory")
      ->capture_default_str();
  cmd->callback([args] {
    const OfdmParams params = make_params(args->frame, args->sga.seed);
    const SgaResult result = run_sga(params, args->sga);

    std::ofstream trace(out_path(args->out_dir, "trace.csv"));
    write_trace_csv(result.trace, trace);
    io::write_codes_csv(result.best_codes,
                        out_path(args->out_dir, "best_codes.csv"));
    io::write_mask_csv(params.mask, out_path(args->out_dir, "mask.csv"));
    std::printf("pmepr_db,generations,converged\n%.4f,%d,%d\n",
                result.best_pmepr_db, result.generations_run,
                result.converged ? 1 : 0);
  });
}

struct MooArgs {
  FrameArgs frame;
  MooConfig moo;
  int checkpoint_every = 0;
  std::string out_dir = ".";
};

void add_optimize_moo(CLI::App& optimize) {
  auto args = std::make_shared<MooArgs>();
  CLI::App* cmd = optimize.add_subcommand(
      "moo", "NSGA-II over (PMEPR, PSLR[, ISLR])");
  add_frame_options(cmd, args->frame, false);
  cmd->add_option("--objectives", args->moo.n_objectives, "2 or 3")
      ->capture_default_str();
  cmd->add_option("--generations", args->moo.generations, "Generations")
      ->capture_default_str();
  cmd->add_option("--seed", args->moo.seed, "RNG seed")
      ->capture_default_str();
  cmd->add_option("--pop", args->moo.population_size, "Population size")
      ->capture_default_str();
  cmd->add_option("--eta-c", args->moo.sbx_eta, "SBX distribution index")
      ->capture_default_str();
  cmd->add_option("--eta-m", args->moo.mutation_eta,
                  "Mutation distribution index")
      ->capture_default_str();
  cmd->add_option("--pm", args->moo.mutation_probability,
                  "Per-variable mutation probability (<0 = 1/(N*K))")
      ->capture_default_str();
  cmd->add_option("--pc", args->moo.crossover_probability,
                  "Per-pair crossover probability")
      ->capture_default_str();
  cmd->add_option("--ref", args->moo.hv_reference,
                  "Hypervolume reference point (one value per objective)");
  cmd->add_option("--checkpoint-every", args->checkpoint_every,
                  "Write front_gen<G>.csv every this many generations")
      ->capture_default_str();
  cmd->add_option("--threads", args->moo.threads,
                  "Worker threads (0 = one per hardware thread)")
      ->capture_default_str();
  cmd->add_option("--out-dir", args->out_dir, "Output directory")
      ->capture_default_str();
  cmd->callback([args] {
    const OfdmParams params(args->frame.n, args->frame.k,
                            args->frame.bandwidth, args->frame.rho);
    MooCheckpoint checkpoint;
    if (args->checkpoint_every > 0) {
      checkpoint = [args](int gen, const std::vector<Individual>& population) {
        if (gen == 0 || gen % args->checkpoint_every != 0) return;
        std::vector<Individual> front;
        for (const auto& ind : population)
          if (ind.rank == 1) front.push_back(ind);
        char name[48];
        std::snprintf(name, sizeof(name), "front_gen%d.csv", gen);
        std::ofstream out(out_path(args->out_dir, name));
        write_front_csv(front, out);
      };
    }
    const MooResult result = run_nsga2(params, args->moo, checkpoint);

    std::ofstream front(out_path(args->out_dir, "front.csv"));
    write_front_csv(result.front, front);
    std::ofstream trace(out_path(args->out_dir, "moo_trace.csv"));
    write_moo_trace_csv(result.trace, trace);
    std::printf("front_size,hypervolume\n%zu,%.10g\n", result.front.size(),
                result.trace.back().hypervolume);
  });
}

struct BaselineArgs {
  FrameArgs frame;
  std::string kind;
  int q = 0;  // 0 = continuous phases for the random baseline
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

void add_baseline(CLI::App& app) {
  auto args = std::make_shared<BaselineArgs>();
  CLI::App* cmd =
      app.add_subcommand("baseline", "Reference codes and their metrics");
  cmd->add_option("--kind", args->kind, "newman | uncoded | random")
      ->required()
      ->check(CLI::IsMember({"newman", "uncoded", "random"}));
  add_frame_options(cmd, args->frame, true);
  cmd->add_option("--q", args->q,
                  "Bits per phase for the random baseline (0 = continuous)")
      ->capture_default_str();
  cmd->add_option("--seed", args->seed, "RNG seed")->capture_default_str();
  cmd->add_option("--out-dir", args->out_dir, "Output directory")
      ->capture_default_str();
  cmd->callback([args] {
    PhaseCodeMatrix codes;
    if (args->kind == "newman") {
      if (args->frame.k != 1)
        throw CLI::ValidationError("baseline",
                                   "newman phasing is single-symbol (--k 1)");
      codes = newman_phases(args->frame.n);
    } else if (args->kind == "uncoded") {
      codes = uncoded(args->frame.n, args->frame.k);
    } else {
      codes = args->q > 0 ? random_phases(args->frame.n, args->frame.k,
                                          args->q, args->seed)
                          : random_phases(args->frame.n, args->frame.k,
                                          args->seed);
    }
    const OfdmParams params = make_params(args->frame, args->seed);
    io::write_codes_csv(codes, out_path(args->out_dir, "baseline_codes.csv"));
    io::write_mask_csv(params.mask, out_path(args->out_dir, "mask.csv"));
    print_metrics_row(
        evaluate_objectives(synthesize_pulse(params, codes),
                            params.bandwidth_hz));
  });
}

struct DetectArgs {
  std::string target_file;
  bool synthesize = false;
  double fc = 9e9;
  double bandwidth = 2e9;
  int n = 100;
  int rho = 20;
  int scatterers = 50;
  double center_range = 10000.0;
  double depth = 10.0;
  double width = 5.0;
  int random_draws = 101;
  SgaConfig sga;
  std::string out_dir = ".";
};

void add_detect(CLI::App& app) {
  auto args = std::make_shared<DetectArgs>();
  CLI::App* cmd = app.add_subcommand(
      "detect", "Two-step SNR-optimal weighting + GA phase cleanup");
  CLI::Option* file = cmd->add_option("--target-file", args->target_file,
                                      "Scatterer CSV (x_m,y_m,sqrt_sigma)");
  CLI::Option* synth = cmd->add_flag("--synthesize-target", args->synthesize,
                                     "Draw a random rectangular target");
  file->excludes(synth);
  cmd->add_option("--fc", args->fc, "Carrier = band lower edge (Hz)")
      ->capture_default_str();
  cmd->add_option("--bandwidth", args->bandwidth, "Pulse bandwidth (Hz)")
      ->capture_default_str();
  cmd->add_option("--n", args->n, "Subcarrier count")->capture_default_str();
  cmd->add_option("--rho", args->rho, "Oversampling factor")
      ->capture_default_str();
  cmd->add_option("--scatterers", args->scatterers,
                  "Scatterer count for --synthesize-target")
      ->capture_default_str();
  cmd->add_option("--center-range", args->center_range,
                  "Target center range (m)")
      ->capture_default_str();
  cmd->add_option("--depth", args->depth, "Target extent along range (m)")
      ->capture_default_str();
  cmd->add_option("--width", args->width, "Target extent across range (m)")
      ->capture_default_str();
  cmd->add_option("--seed", args->sga.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--max-generations", args->sga.max_generations,
                  "GA generation cap")
      ->capture_default_str();
  cmd->add_option("--random-draws", args->random_draws,
                  "Random codes for the PMEPR median baseline")
      ->capture_default_str();
  cmd->add_option("--threads", args->sga.threads,
                  "Worker threads (0 = one per hardware thread)")
      ->capture_default_str();
  cmd->add_option("--out-dir", args->out_dir, "Output directory")
      ->capture_default_str();
  cmd->callback([args] {
    if (args->target_file.empty() && !args->synthesize)
      throw CLI::ValidationError(
          "detect", "pass --target-file or --synthesize-target");
    const TargetModel target =
        args->synthesize
            ? TargetModel::synthesize_rectangle(
                  args->scatterers, args->center_range, args->depth,
                  args->width, args->sga.seed)
            : io::read_target_csv(args->target_file);

    const TwoStepResult result =
        two_step_design(target, args->fc, args->bandwidth, args->n, args->sga,
                        args->rho, args->random_draws);

    io::write_target_csv(target, out_path(args->out_dir, "target.csv"));
    io::write_spectrum_csv(result.spectrum,
                           out_path(args->out_dir, "spectrum.csv"));
    io::write_weights_csv(result.weights.weights,
                          out_path(args->out_dir, "weights.csv"));
    io::write_codes_csv(result.codes, out_path(args->out_dir, "codes.csv"));
    io::write_report_csv(result.report, out_path(args->out_dir, "report.csv"));
    std::printf(
        "snr_gain_db,pmepr_random_median_db,pmepr_optimized_db,"
        "generations_run,converged\n%.4f,%.4f,%.4f,%d,%d\n",
        result.report.snr_gain_db, result.report.pmepr_random_median_db,
        result.report.pmepr_optimized_db, result.report.generations_run,
        result.report.converged ? 1 : 0);
  });
}

struct EvalArgs {
  FrameArgs frame;
  std::string codes_file;
  std::string weights_file;
  std::string mask_file;
};

void add_eval(CLI::App& app) {
  auto args = std::make_shared<EvalArgs>();
  CLI::App* cmd =
      app.add_subcommand("eval", "Metrics for externally supplied codes");
  cmd->add_option("--codes-file", args->codes_file,
                  "Phase code CSV (subcarrier,symbol,phase_rad)")
      ->required();
  add_frame_options(cmd, args->frame, false);
  cmd->add_option("--weights-file", args->weights_file,
                  "Optional per-subcarrier weights CSV");
  cmd->add_option("--mask-file", args->mask_file,
                  "Optional subcarrier mask CSV");
  cmd->callback([args] {
    const PhaseCodeMatrix codes = io::read_codes_csv(args->codes_file);
    if (codes.n_subcarriers() != args->frame.n ||
        codes.n_symbols() != args->frame.k)
      throw std::runtime_error("eval: codes file shape does not match --n/--k");
    OfdmParams params(args->frame.n, args->frame.k, args->frame.bandwidth,
                      args->frame.rho);
    if (!args->weights_file.empty())
      params.weights = io::read_weights_csv(args->weights_file);
    if (!args->mask_file.empty())
      params.mask = io::read_mask_csv(args->mask_file);
    print_metrics_row(
        evaluate_objectives(synthesize_pulse(params, codes),
                            params.bandwidth_hz));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM radar phase-code design toolkit"};
  app.set_config("--config", "",
                 "Read options from an INI-style file (flags override)");
  app.require_subcommand(1);

  add_design(app);
  CLI::App* optimize =
      app.add_subcommand("optimize", "Phase-code optimization");
  optimize->require_subcommand(1);
  add_optimize_pmepr(*optimize);
  add_optimize_moo(*optimize);
  add_baseline(app);
  add_detect(app);
  add_eval(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
