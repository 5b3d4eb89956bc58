#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "convsim/io/commands.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::uint64_t> snapshot_every_override;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_out) {
  cmd->add_option("--config", args.config_path, "config file (JSON; a manifest also works)")
      ->required();
  auto* out = cmd->add_option("--out", args.out, "output directory");
  if (need_out) {
    out->required();
  }
  cmd->add_option("--seed", args.seed_override, "override the config seed");
  cmd->add_option("--snapshot-every", args.snapshot_every_override,
                  "override the snapshot cadence (rounds)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convsim — coevolving strategy and network-tie simulator for "
               "games of conflict"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(convsim::kToolName) + " " +
                                        convsim::kToolVersion);

  CommonArgs run_args;
  std::uint64_t summary_every = 1;
  CLI::App* run = app.add_subcommand("run", "execute a single simulation run");
  add_common(run, run_args, /*need_out=*/true);
  run->add_option("--summary-every", summary_every,
                  "emit one interaction-summary row per this many rounds");

  CommonArgs sweep_args;
  unsigned workers = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "run a payoff-grid parameter sweep");
  add_common(sweep, sweep_args, /*need_out=*/true);
  sweep->add_option("--workers", workers, "worker threads (0 = all hardware threads)");

  std::string analyze_dir;
  convsim::AnalyzeOptions analyze_options;
  double theta_s = -1.0;
  double theta_p = -1.0;
  double hub_factor = -1.0;
  double homog_max = -1.0;
  CLI::App* analyze = app.add_subcommand("analyze", "post-process a run directory");
  analyze->add_option("--run", analyze_dir, "run output directory")->required();
  analyze->add_option("--tie-c", analyze_options.tie_c,
                      "binary tie threshold multiple of 1/(N-1)");
  analyze->add_option("--bin-width", analyze_options.bin_width,
                      "expected-visitors histogram bin width");
  analyze->add_flag("--er-baseline", analyze_options.er_baseline,
                    "also emit the matched Erdos-Renyi degree baseline");
  analyze->add_option("--er-seeds", analyze_options.er_seeds, "baseline sample count");
  analyze->add_option("--er-p", analyze_options.er_p,
                      "baseline tie probability (default: match mean degree)");
  analyze->add_option("--er-seed", analyze_options.er_seed, "baseline RNG seed");
  analyze->add_option("--theta-s", theta_s, "override strategy-purity threshold");
  analyze->add_option("--theta-p", theta_p, "override population-fraction threshold");
  analyze->add_option("--hub-factor", hub_factor, "override hub threshold");
  analyze->add_option("--homog-max", homog_max, "override homogeneity ceiling");

  std::uint32_t er_n = 0;
  double er_p = 0.0;
  std::uint32_t er_seeds = 100;
  std::uint64_t er_seed = 1;
  std::string er_out;
  CLI::App* baseline =
      app.add_subcommand("baseline", "emit an Erdos-Renyi degree histogram");
  baseline->add_option("--n", er_n, "node count")->required();
  baseline->add_option("--p", er_p, "tie probability")->required();
  baseline->add_option("--seeds", er_seeds, "number of sampled graphs");
  baseline->add_option("--seed", er_seed, "RNG seed");
  baseline->add_option("--out", er_out, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      convsim::LoadedSetup setup = convsim::load_config_file(run_args.config_path);
      if (!setup.run.has_value()) {
        throw std::runtime_error("run: config file describes a sweep; use `convsim sweep`");
      }
      if (run_args.seed_override) {
        setup.run->config.seed = *run_args.seed_override;
      }
      if (run_args.snapshot_every_override) {
        setup.run->config.snapshot_every = *run_args.snapshot_every_override;
      }
      convsim::cmd_run(*setup.run, run_args.out, summary_every);
    } else if (sweep->parsed()) {
      convsim::LoadedSetup setup = convsim::load_config_file(sweep_args.config_path);
      if (!setup.sweep.has_value()) {
        throw std::runtime_error("sweep: config file describes a single run; use `convsim run`");
      }
      if (sweep_args.seed_override) {
        setup.sweep->base.seed = *sweep_args.seed_override;
      }
      if (sweep_args.snapshot_every_override) {
        setup.sweep->base.snapshot_every = *sweep_args.snapshot_every_override;
      }
      convsim::cmd_sweep(*setup.sweep, sweep_args.out, workers);
    } else if (analyze->parsed()) {
      if (theta_s > 0 || theta_p > 0 || hub_factor > 0 || homog_max > 0) {
        convsim::ClassifierThresholds t;
        if (theta_s > 0) t.theta_s = theta_s;
        if (theta_p > 0) t.theta_p = theta_p;
        if (hub_factor > 0) t.hub_factor = hub_factor;
        if (homog_max > 0) t.homog_max = homog_max;
        t.validate();
        analyze_options.thresholds = t;
      }
      convsim::cmd_analyze(analyze_dir, analyze_options);
    } else if (baseline->parsed()) {
      convsim::cmd_baseline(er_n, er_p, er_seeds, er_seed, er_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
