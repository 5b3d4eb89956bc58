#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "convsim/io/config_io.hpp"

namespace convsim {

// Executes a single run: writes manifest.json, snapshots.jsonl, summary.tsv,
// edges.tsv (final state) and final.json into out_dir. summary_every thins
// the per-round interaction summary (1 = every round).
void cmd_run(const RunSetup& setup, const std::filesystem::path& out_dir,
             std::uint64_t summary_every = 1);

// Executes (or resumes) a sweep: manifest.json, records.jsonl (one record per
// completed job, append-only) and table.tsv. Existing records for the same
// grid are honored, so an interrupted sweep picks up where it stopped.
void cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
               unsigned workers = 0);

struct AnalyzeOptions {
  double tie_c = 2.0;        // binary tie rule threshold multiple
  double bin_width = 0.25;   // expected-visitors histogram bin width
  bool er_baseline = false;
  std::uint32_t er_seeds = 100;
  double er_p = -1.0;        // < 0: match the final threshold graph's mean degree
  std::uint64_t er_seed = 1;
  std::optional<ClassifierThresholds> thresholds;  // override the manifest's
};

// Post-processes a run directory: homogeneity / mixed-Nash-distance / label
// time series, degree histograms under both tie rules, trajectory label and
// an analysis.json summary (plus er_baseline.tsv when requested).
void cmd_analyze(const std::filesystem::path& run_dir, const AnalyzeOptions& options);

// Writes the mean degree histogram of `seeds` G(n, p) samples.
void cmd_baseline(std::uint32_t n, double p, std::uint32_t seeds, std::uint64_t seed,
                  const std::filesystem::path& out_file);

}  // namespace convsim
