#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "convsim/analysis.hpp"
#include "convsim/config.hpp"
#include "convsim/engine.hpp"

namespace convsim {

enum class SweepKind : unsigned char {
  SymmetricSquare,  // x = x1 = x2, y = y1 = y2 over an interior step grid
  AsymmetricSlice,  // x_i + y_i = 1, each role's y on the step grid
  BiasLine,         // fixed host payoffs, y2 swept with x2 = y2 + offset
  Explicit,
};

struct BiasLineSpec {
  double x1 = 0.4;
  double y1 = 0.5;
  double y2_from = 0.2;
  double y2_to = 0.9;
  double y2_step = 0.1;
  double x2_offset = -0.1;
};

struct SweepSpec {
  SweepKind kind = SweepKind::SymmetricSquare;
  double step = 0.1;  // SymmetricSquare and AsymmetricSlice grids
  BiasLineSpec bias;
  std::vector<GamePayoffs> explicit_points;
  std::uint32_t seeds_per_point = 100;
  SimConfig base;  // payoffs and seed are per-job; base.seed is the root seed
  ClassifierThresholds thresholds;

  // Deterministic payoff grid; boundary values are never generated. Throws
  // on an empty grid or invalid parameters.
  std::vector<GamePayoffs> grid() const;
  std::uint64_t grid_digest() const;
  void validate() const;
};

struct Job {
  std::uint32_t point = 0;
  std::uint32_t replicate = 0;
  GamePayoffs payoffs;
  std::uint64_t seed = 0;
};

// Deterministic job list; job seeds derive from (base seed, point, replicate)
// so any job is independently re-runnable.
std::vector<Job> generate_grid(const SweepSpec& spec);

struct RunRecord {
  std::uint64_t grid_digest = 0;
  std::uint32_t point = 0;
  std::uint32_t replicate = 0;
  std::uint64_t job_seed = 0;
  GamePayoffs payoffs;
  OutcomeLabel label = OutcomeLabel::Unresolved;
  std::int64_t rounds_to_class = -1;  // -1 when the run never classified
  double final_homogeneity = 1.0;
  bool error = false;
};

struct PointResult {
  GamePayoffs payoffs;
  std::uint32_t n_seeds = 0;
  std::uint32_t n_bourgeois = 0;
  std::uint32_t n_paradoxical = 0;
  std::uint32_t n_network = 0;
  std::uint32_t n_hybrid = 0;
  std::uint32_t n_unresolved = 0;
  std::uint32_t n_error = 0;
  double sum_rounds_to_class = 0.0;
  std::uint32_t n_classified = 0;
  double sum_homogeneity = 0.0;
  double sum_homogeneity_convention = 0.0;
  std::uint32_t n_convention = 0;

  double prop_paradoxical() const {
    return n_seeds == 0 ? 0.0 : static_cast<double>(n_paradoxical) / n_seeds;
  }
  double prop_bourgeois() const {
    return n_seeds == 0 ? 0.0 : static_cast<double>(n_bourgeois) / n_seeds;
  }
  double mean_rounds_to_class() const {
    return n_classified == 0 ? std::numeric_limits<double>::quiet_NaN()
                             : sum_rounds_to_class / n_classified;
  }
  double mean_homogeneity() const {
    return n_seeds == 0 ? std::numeric_limits<double>::quiet_NaN()
                        : sum_homogeneity / n_seeds;
  }
};

struct SweepTable {
  std::uint64_t grid_digest = 0;
  std::vector<PointResult> points;
};

// Streaming observer that tracks the population's label at every snapshot.
// rounds_to_classification is the first snapshot round whose label persists
// unchanged through the end of the run.
class ClassificationMonitor : public RunObserver {
 public:
  explicit ClassificationMonitor(const ClassifierThresholds& t) : thresholds_(t) {}

  void on_snapshot(std::uint64_t round, const Population& pop) override {
    const OutcomeLabel label = classify_population(pop, thresholds_);
    if (!seen_any_ || label != candidate_) {
      candidate_ = label;
      candidate_round_ = round;
      seen_any_ = true;
    }
    final_label_ = label;
    final_homogeneity_ = network_homogeneity(pop);
  }

  OutcomeLabel final_label() const { return final_label_; }
  double final_homogeneity() const { return final_homogeneity_; }
  std::int64_t rounds_to_classification() const {
    return final_label_ == OutcomeLabel::Unresolved
               ? -1
               : static_cast<std::int64_t>(candidate_round_);
  }

 private:
  ClassifierThresholds thresholds_;
  bool seen_any_ = false;
  OutcomeLabel candidate_ = OutcomeLabel::Unresolved;
  std::uint64_t candidate_round_ = 0;
  OutcomeLabel final_label_ = OutcomeLabel::Unresolved;
  double final_homogeneity_ = 1.0;
};

// Runs one job in isolation; exceptions are captured as an error record with
// label Unresolved rather than propagated.
RunRecord run_job(const Job& job, const SweepSpec& spec);

using JobRunner = std::function<RunRecord(const Job&)>;

// Executes jobs on `workers` threads (0 = hardware concurrency). Record order
// matches the job list regardless of scheduling.
std::vector<RunRecord> run_jobs(const SweepSpec& spec, const std::vector<Job>& jobs,
                                unsigned workers = 0,
                                const JobRunner& runner = nullptr);

// Order-independent aggregation of per-run records into one row per grid
// point. Records are keyed by (point, replicate) and deduplicated, so merging
// partial batches in any order yields identical tables. Throws if a record's
// grid digest does not match the spec.
SweepTable aggregate(const SweepSpec& spec, const std::vector<RunRecord>& records);

SweepTable run_sweep(const SweepSpec& spec, unsigned workers = 0);

// Minimal thread-pool helper shared by the sweep and the test harnesses.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace convsim
