#pragma once

#include <cstdint>
#include <vector>

#include "convsim/population.hpp"

namespace convsim {

struct InteractionRecord {
  std::uint64_t round;
  std::uint32_t visitor;
  std::uint32_t host;
  Strategy visitor_strategy;
  Strategy host_strategy;
  double visitor_payoff;
  double host_payoff;
};

// Per-round aggregate of the N interactions.
struct RoundAggregate {
  std::uint64_t round = 0;
  std::uint32_t host_hawk = 0;
  std::uint32_t host_dove = 0;
  std::uint32_t visitor_hawk = 0;
  std::uint32_t visitor_dove = 0;
  double mean_host_payoff = 0.0;
  double mean_visitor_payoff = 0.0;
};

// Instrumentation for invariant tests: payoff taps zero one side's payoff at
// the reinforcement step, `records` collects the round's interactions.
struct RoundHooks {
  bool zero_host_payoffs = false;
  bool zero_visitor_payoffs = false;
  std::vector<InteractionRecord>* records = nullptr;
};

// One round under simultaneous-update semantics. Phase 1 draws every decision
// from start-of-round weights: visit targets in ascending agent index, then
// per visit (ascending visitor index) the visitor's strategy followed by a
// fresh host strategy draw. Phase 2 applies one reinforcement per related
// interaction, walking visits in ascending visitor index, so a host with k
// guests discounts its hosting weights k times in guest order.
void run_round(Population& pop, const SimConfig& config, std::uint64_t round,
               RoundAggregate* aggregate = nullptr, const RoundHooks& hooks = {});

class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_snapshot(std::uint64_t /*round*/, const Population& /*pop*/) {}
  virtual void on_round(const RoundAggregate& /*agg*/) {}
};

struct RunSummary {
  std::uint64_t rounds = 0;
  std::uint64_t host_hawk = 0;
  std::uint64_t host_dove = 0;
  std::uint64_t visitor_hawk = 0;
  std::uint64_t visitor_dove = 0;
  double mean_host_payoff = 0.0;
  double mean_visitor_payoff = 0.0;
  std::uint64_t underflow_events = 0;
};

struct RunResult {
  Population population;
  RunSummary summary;
};

// Executes config.rounds rounds from a fresh population. Snapshot callbacks
// fire at round 0, every snapshot_every completed rounds, and at the final
// round (each at most once). Identical (config, seed) produce bit-identical
// trajectories.
RunResult run_simulation(const SimConfig& config, RunObserver* observer = nullptr);

// Convenience wrapper retaining materialized snapshots; intended for tests
// and small runs.
struct CollectedRun {
  Population population;
  RunSummary summary;
  std::vector<Snapshot> snapshots;
};

CollectedRun run_simulation_collect(const SimConfig& config);

}  // namespace convsim
