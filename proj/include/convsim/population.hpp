#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "convsim/config.hpp"
#include "convsim/weights.hpp"

namespace convsim {

struct Agent {
  StrategyWeights host_strategy;     // shared strategy pair in Symmetric mode
  StrategyWeights visitor_strategy;  // ignored in Symmetric mode
  SumTree partner;                   // self entry fixed at 0
};

struct Population {
  UpdateMode mode = UpdateMode::Asymmetric;
  std::vector<Agent> agents;
  std::uint64_t underflow_events = 0;

  std::size_t size() const { return agents.size(); }

  const StrategyWeights& strategy(std::size_t i, Role role) const {
    const Agent& a = agents[i];
    if (mode == UpdateMode::Symmetric || role == Role::Host) {
      return a.host_strategy;
    }
    return a.visitor_strategy;
  }

  StrategyWeights& strategy(std::size_t i, Role role) {
    Agent& a = agents[i];
    if (mode == UpdateMode::Symmetric || role == Role::Host) {
      return a.host_strategy;
    }
    return a.visitor_strategy;
  }
};

// Fresh population: partner weights L/(N-1) off-diagonal, strategy weights S
// (Uniform) or independent draws from (0, 2S) (Random). Draw order for Random
// init: agents in ascending index, hawk then dove, host pair before visitor
// pair; Symmetric mode draws only the shared pair.
Population init_population(const SimConfig& config);

// Eq-style hawk probability for one strategy pair.
double hawk_probability(const StrategyWeights& w, double epsilon);

// Expected visitor count per agent: column sums of the visit-probability
// matrix at the given error rate. Sums to N.
std::vector<double> expected_visitors(const Population& pop, double epsilon);

struct SnapshotAgent {
  std::array<double, 2> host_weights;
  std::array<double, 2> visitor_weights;
  std::vector<double> partner_weights;
  double p_hawk_host = 0.5;       // from raw weights (epsilon-free)
  double p_hawk_visit = 0.5;      // from raw weights (epsilon-free)
  double p_hawk_host_eps = 0.5;   // epsilon-inclusive
  double p_hawk_visit_eps = 0.5;  // epsilon-inclusive
  double expected_visitors = 1.0;  // epsilon-inclusive
};

// Frozen copy of the population with derived action probabilities.
struct Snapshot {
  std::uint64_t round = 0;
  UpdateMode mode = UpdateMode::Asymmetric;
  double epsilon = 0.0;
  std::vector<SnapshotAgent> agents;
};

Snapshot make_snapshot(const Population& pop, std::uint64_t round, double epsilon);

}  // namespace convsim
