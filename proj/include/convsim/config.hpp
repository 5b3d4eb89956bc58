#pragma once

#include <cstdint>
#include <stdexcept>

#include "convsim/game.hpp"

namespace convsim {

// How weights co-evolve each round. Asymmetric is the main model: hosts learn
// only their hosting strategy, visitors learn their visiting strategy and
// their partner tie. Symmetric gives every agent one shared strategy pair and
// lets both sides of an interaction update their partner ties. NoNetwork is
// the randomly-mixing control: visit targets are drawn uniformly every round
// and partner weights are never touched.
enum class UpdateMode : unsigned char { Asymmetric, Symmetric, NoNetwork };

enum class StrategyInit : unsigned char { Uniform, Random };

struct SimConfig {
  std::uint32_t n = 0;
  GamePayoffs payoffs{};
  double delta = 0.0;    // discount rate, [0, 1)
  double epsilon = 0.0;  // error rate, [0, 1]
  UpdateMode mode = UpdateMode::Asymmetric;
  double network_scale = 19.0;  // L: initial partner-weight mass per agent
  double strategy_scale = 1.0;  // S: initial per-strategy weight
  StrategyInit strategy_init = StrategyInit::Uniform;
  std::uint64_t rounds = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t snapshot_every = 10'000;

  void validate() const {
    if (n < 2) {
      throw std::invalid_argument("SimConfig: n must be at least 2");
    }
    payoffs.validate();
    if (!(delta >= 0.0) || !(delta < 1.0)) {
      throw std::invalid_argument("SimConfig: delta must lie in [0, 1)");
    }
    if (!(epsilon >= 0.0) || !(epsilon <= 1.0)) {
      throw std::invalid_argument("SimConfig: epsilon must lie in [0, 1]");
    }
    if (!(network_scale > 0.0)) {
      throw std::invalid_argument("SimConfig: network_scale must be positive");
    }
    if (!(strategy_scale > 0.0)) {
      throw std::invalid_argument("SimConfig: strategy_scale must be positive");
    }
    if (snapshot_every == 0) {
      throw std::invalid_argument("SimConfig: snapshot_every must be at least 1");
    }
  }
};

}  // namespace convsim
