#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "convsim/game.hpp"

namespace convsim {

// A weight-vector sum below this is treated as numerically extinguished and
// the choice falls back to the uniform distribution.
inline constexpr double kWeightSumUnderflow = 1e-300;

// Scaled weight containers renormalize once the shared discount factor drops
// below this, long before double range becomes a concern.
inline constexpr double kScaleRenormThreshold = 1e-100;

inline constexpr std::size_t kNoExclusion = std::numeric_limits<std::size_t>::max();

// Choice probabilities from reinforcement weights:
//   Pr(s) = (1 - epsilon) * w_s / sum(w) + epsilon / |S|.
// `exclude` removes one index from the choice set S (the self entry of a
// partner vector); its probability is reported as 0. If the weight sum has
// underflowed, returns the uniform distribution over S and sets *underflow.
std::vector<double> action_probabilities(std::span<const double> weights,
                                         double epsilon,
                                         std::size_t exclude = kNoExclusion,
                                         bool* underflow = nullptr);

// One reinforcement update: every entry is discounted by (1 - delta) and the
// chosen entry gains the payoff.
std::vector<double> reinforce(std::vector<double> weights, std::size_t chosen,
                              double payoff, double delta);

// Two-option reinforcement weights (host or visitor strategy pair). Stores a
// shared discount scale so an update costs O(1); observable weights are
// scale * raw entry.
class StrategyWeights {
 public:
  StrategyWeights() : StrategyWeights(1.0, 1.0) {}
  StrategyWeights(double hawk, double dove) : w_{hawk, dove} {}

  double weight(Strategy s) const { return scale_ * w_[static_cast<int>(s)]; }
  double total() const { return scale_ * (w_[0] + w_[1]); }

  void reinforce(Strategy chosen, double payoff, double delta) {
    scale_ *= 1.0 - delta;
    if (payoff != 0.0) {
      w_[static_cast<int>(chosen)] += payoff / scale_;
    }
    if (scale_ < kScaleRenormThreshold) {
      renormalize();
    }
  }

  // Maps one uniform draw u in [0,1) to a strategy under the epsilon-mixed
  // distribution: u < epsilon selects uniformly (via u / epsilon), otherwise
  // (u - epsilon) / (1 - epsilon) drives a cumulative walk over the weights.
  Strategy sample(double u, double epsilon, bool* underflow = nullptr) const {
    if (epsilon > 0.0 && u < epsilon) {
      return u * 2.0 < epsilon ? Strategy::Hawk : Strategy::Dove;
    }
    const double v = epsilon > 0.0 ? (u - epsilon) / (1.0 - epsilon) : u;
    if (total() < kWeightSumUnderflow) {
      if (underflow != nullptr) {
        *underflow = true;
      }
      return v < 0.5 ? Strategy::Hawk : Strategy::Dove;
    }
    return v * (w_[0] + w_[1]) < w_[0] ? Strategy::Hawk : Strategy::Dove;
  }

 private:
  void renormalize() {
    w_[0] *= scale_;
    w_[1] *= scale_;
    scale_ = 1.0;
  }

  double w_[2];
  double scale_ = 1.0;
};

// Reinforcement weights over N partner choices, held in a binary sum tree so
// both the Eq-style update and weighted sampling cost O(log N). Shares the
// scaled-discount representation with StrategyWeights; leaf values times the
// scale are the observable weights. The sampling descent is part of the
// reproducibility contract: from the root, go left when the remaining target
// is less than the left child's sum, otherwise subtract it and go right.
class SumTree {
 public:
  SumTree() = default;
  explicit SumTree(std::vector<double> leaves);

  std::size_t size() const { return n_; }
  double weight(std::size_t i) const { return scale_ * node_[cap_ + i]; }
  double total() const { return scale_ * node_[1]; }
  std::vector<double> weights() const;

  void reinforce(std::size_t chosen, double payoff, double delta) {
    scale_ *= 1.0 - delta;
    if (payoff != 0.0) {
      const double inc = payoff / scale_;
      for (std::size_t k = cap_ + chosen; k >= 1; k >>= 1) {
        node_[k] += inc;
      }
    }
    if (scale_ < kScaleRenormThreshold) {
      renormalize();
    }
  }

  // Weighted pick from one uniform draw, epsilon-mixed as in
  // StrategyWeights::sample. `exclude` is the self index, skipped by the
  // uniform branch; its leaf weight is 0 so the weighted branch never lands
  // on it.
  std::size_t sample(double u, double epsilon, std::size_t exclude,
                     bool* underflow = nullptr) const;

  bool operator==(const SumTree& other) const {
    return n_ == other.n_ && scale_ == other.scale_ && node_ == other.node_;
  }

 private:
  void renormalize();
  std::size_t uniform_pick(double v, std::size_t exclude) const;

  std::size_t n_ = 0;
  std::size_t cap_ = 0;  // power of two >= n_
  double scale_ = 1.0;
  std::vector<double> node_;  // node_[1] root; leaves at [cap_, cap_ + n_)
};

}  // namespace convsim
