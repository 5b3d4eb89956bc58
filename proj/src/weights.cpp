#include "convsim/weights.hpp"

#include <bit>
#include <stdexcept>

namespace convsim {

std::vector<double> action_probabilities(std::span<const double> weights,
                                         double epsilon, std::size_t exclude,
                                         bool* underflow) {
  const std::size_t n = weights.size();
  const std::size_t choices = exclude < n ? n - 1 : n;
  if (choices == 0) {
    throw std::invalid_argument("action_probabilities: empty choice set");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != exclude) {
      sum += weights[i];
    }
  }
  std::vector<double> probs(n, 0.0);
  if (sum < kWeightSumUnderflow) {
    if (underflow != nullptr) {
      *underflow = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i != exclude) {
        probs[i] = 1.0 / static_cast<double>(choices);
      }
    }
    return probs;
  }
  const double uniform = epsilon / static_cast<double>(choices);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != exclude) {
      probs[i] = (1.0 - epsilon) * (weights[i] / sum) + uniform;
    }
  }
  return probs;
}

std::vector<double> reinforce(std::vector<double> weights, std::size_t chosen,
                              double payoff, double delta) {
  if (chosen >= weights.size()) {
    throw std::invalid_argument("reinforce: chosen index out of range");
  }
  for (double& w : weights) {
    w *= 1.0 - delta;
  }
  weights[chosen] += payoff;
  return weights;
}

SumTree::SumTree(std::vector<double> leaves) : n_(leaves.size()) {
  cap_ = std::bit_ceil(n_ > 0 ? n_ : std::size_t{1});
  node_.assign(2 * cap_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    node_[cap_ + i] = leaves[i];
  }
  for (std::size_t k = cap_ - 1; k >= 1; --k) {
    node_[k] = node_[2 * k] + node_[2 * k + 1];
  }
}

std::vector<double> SumTree::weights() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = scale_ * node_[cap_ + i];
  }
  return out;
}

void SumTree::renormalize() {
  for (std::size_t i = 0; i < n_; ++i) {
    node_[cap_ + i] *= scale_;
  }
  scale_ = 1.0;
  for (std::size_t k = cap_ - 1; k >= 1; --k) {
    node_[k] = node_[2 * k] + node_[2 * k + 1];
  }
}

std::size_t SumTree::uniform_pick(double v, std::size_t exclude) const {
  const std::size_t choices = exclude < n_ ? n_ - 1 : n_;
  auto k = static_cast<std::size_t>(v * static_cast<double>(choices));
  if (k >= choices) {
    k = choices - 1;
  }
  return exclude < n_ && k >= exclude ? k + 1 : k;
}

std::size_t SumTree::sample(double u, double epsilon, std::size_t exclude,
                            bool* underflow) const {
  if (epsilon > 0.0 && u < epsilon) {
    return uniform_pick(u / epsilon, exclude);
  }
  const double v = epsilon > 0.0 ? (u - epsilon) / (1.0 - epsilon) : u;
  if (total() < kWeightSumUnderflow) {
    if (underflow != nullptr) {
      *underflow = true;
    }
    return uniform_pick(v, exclude);
  }
  double target = v * node_[1];
  std::size_t k = 1;
  while (k < cap_) {
    k <<= 1;
    const double left = node_[k];
    if (!(target < left)) {
      target -= left;
      ++k;
    }
  }
  std::size_t idx = k - cap_;
  if (idx >= n_ || node_[cap_ + idx] <= 0.0) {
    // Rounding drift in the incremental node sums can strand the target on a
    // zero-width leaf; fall back to the last positive-weight entry.
    for (std::size_t i = n_; i-- > 0;) {
      if (node_[cap_ + i] > 0.0) {
        return i;
      }
    }
  }
  return idx;
}

}  // namespace convsim
