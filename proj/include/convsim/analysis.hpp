#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convsim/population.hpp"
#include "convsim/rng.hpp"

namespace convsim {

enum class AgentClass : unsigned char {
  Bourgeois,
  Paradoxical,
  PureHawk,
  PureDove,
  Mixed,
};

enum class OutcomeLabel : unsigned char {
  Bourgeois,
  Paradoxical,
  Network,
  Hybrid,
  Unresolved,
};

enum class TrajectoryLabel : unsigned char {
  DirectToConvention,
  ViaHubSpoke,
  Other,
};

// Classification thresholds. The solution families have no canonical
// operational constants, so these are exposed everywhere and the headline
// results are checked for insensitivity to theta_s. homog_max must sit above
// the sampling fluctuation of expected visitors in converged conventions
// (max reaches ~3.4 by N = 200) and below genuine hub loads (8+).
struct ClassifierThresholds {
  double theta_s = 0.9;     // strategy purity
  double theta_p = 0.9;     // population fraction
  double hub_factor = 3.0;  // expected-visitors multiple defining a hub
  double homog_max = 5.0;   // max expected-visitors of a homogeneous network

  void validate() const {
    if (!(theta_s > 0.5) || !(theta_s <= 1.0)) {
      throw std::invalid_argument("thresholds: theta_s must lie in (0.5, 1]");
    }
    if (!(theta_p > 0.5) || !(theta_p <= 1.0)) {
      throw std::invalid_argument("thresholds: theta_p must lie in (0.5, 1]");
    }
    if (!(hub_factor > 1.0)) {
      throw std::invalid_argument("thresholds: hub_factor must exceed 1");
    }
    if (!(homog_max >= 1.0)) {
      throw std::invalid_argument("thresholds: homog_max must be at least 1");
    }
  }
};

// Epsilon-free view of one agent: classification reads the learned weights,
// not the exploration-mixed behavior.
struct AgentProfile {
  double p_hawk_host = 0.5;
  double p_hawk_visit = 0.5;
  double expected_visitors = 1.0;
  double partner_concentration = 0.0;  // largest single-partner visit probability
};

// Epsilon-free visit-probability matrix plus its column sums.
struct NetworkView {
  std::vector<std::vector<double>> probs;  // probs[i][j] = Pr(i visits j)
  std::vector<double> expected;            // expected visitors per agent
};

NetworkView network_view(const Population& pop);
NetworkView network_view(const Snapshot& snap);

std::vector<AgentProfile> population_profiles(const Population& pop);
std::vector<AgentProfile> population_profiles(const Snapshot& snap);

AgentClass classify_agent(const AgentProfile& profile, const ClassifierThresholds& t);

// Decision table over the whole population:
//   Bourgeois / Paradoxical — at least theta_p * N agents of that class on a
//     homogeneous network (max expected visitors <= homog_max);
//   Network — a nonempty hub set (expected visitors >= hub_factor), every hub
//     hosting dove, and at least theta_p of the non-hubs committed spokes;
//   Hybrid — same, but every hub is a full paradoxical player;
//   Unresolved — anything else.
// A committed spoke expresses hawk when visiting (p_hawk_visit >= theta_s)
// and concentrates at least theta_s of its visit mass on dove-hosting agents
// (hubs or private dove hosts). Spokes are judged on visiting behavior only:
// under asymmetric updating a spoke that attracts no visitors keeps whatever
// hosting weights it had when the network froze it out, so hosting purity is
// not observable for them.
OutcomeLabel classify_population(const Population& pop, const ClassifierThresholds& t);
OutcomeLabel classify_population(const Snapshot& snap, const ClassifierThresholds& t);

// Normalized entropy of the expected-visitors distribution; 1 iff uniform.
double network_homogeneity(const Population& pop);
double network_homogeneity(const Snapshot& snap);

// In-degree histogram under the binary tie rule: tie i->j exists iff
// Pr(i visits j) >= c / (N-1). counts[d] = number of nodes with degree d.
std::vector<double> degree_distribution_threshold(const Population& pop, double c);
std::vector<double> degree_distribution_threshold(const Snapshot& snap, double c);

// Continuous tie rule: histogram of expected-visitor values with the given
// bin width. counts[k] covers [k * bin_width, (k+1) * bin_width).
std::vector<double> degree_distribution_expected(const Population& pop, double bin_width);
std::vector<double> degree_distribution_expected(const Snapshot& snap, double bin_width);

// Mean degree histogram over `seeds` samples of an undirected G(n, p) graph,
// the random-network baseline the simulated degree tails are compared to.
std::vector<double> erdos_renyi_degree_baseline(std::uint32_t n, double p,
                                                std::uint32_t seeds, Rng rng);

// Max over agents of the L-inf distance between their epsilon-free dove
// probabilities and the role-wise mixed Nash point.
double distance_from_mixed_nash(const Population& pop, const GamePayoffs& g);
double distance_from_mixed_nash(const Snapshot& snap, const GamePayoffs& g);

struct SnapshotClassification {
  std::uint64_t round = 0;
  OutcomeLabel label = OutcomeLabel::Unresolved;
  bool has_hub = false;
};

// Trajectory of a run that ended in a convention (throws otherwise):
//   ViaHubSpoke — some snapshot before convention onset was Network/Hybrid or
//     contained a hub;
//   DirectToConvention — no pre-onset hub and no contrary convention label;
//   Other — the remaining case (label oscillation between conventions with
//     no hub phase).
TrajectoryLabel classify_trajectory(const std::vector<SnapshotClassification>& steps);
TrajectoryLabel classify_trajectory(const std::vector<Snapshot>& snapshots,
                                    const ClassifierThresholds& t);

const char* to_string(OutcomeLabel label);
const char* to_string(AgentClass c);
const char* to_string(TrajectoryLabel label);
OutcomeLabel outcome_label_from_string(const std::string& s);

inline bool is_convention(OutcomeLabel label) {
  return label == OutcomeLabel::Bourgeois || label == OutcomeLabel::Paradoxical;
}

}  // namespace convsim
