#include "convsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convsim/weights.hpp"

namespace convsim {

namespace {

std::vector<double> row_probabilities(std::span<const double> weights, std::size_t self) {
  bool underflow = false;
  return action_probabilities(weights, 0.0, self, &underflow);
}

NetworkView view_from_rows(std::vector<std::vector<double>> rows) {
  const std::size_t n = rows.size();
  NetworkView view;
  view.expected.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      view.expected[j] += rows[i][j];
    }
  }
  view.probs = std::move(rows);
  return view;
}

std::vector<AgentProfile> profiles_from(const NetworkView& view,
                                        const std::vector<double>& p_hawk_host,
                                        const std::vector<double>& p_hawk_visit) {
  const std::size_t n = view.probs.size();
  std::vector<AgentProfile> profiles(n);
  for (std::size_t i = 0; i < n; ++i) {
    AgentProfile& p = profiles[i];
    p.p_hawk_host = p_hawk_host[i];
    p.p_hawk_visit = p_hawk_visit[i];
    p.expected_visitors = view.expected[i];
    p.partner_concentration = *std::max_element(view.probs[i].begin(), view.probs[i].end());
  }
  return profiles;
}

OutcomeLabel classify_from(const std::vector<AgentProfile>& profiles,
                           const NetworkView& view, const ClassifierThresholds& t) {
  const std::size_t n = profiles.size();
  std::vector<AgentClass> cls(n);
  std::size_t n_bourgeois = 0;
  std::size_t n_paradoxical = 0;
  double max_expected = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cls[i] = classify_agent(profiles[i], t);
    n_bourgeois += cls[i] == AgentClass::Bourgeois;
    n_paradoxical += cls[i] == AgentClass::Paradoxical;
    max_expected = std::max(max_expected, profiles[i].expected_visitors);
  }

  const double quorum = t.theta_p * static_cast<double>(n);
  if (max_expected <= t.homog_max) {
    if (static_cast<double>(n_bourgeois) >= quorum) {
      return OutcomeLabel::Bourgeois;
    }
    if (static_cast<double>(n_paradoxical) >= quorum) {
      return OutcomeLabel::Paradoxical;
    }
  }

  // Hub-based families. The hub set is every agent whose expected visitor
  // count reaches hub_factor (the population mean is exactly 1).
  std::vector<std::size_t> hubs;
  std::vector<bool> is_hub(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (profiles[i].expected_visitors >= t.hub_factor) {
      hubs.push_back(i);
      is_hub[i] = true;
    }
  }
  if (hubs.empty()) {
    return OutcomeLabel::Unresolved;
  }

  bool hubs_host_dove = true;
  bool hubs_paradoxical = true;
  for (std::size_t h : hubs) {
    hubs_host_dove &= profiles[h].p_hawk_host <= 1.0 - t.theta_s;
    hubs_paradoxical &= cls[h] == AgentClass::Paradoxical;
  }
  if (!hubs_host_dove) {
    return OutcomeLabel::Unresolved;
  }

  std::vector<bool> dove_host(n);
  for (std::size_t i = 0; i < n; ++i) {
    dove_host[i] = profiles[i].p_hawk_host <= 1.0 - t.theta_s;
  }
  std::size_t non_hubs = 0;
  std::size_t committed_spokes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_hub[i]) {
      continue;
    }
    ++non_hubs;
    if (profiles[i].p_hawk_visit < t.theta_s) {
      continue;
    }
    double mass_on_dove_hosts = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (dove_host[j]) {
        mass_on_dove_hosts += view.probs[i][j];
      }
    }
    committed_spokes += mass_on_dove_hosts >= t.theta_s;
  }
  if (non_hubs == 0 ||
      static_cast<double>(committed_spokes) < t.theta_p * static_cast<double>(non_hubs)) {
    return OutcomeLabel::Unresolved;
  }
  return hubs_paradoxical ? OutcomeLabel::Hybrid : OutcomeLabel::Network;
}

double homogeneity_from(const std::vector<double>& expected) {
  const auto n = static_cast<double>(expected.size());
  double entropy = 0.0;
  for (double e : expected) {
    const double q = e / n;
    if (q > 0.0) {
      entropy -= q * std::log(q);
    }
  }
  return entropy / std::log(n);
}

std::vector<double> threshold_histogram(const NetworkView& view, double c) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("degree_distribution: threshold c must be positive");
  }
  const std::size_t n = view.probs.size();
  const double cutoff = c / static_cast<double>(n - 1);
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && view.probs[i][j] >= cutoff) {
        ++degree[j];
      }
    }
  }
  std::vector<double> counts(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    counts[degree[j]] += 1.0;
  }
  return counts;
}

std::vector<double> expected_histogram(const std::vector<double>& expected,
                                       double bin_width) {
  if (!(bin_width > 0.0)) {
    throw std::invalid_argument("degree_distribution: bin width must be positive");
  }
  const double max_e = *std::max_element(expected.begin(), expected.end());
  const auto bins = static_cast<std::size_t>(max_e / bin_width) + 1;
  std::vector<double> counts(bins, 0.0);
  for (double e : expected) {
    auto k = static_cast<std::size_t>(e / bin_width);
    if (k >= bins) {
      k = bins - 1;
    }
    counts[k] += 1.0;
  }
  return counts;
}

double nash_distance_from(const std::vector<AgentProfile>& profiles,
                          const GamePayoffs& g) {
  const MixedNash nash = mixed_nash(g);
  double worst = 0.0;
  for (const AgentProfile& p : profiles) {
    const double dh = std::abs((1.0 - p.p_hawk_host) - nash.p_dove_host);
    const double dv = std::abs((1.0 - p.p_hawk_visit) - nash.p_dove_visitor);
    worst = std::max(worst, std::max(dh, dv));
  }
  return worst;
}

}  // namespace

NetworkView network_view(const Population& pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = row_probabilities(pop.agents[i].partner.weights(), i);
  }
  return view_from_rows(std::move(rows));
}

NetworkView network_view(const Snapshot& snap) {
  const std::size_t n = snap.agents.size();
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = row_probabilities(snap.agents[i].partner_weights, i);
  }
  return view_from_rows(std::move(rows));
}

std::vector<AgentProfile> population_profiles(const Population& pop) {
  const std::size_t n = pop.size();
  std::vector<double> ph(n);
  std::vector<double> pv(n);
  for (std::size_t i = 0; i < n; ++i) {
    ph[i] = hawk_probability(pop.strategy(i, Role::Host), 0.0);
    pv[i] = hawk_probability(pop.strategy(i, Role::Visitor), 0.0);
  }
  return profiles_from(network_view(pop), ph, pv);
}

std::vector<AgentProfile> population_profiles(const Snapshot& snap) {
  const std::size_t n = snap.agents.size();
  std::vector<double> ph(n);
  std::vector<double> pv(n);
  for (std::size_t i = 0; i < n; ++i) {
    ph[i] = snap.agents[i].p_hawk_host;
    pv[i] = snap.agents[i].p_hawk_visit;
  }
  return profiles_from(network_view(snap), ph, pv);
}

AgentClass classify_agent(const AgentProfile& p, const ClassifierThresholds& t) {
  const bool host_hawk = p.p_hawk_host >= t.theta_s;
  const bool host_dove = p.p_hawk_host <= 1.0 - t.theta_s;
  const bool visit_hawk = p.p_hawk_visit >= t.theta_s;
  const bool visit_dove = p.p_hawk_visit <= 1.0 - t.theta_s;
  if (host_hawk && visit_dove) {
    return AgentClass::Bourgeois;
  }
  if (host_dove && visit_hawk) {
    return AgentClass::Paradoxical;
  }
  if (host_hawk && visit_hawk) {
    return AgentClass::PureHawk;
  }
  if (host_dove && visit_dove) {
    return AgentClass::PureDove;
  }
  return AgentClass::Mixed;
}

OutcomeLabel classify_population(const Population& pop, const ClassifierThresholds& t) {
  const NetworkView view = network_view(pop);
  std::vector<double> ph(pop.size());
  std::vector<double> pv(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    ph[i] = hawk_probability(pop.strategy(i, Role::Host), 0.0);
    pv[i] = hawk_probability(pop.strategy(i, Role::Visitor), 0.0);
  }
  return classify_from(profiles_from(view, ph, pv), view, t);
}

OutcomeLabel classify_population(const Snapshot& snap, const ClassifierThresholds& t) {
  const NetworkView view = network_view(snap);
  std::vector<double> ph(snap.agents.size());
  std::vector<double> pv(snap.agents.size());
  for (std::size_t i = 0; i < snap.agents.size(); ++i) {
    ph[i] = snap.agents[i].p_hawk_host;
    pv[i] = snap.agents[i].p_hawk_visit;
  }
  return classify_from(profiles_from(view, ph, pv), view, t);
}

double network_homogeneity(const Population& pop) {
  return homogeneity_from(expected_visitors(pop, 0.0));
}

double network_homogeneity(const Snapshot& snap) {
  return homogeneity_from(network_view(snap).expected);
}

std::vector<double> degree_distribution_threshold(const Population& pop, double c) {
  return threshold_histogram(network_view(pop), c);
}

std::vector<double> degree_distribution_threshold(const Snapshot& snap, double c) {
  return threshold_histogram(network_view(snap), c);
}

std::vector<double> degree_distribution_expected(const Population& pop, double bin_width) {
  return expected_histogram(expected_visitors(pop, 0.0), bin_width);
}

std::vector<double> degree_distribution_expected(const Snapshot& snap, double bin_width) {
  return expected_histogram(network_view(snap).expected, bin_width);
}

std::vector<double> erdos_renyi_degree_baseline(std::uint32_t n, double p,
                                                std::uint32_t seeds, Rng rng) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("erdos_renyi_degree_baseline: p must lie in [0, 1]");
  }
  if (n == 0 || seeds == 0) {
    throw std::invalid_argument("erdos_renyi_degree_baseline: n and seeds must be positive");
  }
  std::vector<double> counts(n, 0.0);
  std::vector<std::uint32_t> degree(n);
  for (std::uint32_t s = 0; s < seeds; ++s) {
    Rng g = rng.fork(s);
    std::fill(degree.begin(), degree.end(), 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        if (g.next_double() < p) {
          ++degree[i];
          ++degree[j];
        }
      }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      counts[degree[i]] += 1.0;
    }
  }
  for (double& c : counts) {
    c /= static_cast<double>(seeds);
  }
  return counts;
}

double distance_from_mixed_nash(const Population& pop, const GamePayoffs& g) {
  return nash_distance_from(population_profiles(pop), g);
}

double distance_from_mixed_nash(const Snapshot& snap, const GamePayoffs& g) {
  return nash_distance_from(population_profiles(snap), g);
}

TrajectoryLabel classify_trajectory(const std::vector<SnapshotClassification>& steps) {
  if (steps.empty() || !is_convention(steps.back().label)) {
    throw std::invalid_argument(
        "classify_trajectory: run did not end in a convention");
  }
  const OutcomeLabel final_label = steps.back().label;
  std::size_t onset = steps.size() - 1;
  while (onset > 0 && steps[onset - 1].label == final_label) {
    --onset;
  }
  bool saw_hub_phase = false;
  bool saw_contrary_convention = false;
  for (std::size_t k = 0; k < onset; ++k) {
    const OutcomeLabel l = steps[k].label;
    saw_hub_phase |= steps[k].has_hub || l == OutcomeLabel::Network ||
                     l == OutcomeLabel::Hybrid;
    saw_contrary_convention |= is_convention(l) && l != final_label;
  }
  if (saw_hub_phase) {
    return TrajectoryLabel::ViaHubSpoke;
  }
  return saw_contrary_convention ? TrajectoryLabel::Other
                                 : TrajectoryLabel::DirectToConvention;
}

TrajectoryLabel classify_trajectory(const std::vector<Snapshot>& snapshots,
                                    const ClassifierThresholds& t) {
  std::vector<SnapshotClassification> steps;
  steps.reserve(snapshots.size());
  for (const Snapshot& s : snapshots) {
    const NetworkView view = network_view(s);
    bool has_hub = false;
    for (double e : view.expected) {
      has_hub |= e >= t.hub_factor;
    }
    steps.push_back({s.round, classify_population(s, t), has_hub});
  }
  return classify_trajectory(steps);
}

const char* to_string(OutcomeLabel label) {
  switch (label) {
    case OutcomeLabel::Bourgeois: return "bourgeois";
    case OutcomeLabel::Paradoxical: return "paradoxical";
    case OutcomeLabel::Network: return "network";
    case OutcomeLabel::Hybrid: return "hybrid";
    case OutcomeLabel::Unresolved: return "unresolved";
  }
  return "unresolved";
}

const char* to_string(AgentClass c) {
  switch (c) {
    case AgentClass::Bourgeois: return "bourgeois";
    case AgentClass::Paradoxical: return "paradoxical";
    case AgentClass::PureHawk: return "pure_hawk";
    case AgentClass::PureDove: return "pure_dove";
    case AgentClass::Mixed: return "mixed";
  }
  return "mixed";
}

const char* to_string(TrajectoryLabel label) {
  switch (label) {
    case TrajectoryLabel::DirectToConvention: return "direct_to_convention";
    case TrajectoryLabel::ViaHubSpoke: return "via_hub_spoke";
    case TrajectoryLabel::Other: return "other";
  }
  return "other";
}

OutcomeLabel outcome_label_from_string(const std::string& s) {
  if (s == "bourgeois") return OutcomeLabel::Bourgeois;
  if (s == "paradoxical") return OutcomeLabel::Paradoxical;
  if (s == "network") return OutcomeLabel::Network;
  if (s == "hybrid") return OutcomeLabel::Hybrid;
  if (s == "unresolved") return OutcomeLabel::Unresolved;
  throw std::invalid_argument("unknown outcome label: " + s);
}

}  // namespace convsim
