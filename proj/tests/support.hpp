#pragma once

// Shared helpers for the unit and acceptance suites: fixture builders, an
// independently coded classifier oracle, bitwise population hashing, and the
// statistics used by the acceptance criteria. Everything here is test-only
// and deliberately avoids the library's own code paths where it serves as an
// oracle.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "convsim/analysis.hpp"
#include "convsim/engine.hpp"
#include "convsim/rng.hpp"

namespace test_support {

using namespace convsim;

// ---------------------------------------------------------------------------
// fixture builders

struct FixtureAgent {
  double p_hawk_host = 0.5;
  double p_hawk_visit = 0.5;
  std::vector<double> visit_probs;  // row over targets; self entry 0
};

// Builds a population whose epsilon-free probabilities reproduce the fixture
// exactly: strategy pairs (p, 1-p) and partner weights equal to the requested
// visit probabilities.
inline Population population_from_fixture(const std::vector<FixtureAgent>& agents,
                                          UpdateMode mode = UpdateMode::Asymmetric) {
  Population pop;
  pop.mode = mode;
  for (const FixtureAgent& f : agents) {
    Agent a;
    a.host_strategy = StrategyWeights(f.p_hawk_host, 1.0 - f.p_hawk_host);
    a.visitor_strategy = StrategyWeights(f.p_hawk_visit, 1.0 - f.p_hawk_visit);
    a.partner = SumTree(f.visit_probs);
    pop.agents.push_back(std::move(a));
  }
  return pop;
}

inline std::vector<double> uniform_row(std::size_t n, std::size_t self) {
  std::vector<double> row(n, 1.0 / static_cast<double>(n - 1));
  row[self] = 0.0;
  return row;
}

inline std::vector<double> point_row(std::size_t n, std::size_t target) {
  std::vector<double> row(n, 0.0);
  row[target] = 1.0;
  return row;
}

// ---------------------------------------------------------------------------
// independent classifier oracle
//
// A from-scratch re-coding of the documented decision table, structured as
// plain predicate checks over the profile list so that a mistake in the
// library's staged implementation cannot hide here too.

inline AgentClass oracle_classify_agent(double ph, double pv, double theta_s) {
  const bool hh = ph >= theta_s;
  const bool hd = ph <= 1.0 - theta_s;
  const bool vh = pv >= theta_s;
  const bool vd = pv <= 1.0 - theta_s;
  if (hh && vd) return AgentClass::Bourgeois;
  if (hd && vh) return AgentClass::Paradoxical;
  if (hh && vh) return AgentClass::PureHawk;
  if (hd && vd) return AgentClass::PureDove;
  return AgentClass::Mixed;
}

inline OutcomeLabel oracle_classify(const std::vector<FixtureAgent>& agents,
                                    const ClassifierThresholds& t) {
  const std::size_t n = agents.size();
  std::vector<double> expected(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      expected[j] += agents[i].visit_probs[j];
    }
  }
  double max_e = 0.0;
  for (double e : expected) {
    max_e = std::fmax(max_e, e);
  }

  std::size_t bourgeois = 0;
  std::size_t paradoxical = 0;
  for (const FixtureAgent& a : agents) {
    const AgentClass c = oracle_classify_agent(a.p_hawk_host, a.p_hawk_visit, t.theta_s);
    bourgeois += c == AgentClass::Bourgeois;
    paradoxical += c == AgentClass::Paradoxical;
  }
  if (max_e <= t.homog_max &&
      static_cast<double>(bourgeois) >= t.theta_p * static_cast<double>(n)) {
    return OutcomeLabel::Bourgeois;
  }
  if (max_e <= t.homog_max &&
      static_cast<double>(paradoxical) >= t.theta_p * static_cast<double>(n)) {
    return OutcomeLabel::Paradoxical;
  }

  bool any_hub = false;
  bool all_hubs_dove_host = true;
  bool all_hubs_paradoxical = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (expected[i] >= t.hub_factor) {
      any_hub = true;
      all_hubs_dove_host &= agents[i].p_hawk_host <= 1.0 - t.theta_s;
      all_hubs_paradoxical &=
          oracle_classify_agent(agents[i].p_hawk_host, agents[i].p_hawk_visit,
                                t.theta_s) == AgentClass::Paradoxical;
    }
  }
  if (!any_hub || !all_hubs_dove_host) {
    return OutcomeLabel::Unresolved;
  }

  std::size_t non_hubs = 0;
  std::size_t committed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (expected[i] >= t.hub_factor) {
      continue;
    }
    ++non_hubs;
    if (agents[i].p_hawk_visit < t.theta_s) {
      continue;
    }
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (agents[j].p_hawk_host <= 1.0 - t.theta_s) {
        mass += agents[i].visit_probs[j];
      }
    }
    if (mass >= t.theta_s) {
      ++committed;
    }
  }
  if (non_hubs == 0 ||
      static_cast<double>(committed) < t.theta_p * static_cast<double>(non_hubs)) {
    return OutcomeLabel::Unresolved;
  }
  return all_hubs_paradoxical ? OutcomeLabel::Hybrid : OutcomeLabel::Network;
}

// Random fixture generator mixing archetype states with noise so all five
// labels appear across seeds.
inline std::vector<FixtureAgent> random_fixture(Rng& rng, std::size_t n) {
  std::vector<FixtureAgent> agents(n);
  const double archetype = rng.next_double();
  const std::size_t hub_count = 1 + rng.next_below(std::max<std::size_t>(1, n / 5));
  for (std::size_t i = 0; i < n; ++i) {
    FixtureAgent& a = agents[i];
    if (archetype < 0.2) {  // bourgeois-ish
      a.p_hawk_host = 0.9 + 0.1 * rng.next_double();
      a.p_hawk_visit = 0.1 * rng.next_double();
      a.visit_probs = uniform_row(n, i);
    } else if (archetype < 0.4) {  // paradoxical-ish
      a.p_hawk_host = 0.1 * rng.next_double();
      a.p_hawk_visit = 0.9 + 0.1 * rng.next_double();
      a.visit_probs = uniform_row(n, i);
    } else if (archetype < 0.7) {  // hub-spoke-ish
      const bool hub = i < hub_count;
      a.p_hawk_host = hub ? 0.05 * rng.next_double() : rng.next_double();
      a.p_hawk_visit = hub && rng.next_double() < 0.5 ? rng.next_double()
                                                      : 0.9 + 0.1 * rng.next_double();
      a.visit_probs.assign(n, 0.0);
      std::size_t target = rng.next_below(hub_count);
      if (target == i) {
        target = (target + 1) % n;
      }
      a.visit_probs[target] = 1.0;
    } else {  // noise
      a.p_hawk_host = rng.next_double();
      a.p_hawk_visit = rng.next_double();
      a.visit_probs.assign(n, 0.0);
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) {
          a.visit_probs[j] = rng.next_double();
          total += a.visit_probs[j];
        }
      }
      for (double& p : a.visit_probs) {
        p /= total;
      }
    }
  }
  // Perturb a few agents so quorum boundaries get exercised.
  const std::size_t flips = rng.next_below(1 + n / 8);
  for (std::size_t k = 0; k < flips; ++k) {
    FixtureAgent& a = agents[rng.next_below(n)];
    a.p_hawk_host = rng.next_double();
    a.p_hawk_visit = rng.next_double();
  }
  return agents;
}

// ---------------------------------------------------------------------------
// hashing and stats

inline std::uint64_t hash_doubles(std::uint64_t h, const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &data[i], sizeof(bits));
    h ^= bits;
    h *= 0x100000001b3ull;
    h = convsim::mix64(h);
  }
  return h;
}

inline std::uint64_t hash_population(const Population& pop) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const StrategyWeights& host = pop.strategy(i, Role::Host);
    const StrategyWeights& visit = pop.strategy(i, Role::Visitor);
    const double vals[4] = {host.weight(Strategy::Hawk), host.weight(Strategy::Dove),
                            visit.weight(Strategy::Hawk), visit.weight(Strategy::Dove)};
    h = hash_doubles(h, vals, 4);
    const std::vector<double> partner = pop.agents[i].partner.weights();
    h = hash_doubles(h, partner.data(), partner.size());
  }
  return h;
}

struct WilsonInterval {
  double lo;
  double hi;
};

// 95% Wilson score interval for a binomial proportion.
inline WilsonInterval wilson95(std::size_t successes, std::size_t trials) {
  if (trials == 0) {
    return {0.0, 1.0};
  }
  const double z = 1.959963984540054;
  const double nd = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double margin =
      z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  return {center - margin, center + margin};
}

// Spearman rank correlation (average ranks for ties).
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      double less = 0.0;
      double equal = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        less += v[j] < v[i];
        equal += v[j] == v[i];
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  const std::vector<double> rx = ranks(xs);
  const std::vector<double> ry = ranks(ys);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace test_support
