#include "convsim/population.hpp"

#include "convsim/rng.hpp"

namespace convsim {

namespace {

double positive_uniform(Rng& rng, double upper) {
  double u = rng.next_double();
  while (u == 0.0) {
    u = rng.next_double();
  }
  return u * upper;
}

StrategyWeights draw_pair(Rng& rng, double scale) {
  const double hawk = positive_uniform(rng, 2.0 * scale);
  const double dove = positive_uniform(rng, 2.0 * scale);
  return {hawk, dove};
}

}  // namespace

Population init_population(const SimConfig& config) {
  config.validate();
  const std::size_t n = config.n;
  Population pop;
  pop.mode = config.mode;
  pop.agents.reserve(n);

  const double tie = config.network_scale / static_cast<double>(n - 1);
  Rng init = Rng(config.seed).fork(kStreamInit);

  for (std::size_t i = 0; i < n; ++i) {
    Agent agent;
    const double s = config.strategy_scale;
    if (config.strategy_init == StrategyInit::Uniform) {
      agent.host_strategy = StrategyWeights(s, s);
      agent.visitor_strategy = StrategyWeights(s, s);
    } else {
      agent.host_strategy = draw_pair(init, s);
      agent.visitor_strategy = config.mode == UpdateMode::Symmetric
                                   ? agent.host_strategy
                                   : draw_pair(init, s);
    }
    std::vector<double> leaves(n, tie);
    leaves[i] = 0.0;
    agent.partner = SumTree(std::move(leaves));
    pop.agents.push_back(std::move(agent));
  }
  return pop;
}

double hawk_probability(const StrategyWeights& w, double epsilon) {
  const double total = w.total();
  if (total < kWeightSumUnderflow) {
    return 0.5;
  }
  return (1.0 - epsilon) * (w.weight(Strategy::Hawk) / total) + epsilon / 2.0;
}

std::vector<double> expected_visitors(const Population& pop, double epsilon) {
  const std::size_t n = pop.size();
  std::vector<double> expected(n, 0.0);
  const double uniform = epsilon / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const SumTree& partner = pop.agents[i].partner;
    const double total = partner.total();
    if (total < kWeightSumUnderflow) {
      const double p = 1.0 / static_cast<double>(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) {
          expected[j] += p;
        }
      }
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        expected[j] += (1.0 - epsilon) * (partner.weight(j) / total) + uniform;
      }
    }
  }
  return expected;
}

Snapshot make_snapshot(const Population& pop, std::uint64_t round, double epsilon) {
  const std::size_t n = pop.size();
  Snapshot snap;
  snap.round = round;
  snap.mode = pop.mode;
  snap.epsilon = epsilon;
  snap.agents.resize(n);
  const std::vector<double> expected = expected_visitors(pop, epsilon);
  for (std::size_t i = 0; i < n; ++i) {
    SnapshotAgent& sa = snap.agents[i];
    const StrategyWeights& host = pop.strategy(i, Role::Host);
    const StrategyWeights& visit = pop.strategy(i, Role::Visitor);
    sa.host_weights = {host.weight(Strategy::Hawk), host.weight(Strategy::Dove)};
    sa.visitor_weights = {visit.weight(Strategy::Hawk), visit.weight(Strategy::Dove)};
    sa.partner_weights = pop.agents[i].partner.weights();
    sa.p_hawk_host = hawk_probability(host, 0.0);
    sa.p_hawk_visit = hawk_probability(visit, 0.0);
    sa.p_hawk_host_eps = hawk_probability(host, epsilon);
    sa.p_hawk_visit_eps = hawk_probability(visit, epsilon);
    sa.expected_visitors = expected[i];
  }
  return snap;
}

}  // namespace convsim
