#include "convsim/engine.hpp"

#include "convsim/rng.hpp"

namespace convsim {

namespace {

// Per-agent decision stream contexts within a round.
constexpr std::uint64_t kCtxPartner = 0;
constexpr std::uint64_t kCtxVisitorStrategy = 1;
constexpr std::uint64_t kCtxHostStrategy = 2;
constexpr std::uint64_t kCtxCount = 3;

struct RoundWorkspace {
  std::vector<std::uint32_t> target;
  std::vector<Strategy> visitor_strategy;
  std::vector<Strategy> host_strategy;  // indexed by visitor
  std::vector<Rng> host_stream;
  std::vector<std::uint64_t> host_stream_round;

  void prepare(std::size_t n) {
    if (target.size() != n) {
      target.resize(n);
      visitor_strategy.resize(n);
      host_strategy.resize(n);
      host_stream.resize(n);
      host_stream_round.assign(n, ~std::uint64_t{0});
    }
  }
};

void run_round_ws(Population& pop, const SimConfig& config, std::uint64_t round,
                  RoundWorkspace& ws, RoundAggregate* aggregate,
                  const RoundHooks& hooks) {
  const std::size_t n = pop.size();
  const double eps = config.epsilon;
  const double delta = config.delta;
  const Rng round_base = Rng(config.seed).fork(kStreamRound).fork(round);
  ws.prepare(n);

  bool underflow = false;
  auto note_underflow = [&underflow, &pop]() {
    if (underflow) {
      ++pop.underflow_events;
      underflow = false;
    }
  };

  // Phase 1: all decisions from start-of-round weights.
  if (config.mode == UpdateMode::NoNetwork) {
    for (std::size_t i = 0; i < n; ++i) {
      Rng stream = round_base.fork(i * kCtxCount + kCtxPartner);
      const std::uint64_t k = stream.next_below(n - 1);
      ws.target[i] = static_cast<std::uint32_t>(k >= i ? k + 1 : k);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      Rng stream = round_base.fork(i * kCtxCount + kCtxPartner);
      ws.target[i] = static_cast<std::uint32_t>(
          pop.agents[i].partner.sample(stream.next_double(), eps, i, &underflow));
      note_underflow();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rng stream = round_base.fork(i * kCtxCount + kCtxVisitorStrategy);
    ws.visitor_strategy[i] =
        pop.strategy(i, Role::Visitor).sample(stream.next_double(), eps, &underflow);
    note_underflow();
    const std::uint32_t j = ws.target[i];
    if (ws.host_stream_round[j] != round) {
      ws.host_stream[j] = round_base.fork(j * kCtxCount + kCtxHostStrategy);
      ws.host_stream_round[j] = round;
    }
    ws.host_strategy[i] =
        pop.strategy(j, Role::Host).sample(ws.host_stream[j].next_double(), eps, &underflow);
    note_underflow();
  }

  // Phase 2: one reinforcement per related interaction, ascending visitor
  // index. Hosting payoffs never touch visiting or partner weights and vice
  // versa; in Asymmetric mode hosts do not learn partner ties at all.
  double host_payoff_sum = 0.0;
  double visitor_payoff_sum = 0.0;
  std::uint32_t host_hawk = 0;
  std::uint32_t visitor_hawk = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t j = ws.target[i];
    const Strategy vs = ws.visitor_strategy[i];
    const Strategy hs = ws.host_strategy[i];
    double vp = payoff(vs, hs, Role::Visitor, config.payoffs);
    double hp = payoff(hs, vs, Role::Host, config.payoffs);
    if (hooks.zero_host_payoffs) {
      hp = 0.0;
    }
    if (hooks.zero_visitor_payoffs) {
      vp = 0.0;
    }

    switch (config.mode) {
      case UpdateMode::Asymmetric:
        pop.agents[i].visitor_strategy.reinforce(vs, vp, delta);
        pop.agents[i].partner.reinforce(j, vp, delta);
        pop.agents[j].host_strategy.reinforce(hs, hp, delta);
        break;
      case UpdateMode::NoNetwork:
        pop.agents[i].visitor_strategy.reinforce(vs, vp, delta);
        pop.agents[j].host_strategy.reinforce(hs, hp, delta);
        break;
      case UpdateMode::Symmetric:
        pop.agents[i].host_strategy.reinforce(vs, vp, delta);
        pop.agents[i].partner.reinforce(j, vp, delta);
        pop.agents[j].host_strategy.reinforce(hs, hp, delta);
        pop.agents[j].partner.reinforce(i, hp, delta);
        break;
    }

    visitor_payoff_sum += vp;
    host_payoff_sum += hp;
    visitor_hawk += vs == Strategy::Hawk;
    host_hawk += hs == Strategy::Hawk;
    if (hooks.records != nullptr) {
      hooks.records->push_back({round, static_cast<std::uint32_t>(i), j, vs, hs, vp, hp});
    }
  }

  if (aggregate != nullptr) {
    aggregate->round = round;
    aggregate->visitor_hawk = visitor_hawk;
    aggregate->visitor_dove = static_cast<std::uint32_t>(n) - visitor_hawk;
    aggregate->host_hawk = host_hawk;
    aggregate->host_dove = static_cast<std::uint32_t>(n) - host_hawk;
    aggregate->mean_visitor_payoff = visitor_payoff_sum / static_cast<double>(n);
    aggregate->mean_host_payoff = host_payoff_sum / static_cast<double>(n);
  }
}

}  // namespace

void run_round(Population& pop, const SimConfig& config, std::uint64_t round,
               RoundAggregate* aggregate, const RoundHooks& hooks) {
  RoundWorkspace ws;
  run_round_ws(pop, config, round, ws, aggregate, hooks);
}

RunResult run_simulation(const SimConfig& config, RunObserver* observer) {
  config.validate();
  RunResult result;
  result.population = init_population(config);
  Population& pop = result.population;
  RunSummary& summary = result.summary;
  summary.rounds = config.rounds;

  if (observer != nullptr) {
    observer->on_snapshot(0, pop);
  }

  RoundWorkspace ws;
  RoundAggregate agg;
  double host_payoff_sum = 0.0;
  double visitor_payoff_sum = 0.0;
  for (std::uint64_t r = 0; r < config.rounds; ++r) {
    run_round_ws(pop, config, r, ws, &agg, {});
    summary.host_hawk += agg.host_hawk;
    summary.host_dove += agg.host_dove;
    summary.visitor_hawk += agg.visitor_hawk;
    summary.visitor_dove += agg.visitor_dove;
    host_payoff_sum += agg.mean_host_payoff;
    visitor_payoff_sum += agg.mean_visitor_payoff;
    if (observer != nullptr) {
      observer->on_round(agg);
      const std::uint64_t done = r + 1;
      if (done % config.snapshot_every == 0 || done == config.rounds) {
        observer->on_snapshot(done, pop);
      }
    }
  }

  if (config.rounds > 0) {
    summary.mean_host_payoff = host_payoff_sum / static_cast<double>(config.rounds);
    summary.mean_visitor_payoff = visitor_payoff_sum / static_cast<double>(config.rounds);
  }
  summary.underflow_events = pop.underflow_events;
  return result;
}

namespace {

class CollectingObserver : public RunObserver {
 public:
  explicit CollectingObserver(double epsilon) : epsilon_(epsilon) {}

  void on_snapshot(std::uint64_t round, const Population& pop) override {
    snapshots_.push_back(make_snapshot(pop, round, epsilon_));
  }

  std::vector<Snapshot> take() { return std::move(snapshots_); }

 private:
  double epsilon_;
  std::vector<Snapshot> snapshots_;
};

}  // namespace

CollectedRun run_simulation_collect(const SimConfig& config) {
  CollectingObserver obs(config.epsilon);
  RunResult result = run_simulation(config, &obs);
  return {std::move(result.population), result.summary, obs.take()};
}

}  // namespace convsim
