#include <doctest.h>

#include <cmath>
#include <vector>

#include "convsim/rng.hpp"
#include "convsim/weights.hpp"

using namespace convsim;

TEST_CASE("reinforce: worked examples") {
  {
    const auto w = reinforce({1.0, 1.0}, 0, 0.6, 0.01);
    CHECK(w[0] == doctest::Approx(1.59).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(0.99).epsilon(1e-15));
  }
  {
    const auto w = reinforce({2.0, 2.0}, 1, 0.0, 0.0);
    CHECK(w[0] == 2.0);
    CHECK(w[1] == 2.0);
  }
  {
    const auto w = reinforce({4.0, 2.0}, 1, 1.0, 0.5);
    CHECK(w[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(2.0).epsilon(1e-15));
  }
}

TEST_CASE("reinforce: every entry is discounted, only the chosen one gains") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.next_below(8);
    std::vector<double> w(n);
    for (double& v : w) {
      v = 10.0 * rng.next_double();
    }
    const std::size_t chosen = rng.next_below(n);
    const double pay = rng.next_double();
    const double delta = 0.99 * rng.next_double();
    const auto updated = reinforce(w, chosen, pay, delta);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = (1.0 - delta) * w[i] + (i == chosen ? pay : 0.0);
      REQUIRE(updated[i] == want);  // identical arithmetic, exact match
    }
  }
}

TEST_CASE("action_probabilities: worked examples") {
  {
    const auto p = action_probabilities(std::vector<double>{1.0, 1.0}, 0.0);
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.5);
  }
  {
    const auto p = action_probabilities(std::vector<double>{3.0, 1.0}, 0.01);
    CHECK(p[0] == doctest::Approx(0.7475).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.2525).epsilon(1e-15));
  }
  {
    // equal partner weights with the self entry excluded: uniform over others
    const std::size_t n = 20;
    std::vector<double> w(n, 19.0 / (n - 1));
    w[4] = 0.0;
    const auto p = action_probabilities(w, 0.37, 4);
    CHECK(p[4] == 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != 4) {
        REQUIRE(p[j] == doctest::Approx(1.0 / (n - 1)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("action_probabilities: normalization within 1e-12") {
  Rng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.next_below(40);
    std::vector<double> w(n);
    for (double& v : w) {
      v = std::exp(20.0 * (rng.next_double() - 0.5));
    }
    const double eps = rng.next_double();
    const std::size_t exclude = rng.next_below(2) == 0 ? rng.next_below(n) : kNoExclusion;
    if (exclude < n) {
      w[exclude] = 0.0;
    }
    const auto p = action_probabilities(w, eps, exclude);
    double sum = 0.0;
    for (double v : p) {
      REQUIRE(v >= 0.0);
      sum += v;
    }
    REQUIRE(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("action_probabilities: underflow falls back to uniform and flags") {
  std::vector<double> dead(5, 1e-310);
  dead[2] = 0.0;
  bool underflow = false;
  const auto p = action_probabilities(dead, 0.25, 2, &underflow);
  CHECK(underflow);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(p[j] == (j == 2 ? 0.0 : 0.25));
  }
}

TEST_CASE("StrategyWeights: tracks the plain reinforcement recurrence") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const double delta = trial % 2 == 0 ? 0.0 : 0.3 * rng.next_double();
    StrategyWeights sw(1.0, 1.0);
    std::vector<double> ref{1.0, 1.0};
    for (int step = 0; step < 3000; ++step) {
      const std::size_t chosen = rng.next_below(2);
      const double pay = rng.next_below(4) == 0 ? 0.0 : rng.next_double();
      sw.reinforce(chosen == 0 ? Strategy::Hawk : Strategy::Dove, pay, delta);
      ref = reinforce(std::move(ref), chosen, pay, delta);
    }
    CHECK(sw.weight(Strategy::Hawk) == doctest::Approx(ref[0]).epsilon(1e-12));
    CHECK(sw.weight(Strategy::Dove) == doctest::Approx(ref[1]).epsilon(1e-12));
    CHECK(sw.total() == doctest::Approx(ref[0] + ref[1]).epsilon(1e-12));
  }
}

TEST_CASE("SumTree: tracks the plain reinforcement recurrence") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.next_below(35);
    const double delta = trial % 2 == 0 ? 0.0 : 0.2 * rng.next_double();
    std::vector<double> ref(n, 0.5);
    ref[0] = 0.0;
    SumTree tree(ref);
    for (int step = 0; step < 2000; ++step) {
      const std::size_t chosen = 1 + rng.next_below(n - 1);
      const double pay = rng.next_below(4) == 0 ? 0.0 : rng.next_double();
      tree.reinforce(chosen, pay, delta);
      ref = reinforce(std::move(ref), chosen, pay, delta);
    }
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(tree.weight(i) == doctest::Approx(ref[i]).epsilon(1e-12));
    }
    double total = 0.0;
    for (double v : ref) {
      total += v;
    }
    CHECK(tree.total() == doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("SumTree: renormalization under heavy discounting stays accurate") {
  // delta = 0.9 shrinks the scale below the renormalization threshold within
  // ~100 zero-payoff updates; values must survive the rescale.
  SumTree tree(std::vector<double>{0.0, 3.0, 1.0, 2.0});
  std::vector<double> ref{0.0, 3.0, 1.0, 2.0};
  Rng rng(15);
  for (int step = 0; step < 500; ++step) {
    const std::size_t chosen = 1 + rng.next_below(3);
    const double pay = step % 7 == 0 ? rng.next_double() : 0.0;
    tree.reinforce(chosen, pay, 0.9);
    ref = reinforce(std::move(ref), chosen, pay, 0.9);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (ref[i] == 0.0) {
      CHECK(tree.weight(i) == 0.0);
    } else {
      CHECK(tree.weight(i) == doctest::Approx(ref[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("sampling matches the probability law") {
  Rng rng(16);
  const std::size_t n = 6;
  std::vector<double> w{0.0, 2.0, 0.5, 4.0, 0.25, 1.25};
  SumTree tree(w);
  const double eps = 0.1;
  const auto probs = action_probabilities(w, eps, 0);
  std::vector<int> hits(n, 0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    ++hits[tree.sample(rng.next_double(), eps, 0)];
  }
  CHECK(hits[0] == 0);
  for (std::size_t j = 1; j < n; ++j) {
    const double freq = static_cast<double>(hits[j]) / draws;
    REQUIRE(freq == doctest::Approx(probs[j]).epsilon(0.05));
  }
}

TEST_CASE("StrategyWeights sampling matches the probability law") {
  Rng rng(17);
  StrategyWeights sw(3.0, 1.0);
  const double eps = 0.02;
  const auto probs = action_probabilities(std::vector<double>{3.0, 1.0}, eps);
  int hawk = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    hawk += sw.sample(rng.next_double(), eps) == Strategy::Hawk;
  }
  CHECK(static_cast<double>(hawk) / draws == doctest::Approx(probs[0]).epsilon(0.02));
}

TEST_CASE("SumTree: zero-weight leaves are never sampled without errors") {
  std::vector<double> w{0.0, 1.0, 0.0, 2.0, 0.0};
  SumTree tree(w);
  Rng rng(18);
  for (int i = 0; i < 50000; ++i) {
    const std::size_t k = tree.sample(rng.next_double(), 0.0, 0);
    REQUIRE((k == 1 || k == 3));
  }
}

TEST_CASE("SumTree: underflowed totals fall back to uniform picks") {
  SumTree tree(std::vector<double>{0.0, 1e-310, 1e-310});
  Rng rng(19);
  bool underflow = false;
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 10000; ++i) {
    ++hits[tree.sample(rng.next_double(), 0.0, 0, &underflow)];
  }
  CHECK(underflow);
  CHECK(hits[0] == 0);
  CHECK(hits[1] > 4000);
  CHECK(hits[2] > 4000);
}
