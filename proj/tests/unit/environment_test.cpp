#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "fso/environment.hpp"

namespace fso {
namespace {

SourceSpec source(ArrivalProcess p, std::string topic = "t", std::uint64_t soc = 0) {
  return {std::move(topic), HolonId{soc}, std::move(p)};
}

std::vector<Tick> times_of(const std::vector<Arrival>& arrivals) {
  std::vector<Tick> out;
  for (const Arrival& a : arrivals) out.push_back(a.time);
  return out;
}

TEST(Environment, DeterministicPeriodAndOffset) {
  const EnvironmentSpec env{{source(Deterministic{5, 0})}};
  EXPECT_EQ(times_of(sample_arrivals(env, 0, 20, Rng(1))), (std::vector<Tick>{0, 5, 10, 15}));

  const EnvironmentSpec shifted{{source(Deterministic{4, 3})}};
  EXPECT_EQ(times_of(sample_arrivals(shifted, 5, 16, Rng(1))), (std::vector<Tick>{7, 11, 15}));
}

TEST(Environment, TraceTimesAndExhaustion) {
  const SourceSpec s = source(TraceTimes{{2, 9, 30}});
  Rng rng(0);
  EXPECT_EQ(next_event_time(s, -1, rng), 2);
  EXPECT_EQ(next_event_time(s, 2, rng), 9);
  EXPECT_EQ(next_event_time(s, 29, rng), 30);
  EXPECT_EQ(next_event_time(s, 30, rng), kNever);
  EXPECT_EQ(times_of(sample_arrivals({{s}}, 0, 30, Rng(0))), (std::vector<Tick>{2, 9}));
}

TEST(Environment, NextEventIsStrictlyLater) {
  Rng rng(3);
  EXPECT_EQ(next_event_time(source(Deterministic{5, 0}), 5, rng), 10);
  EXPECT_EQ(next_event_time(source(Deterministic{5, 0}), 4, rng), 5);
  EXPECT_EQ(next_event_time(source(Poisson{1.0}), 7, rng), 8);
  for (int i = 0; i < 100; ++i) EXPECT_GT(next_event_time(source(Poisson{0.3}), 10, rng), 10);
}

TEST(Environment, PoissonMeanGapMatchesRate) {
  const EnvironmentSpec env{{source(Poisson{0.2})}};
  const std::vector<Tick> t = times_of(sample_arrivals(env, 0, 50'000, Rng(42)));
  ASSERT_GT(t.size(), 2u);
  const double mean = static_cast<double>(t.back() - t.front()) / static_cast<double>(t.size() - 1);
  EXPECT_NEAR(mean, 5.0, 0.25);
}

TEST(Environment, PoissonGapsAreGeometric) {
  // P(gap = 1) = rate for the lattice process.
  const SourceSpec s = source(Poisson{0.3});
  Rng rng(11);
  int ones = 0;
  const int n = 20'000;
  Tick t = 0;
  for (int i = 0; i < n; ++i) {
    const Tick next = next_event_time(s, t, rng);
    ones += next - t == 1 ? 1 : 0;
    t = next;
  }
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.3, 0.02);
}

TEST(Environment, SamplingEqualsFoldingTheStreams) {
  const EnvironmentSpec env{{source(Poisson{0.1}, "a"), source(Deterministic{7, 2}, "b"), source(Poisson{0.05}, "c")}};
  const Rng base(77);
  const std::vector<Arrival> sampled = sample_arrivals(env, 0, 500, base);

  std::vector<Arrival> folded;
  for (std::size_t i = 0; i < env.sources.size(); ++i) {
    Rng stream = base.fork(i);
    for (Tick t = next_event_time(env.sources[i], -1, stream); t < 500; t = next_event_time(env.sources[i], t, stream))
      folded.push_back({t, i, env.sources[i].topic, env.sources[i].soc});
  }
  std::stable_sort(folded.begin(), folded.end(),
                   [](const Arrival& a, const Arrival& b) { return std::tie(a.time, a.source) < std::tie(b.time, b.source); });
  EXPECT_EQ(sampled, folded);
}

TEST(Environment, SameSeedSameArrivals) {
  const EnvironmentSpec env{{source(Poisson{0.25}), source(Poisson{0.25})}};
  EXPECT_EQ(sample_arrivals(env, 0, 1000, Rng(5)), sample_arrivals(env, 0, 1000, Rng(5)));
  EXPECT_NE(sample_arrivals(env, 0, 1000, Rng(5)), sample_arrivals(env, 0, 1000, Rng(6)));
  // Forked streams are distinct even though the two sources are identical.
  const auto both = sample_arrivals(env, 0, 1000, Rng(5));
  std::vector<Tick> first, second;
  for (const Arrival& a : both) (a.source == 0 ? first : second).push_back(a.time);
  EXPECT_NE(first, second);
}

TEST(Environment, RngIsReproducible) {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(Rng(123).fork(0).next_u64(), Rng(123).fork(1).next_u64());
  const double u = Rng(9).uniform01();
  EXPECT_GE(u, 0.0);
  EXPECT_LT(u, 1.0);
  EXPECT_THROW((void)sample_arrivals({}, 5, 5, Rng(0)), std::invalid_argument);
}

}  // namespace
}  // namespace fso
