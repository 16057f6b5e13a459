#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "fso/ids.hpp"

namespace fso {

/// Bernoulli-lattice Poisson process: on average `rate` events per tick.
struct Poisson {
  double rate = 1.0;
  friend bool operator==(const Poisson&, const Poisson&) = default;
};

/// Events at offset + k * period, k >= 0.
struct Deterministic {
  Tick period = 1;
  Tick offset = 0;
  friend bool operator==(const Deterministic&, const Deterministic&) = default;
};

/// Events at the listed ticks (ascending).
struct TraceTimes {
  std::vector<Tick> times;
  friend bool operator==(const TraceTimes&, const TraceTimes&) = default;
};

using ArrivalProcess = std::variant<Poisson, Deterministic, TraceTimes>;

struct SourceSpec {
  std::string topic;
  HolonId soc;
  ArrivalProcess process;

  friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

struct EnvironmentSpec {
  std::vector<SourceSpec> sources;

  friend bool operator==(const EnvironmentSpec&, const EnvironmentSpec&) = default;
};

/// Seeded 64-bit Mersenne Twister. Its output sequence is fixed by the C++
/// standard, so streams are identical on every conforming platform. Uniform
/// doubles take the top 53 bits of one draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for source `index`: seeded with splitmix64(seed + index + 1).
  [[nodiscard]] Rng fork(std::size_t index) const;

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);

/// First event of `source` strictly after `t`. Only Poisson sources draw from `rng`:
/// the gap is ceil(E) (at least 1) with E exponential of rate -ln(1 - rate), so that
/// P(gap = k) = (1 - rate)^(k - 1) * rate and the mean gap is 1 / rate. Rates >= 1
/// emit every tick. Returns kNever when the source is exhausted.
[[nodiscard]] Tick next_event_time(const SourceSpec& source, Tick t, Rng& rng);

inline constexpr Tick kNever = INT64_MAX;

struct Arrival {
  Tick time = 0;
  std::size_t source = 0;
  std::string topic;
  HolonId soc;

  friend bool operator==(const Arrival&, const Arrival&) = default;
};

/// All arrivals in [t0, t1) ordered by (time, source index). Source i draws from
/// rng.fork(i), folding next_event_time from t0 - 1; the engine uses the same streams.
[[nodiscard]] std::vector<Arrival> sample_arrivals(const EnvironmentSpec& spec, Tick t0, Tick t1, const Rng& rng);

}  // namespace fso
