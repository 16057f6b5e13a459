#include "fso/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace fso {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::fork(std::size_t index) const { return Rng(splitmix64(seed_ + index + 1)); }

namespace {

Tick poisson_gap(double rate, Rng& rng) {
  if (rate >= 1.0) return 1;
  const double lambda = -std::log1p(-rate);
  const double e = -std::log1p(-rng.uniform01()) / lambda;
  const double gap = std::ceil(e);
  if (gap >= static_cast<double>(kNever / 2)) return kNever / 2;
  return std::max<Tick>(1, static_cast<Tick>(gap));
}

}  // namespace

Tick next_event_time(const SourceSpec& source, Tick t, Rng& rng) {
  return std::visit(
      [&](const auto& p) -> Tick {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Poisson>) {
          if (t >= kNever / 2) return kNever;
          return t + poisson_gap(p.rate, rng);
        } else if constexpr (std::is_same_v<P, Deterministic>) {
          if (t < p.offset) return p.offset;
          const Tick k = (t - p.offset) / p.period + 1;
          return p.offset + k * p.period;
        } else {
          auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
          return it == p.times.end() ? kNever : *it;
        }
      },
      source.process);
}

std::vector<Arrival> sample_arrivals(const EnvironmentSpec& spec, Tick t0, Tick t1, const Rng& rng) {
  if (t0 >= t1) throw std::invalid_argument("sample_arrivals: empty window");
  std::vector<Arrival> out;
  for (std::size_t i = 0; i < spec.sources.size(); ++i) {
    const SourceSpec& src = spec.sources[i];
    Rng stream = rng.fork(i);
    for (Tick t = next_event_time(src, t0 - 1, stream); t < t1; t = next_event_time(src, t, stream))
      out.push_back({t, i, src.topic, src.soc});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Arrival& a, const Arrival& b) { return std::tie(a.time, a.source) < std::tie(b.time, b.source); });
  return out;
}

}  // namespace fso
