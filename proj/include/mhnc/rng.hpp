#pragma once

#include <cstdint>
#include <random>

namespace mhnc {

// Identifies an independent random stream within one run.
enum class StreamTag : std::uint64_t {
  Arrivals = 1,
  Channel = 2,
  Coefficients = 3,
  Payload = 4,
  // Parameters of a randomly drawn verification instance.
  Instance = 5,
};

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic stream keyed by (seed, tag, index). Draws are computed from
// raw 64-bit output so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  std::uint8_t byte() { return static_cast<std::uint8_t>(next() >> 56); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mhnc
