#include "mhnc/rng.hpp"

namespace mhnc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, StreamTag tag, std::uint64_t index)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(tag) << 32 ^ index))) {}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace mhnc
