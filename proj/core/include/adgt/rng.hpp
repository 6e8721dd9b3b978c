#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace adgt {

// Deterministic PRNG used everywhere randomness is needed.
//
// xoshiro256++ with state derived from (seed, stream) via splitmix64.
// The standard library engines/distributions are not pinned across
// implementations, so experiment reproducibility requires owning both the
// generator and the draw functions.  A (seed, stream) pair yields the same
// sequence on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t a = seed;
    std::uint64_t b = stream + 0x9e3779b97f4a7c15ull;
    for (auto& word : s_) word = splitmix64(a) ^ splitmix64(b);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound), unbiased via rejection sampling.
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_int: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4];
};

// Stream offsets reserving disjoint stream ranges per purpose, so draws for
// one concern never alias draws for another under the same user seed.
namespace streams {
inline constexpr std::uint64_t kTopology = 1ull << 32;   // + resample attempt
inline constexpr std::uint64_t kEnsemble = 2ull << 32;   // + agent index
inline constexpr std::uint64_t kDataset = 3ull << 32;
inline constexpr std::uint64_t kPartition = 4ull << 32;
}  // namespace streams

// First k entries of a uniformly random permutation of {0, ..., population-1}
// (partial Fisher-Yates).  Each k-subset arrives in uniformly random order.
inline std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                           std::size_t k, Rng& rng) {
  if (k > population)
    throw std::invalid_argument("sample_without_replacement: k exceeds population");
  std::vector<std::size_t> pool(population);
  for (std::size_t i = 0; i < population; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(population - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace adgt
