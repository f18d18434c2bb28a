#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace crackhash {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for stream `index` of a master seed. Every parallel unit of
// work (tree, fold, fixture image) gets its own stream so results do not
// depend on scheduling or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + index * 0x9e3779b97f4a7c15ULL);
}

// Seeded generator with portable helpers. The mt19937_64 engine itself is
// fully specified by the standard; std::uniform_int_distribution is not,
// so bounded draws are done with Lemire's multiply-shift rejection method.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Unbiased integer in [0, n). n must be nonzero.
  std::uint64_t bounded(std::uint64_t n) {
    for (;;) {
      std::uint64_t x = next();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      auto lo = static_cast<std::uint64_t>(m);
      if (lo < n) {
        std::uint64_t threshold = -n % n;
        if (lo < threshold) continue;
      }
      return static_cast<std::uint64_t>(m >> 64);
    }
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[bounded(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace crackhash
