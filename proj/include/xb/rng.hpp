#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace xb {

// SplitMix64 (Steele/Lea/Vigna). Used both as the per-stream generator and,
// through derive_seed, as the hash that splits a master seed into independent
// child streams keyed by (master_seed, a, b).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection on the top range.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  bool next_bit() { return (next() >> 63) != 0; }

  double next_double() {  // uniform in [0,1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child-stream derivation: seed' = mix(mix(mix(master ^ C0) ^ a) ^ b).
// Streams for distinct (a, b) are independent of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  std::uint64_t s = mix64(master ^ 0x5851f42d4c957f2dULL);
  s = mix64(s ^ (a + 0x9e3779b97f4a7c15ULL));
  s = mix64(s ^ (b + 0x14057b7ef767814fULL));
  return s;
}

inline std::vector<std::size_t> random_permutation(std::size_t n,
                                                   SplitMix64 &rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = rng.next_below(i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

}  // namespace xb
