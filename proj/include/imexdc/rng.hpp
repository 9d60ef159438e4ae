#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace imexdc::rng {

// Stream-splitting scheme: every random quantity of an instance (matrix
// entries, support indices, signal values, noise, ...) is drawn from its own
// generator seeded by mix(seed + (stream_id + 1) * golden_gamma), so streams
// are independent of draw order elsewhere.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGoldenGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

enum class Stream : std::uint64_t {
  matrix = 0,
  support = 1,
  signal = 2,
  noise = 3,
  image = 4,
  labels = 5,
};

inline std::uint64_t stream_seed(std::uint64_t seed, Stream s) {
  std::uint64_t state = seed + (static_cast<std::uint64_t>(s) + 1) * kGoldenGamma;
  return splitmix64(state);
}

// mt19937_64 with uniform [0,1) from the top 53 bits and a Box-Muller normal;
// the draw sequence is fixed by this class, not by the standard library's
// distribution objects.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, Stream s) : gen_(stream_seed(seed, s)) {}

  std::uint64_t bits() { return gen_(); }

  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 in [0,1) keeps the log finite
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t integer(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = bits();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace imexdc::rng
