#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gearevo {

// Deterministic random stream. All distribution transforms are implemented
// here on top of the engine's raw 64-bit output, so identical seeds produce
// identical draws on every platform and standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for a given purpose (and optional index) under one
  // master seed. Streams never share state, so adding draws to one purpose
  // cannot shift another.
  static RngStream derive(std::uint64_t master_seed, std::uint64_t purpose,
                          std::uint64_t index = 0) {
    std::uint64_t x = master_seed;
    x = splitmix(x ^ (0x9e3779b97f4a7c15ULL * (purpose + 1)));
    x = splitmix(x ^ (0xbf58476d1ce4e5b9ULL * (index + 1)));
    return RngStream(x);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller (one value per call).
  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace gearevo
