#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ranloop/common.hpp"

namespace ranloop {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Named substreams: every stochastic process draws from its own stream derived
// from (root seed, purpose label, entity id), so adding a consumer or changing
// pool size never perturbs unrelated draws.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose,
                                    std::uint64_t entity = 0) {
  return splitmix64(splitmix64(root ^ fnv1a64(purpose)) ^ splitmix64(entity));
}

// mt19937_64 is bit-exact by the standard; the distribution transforms are
// hand-rolled because the std:: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive bounds
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  double exponential(double rate) {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);  // unreachable in practice; guards log(0)
    return -std::log(u) / rate;
  }

  // Box-Muller with cached spare
  double normal(double mean = 0.0, double stddev = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return mean + stddev * r * std::cos(a);
  }

  // Knuth for small means; normal approximation above 64 (means here stay small)
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ranloop
