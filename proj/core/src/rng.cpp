#include "ranloop/rng.hpp"

#include <cmath>

namespace ranloop {

std::uint64_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean > 64.0) {
    const double v = std::floor(normal(mean, std::sqrt(mean)) + 0.5);
    return v < 0.0 ? 0 : static_cast<std::uint64_t>(v);
  }
  const double limit = std::exp(-mean);
  double prod = uniform();
  std::uint64_t n = 0;
  while (prod > limit) {
    prod *= uniform();
    ++n;
  }
  return n;
}

}  // namespace ranloop
