#include <doctest.h>

#include <cmath>

#include "ranloop/rng.hpp"

using namespace ranloop;

TEST_SUITE_BEGIN("rng");

TEST_CASE("same seed, same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams differ by purpose and entity") {
  const std::uint64_t root = 7;
  CHECK(derive_seed(root, "traffic") != derive_seed(root, "mobility"));
  CHECK(derive_seed(root, "traffic", 0) != derive_seed(root, "traffic", 1));
  CHECK(derive_seed(root, "traffic", 3) == derive_seed(root, "traffic", 3));
  CHECK(derive_seed(1, "traffic") != derive_seed(2, "traffic"));
}

TEST_CASE("uniform stays in [0,1) and has the right mean") {
  Rng r(1);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("exponential mean matches 1/rate") {
  Rng r(2);
  const double rate = 4.0;
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += r.exponential(rate);
  CHECK(sum / n == doctest::Approx(1.0 / rate).epsilon(0.02));
}

TEST_CASE("poisson mean and determinism") {
  Rng r(3), r2(3);
  const double mean = 2.5;
  std::uint64_t sum = 0;
  for (int i = 0; i < 100000; ++i) sum += r.poisson(mean);
  CHECK(static_cast<double>(sum) / 100000 == doctest::Approx(mean).epsilon(0.02));
  Rng r3(3);
  for (int i = 0; i < 100; ++i) CHECK(r2.poisson(mean) == r3.poisson(mean));
  CHECK(Rng(9).poisson(0.0) == 0);
}

TEST_CASE("uniform_int covers inclusive bounds") {
  Rng r(4);
  bool lo = false, hi = false;
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.uniform_int(2, 5);
    REQUIRE(v >= 2);
    REQUIRE(v <= 5);
    lo |= (v == 2);
    hi |= (v == 5);
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("normal has roughly unit variance") {
  Rng r(5);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(s / n == doctest::Approx(0.0).epsilon(0.02));
  CHECK(s2 / n - (s / n) * (s / n) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_SUITE_END();
