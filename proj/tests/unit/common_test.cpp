#include <doctest.h>

#include <numeric>
#include <vector>

#include "ranloop/common.hpp"

using namespace ranloop;

TEST_SUITE_BEGIN("common");

TEST_CASE("service class names round-trip") {
  CHECK(to_string(ServiceClass::eMBB) == "eMBB");
  CHECK(to_string(ServiceClass::URLLC) == "URLLC");
  CHECK(to_string(ServiceClass::mMTC) == "mMTC");
  for (ServiceClass s : kAllSlices) {
    ServiceClass out;
    REQUIRE(parse_service_class(to_string(s), out));
    CHECK(out == s);
  }
  ServiceClass out;
  CHECK_FALSE(parse_service_class("embb", out));
  CHECK_FALSE(parse_service_class("", out));
}

TEST_CASE("nearest-rank percentile picks the max for p99 of 100 samples") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);  // 1..100
  CHECK(percentile_nearest_rank(v, 0.99) == doctest::Approx(100.0));
  CHECK(percentile_nearest_rank(v, 0.50) == doctest::Approx(51.0));
  CHECK(percentile_nearest_rank(v, 0.0) == doctest::Approx(1.0));
  CHECK(percentile_nearest_rank(v, 1.0) == doctest::Approx(100.0));
}

TEST_CASE("percentile handles small and empty samples") {
  CHECK(percentile_nearest_rank({}, 0.99) == 0.0);
  std::vector<double> one{7.0};
  CHECK(percentile_nearest_rank(one, 0.99) == 7.0);
  std::vector<double> unsorted{3.0, 1.0, 2.0};
  CHECK(percentile_nearest_rank(unsorted, 0.5) == 2.0);
}

TEST_CASE("p99 >= p50 on any sample") {
  std::vector<double> v{5.0, 1.0, 9.0, 2.2, 4.4, 8.8, 0.1};
  CHECK(percentile_nearest_rank(v, 0.99) >= percentile_nearest_rank(v, 0.50));
}

TEST_CASE("format_double round-trips exactly") {
  for (double x : {0.1, 1.0, 83.8054, 1e-9, 12345.6789, -2.5e17}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("format_fixed uses ordinary rounding") {
  CHECK(format_fixed(1.0, 2) == "1.00");
  CHECK(format_fixed(0.615, 2) == "0.61");  // 0.615 is below .615 in binary
  CHECK(format_fixed(8.8333333, 2) == "8.83");
}

TEST_CASE("fnv1a64 is stable") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") != fnv1a64("b"));
  static_assert(fnv1a64("traffic") == fnv1a64("traffic"));
}

TEST_SUITE_END();
