#include "ranloop/common.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <vector>

namespace ranloop {

std::string_view to_string(ServiceClass s) {
  switch (s) {
    case ServiceClass::eMBB:
      return "eMBB";
    case ServiceClass::URLLC:
      return "URLLC";
    case ServiceClass::mMTC:
      return "mMTC";
  }
  return "?";
}

bool parse_service_class(std::string_view name, ServiceClass& out) {
  for (ServiceClass s : kAllSlices) {
    if (name == to_string(s)) {
      out = s;
      return true;
    }
  }
  return false;
}

double percentile_nearest_rank(std::span<const double> sample, double p) {
  if (sample.empty()) return 0.0;
  std::vector<double> v(sample.begin(), sample.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  std::size_t rank = static_cast<std::size_t>(std::floor(p * static_cast<double>(n))) + 1;
  rank = std::clamp<std::size_t>(rank, 1, n);
  return v[rank - 1];
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, ptr);
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return std::string(buf);
}

}  // namespace ranloop
