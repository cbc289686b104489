#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace ranloop {

// Network slice service classes. Order is fixed: it is the canonical
// iteration/serialization order everywhere (reports, evidence, telemetry).
enum class ServiceClass : std::uint8_t { eMBB = 0, URLLC = 1, mMTC = 2 };

inline constexpr std::size_t kNumSlices = 3;
inline constexpr std::array<ServiceClass, kNumSlices> kAllSlices{
    ServiceClass::eMBB, ServiceClass::URLLC, ServiceClass::mMTC};

std::string_view to_string(ServiceClass s);
bool parse_service_class(std::string_view name, ServiceClass& out);

constexpr std::size_t index_of(ServiceClass s) {
  return static_cast<std::size_t>(s);
}

// Fixed-size per-slice container indexable by ServiceClass.
template <typename T>
struct SliceArray {
  std::array<T, kNumSlices> v{};

  T& operator[](ServiceClass s) { return v[index_of(s)]; }
  const T& operator[](ServiceClass s) const { return v[index_of(s)]; }
  T& at(std::size_t i) { return v[i]; }
  const T& at(std::size_t i) const { return v[i]; }

  auto begin() { return v.begin(); }
  auto end() { return v.end(); }
  auto begin() const { return v.begin(); }
  auto end() const { return v.end(); }

  friend bool operator==(const SliceArray&, const SliceArray&) = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// FNV-1a, used for stable name-keyed seed derivation.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Nearest-rank percentile with rank = floor(p*n) + 1, clamped to n.
// (For p=0.99 over 100 samples this selects the maximum, not the 99th.)
// Sorts a copy; `p` in [0,1]. Returns 0 for an empty sample.
double percentile_nearest_rank(std::span<const double> sample, double p);

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);

// Fixed-precision decimal form (ordinary rounding), e.g. format_fixed(0.615, 2).
std::string format_fixed(double v, int digits);

}  // namespace ranloop
