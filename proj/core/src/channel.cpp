#include "ranloop/sim/channel.hpp"

#include <numbers>

namespace ranloop {

double fspl_db(double distance_m, double freq_hz, double d_min_m) {
  const double d = distance_m < d_min_m ? d_min_m : distance_m;
  constexpr double four_pi_over_c = 4.0 * std::numbers::pi / kSpeedOfLight;
  return 20.0 * std::log10(d) + 20.0 * std::log10(freq_hz) +
         20.0 * std::log10(four_pi_over_c);
}

double fs_gain_coeff(double freq_hz) {
  const double x = kSpeedOfLight / (4.0 * std::numbers::pi * freq_hz);
  return x * x;
}

double noise_mw(double bandwidth_hz, double noise_figure_db) {
  const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
  return dbm_to_mw(dbm);
}

}  // namespace ranloop
