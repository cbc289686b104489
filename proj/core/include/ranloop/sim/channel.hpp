#pragma once

#include <cmath>

namespace ranloop {

// Rounded speed of light: the FSPL reference points this model is calibrated
// against (83.80 dB at 100 m / 3.7 GHz) were derived with c = 3e8.
inline constexpr double kSpeedOfLight = 3.0e8;

// Friis free-space path loss. Distance clamped at d_min to avoid the log
// singularity; strictly increasing in d and f beyond the clamp.
double fspl_db(double distance_m, double freq_hz, double d_min_m = 1.0);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

// (c / 4πf)^2 — linear free-space gain is this over d^2.
double fs_gain_coeff(double freq_hz);

// Thermal noise power per PRB in mW: -174 dBm/Hz + 10log10(bw) + NF.
double noise_mw(double bandwidth_hz, double noise_figure_db);

// Shannon proxy spectral efficiency, capped.
inline double spectral_efficiency(double sinr_linear, double se_max) {
  const double se = std::log2(1.0 + sinr_linear);
  return se < se_max ? se : se_max;
}

}  // namespace ranloop
