#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranloop/common.hpp"

namespace ranloop {

struct BandConfig {
  std::string name;      // "n77" / "n78"
  double freq_hz = 0.0;
};

struct SliceTrafficConfig {
  double bytes_per_s = 0.0;        // system-wide offered load at load_scale=1
  double pkt_bytes_mean = 1000.0;
  double pkts_per_burst = 1.0;     // >1 => batch-Poisson bursts
  double sinusoid_period_s = 0.0;  // 0 => no modulation
  double sinusoid_amp = 0.0;
};

struct SliceConfig {
  double share = 0.0;        // initial per-cell PRB share
  double prb_cap = 0.0;      // coordinator budget cap on effective share
  int ar_cap = 0;            // actions per minute
  double energy_cap = 0.0;   // normalized energy index budget
  double sla_p99_ms = 0.0;
  SliceTrafficConfig traffic;
};

struct GateConfig {
  double alpha = 0.05;   // risk threshold
  double beta = 0.30;    // uncertainty threshold
  double tau = 0.60;     // consistency floor
  int n_fail_rollback = 3;
  double gamma_min = 0.125;
  int recovery_advances = 5;  // consecutive advances before gamma doubles
};

struct AgentConfig {
  int k_max = 3;
  int observe_epochs = 2;   // observation sub-window after each commit
  int window = 10;          // short-term KPM window W (also consistency M)
  double w_sla = 10.0;
  double w_lat = 3.0;
  double w_energy = 1.0;
  double w_ovh = 0.5;
  // per-Non-RT-period budgets (B in the gate)
  int budget_actions = 24;
  std::uint64_t budget_e2_bytes = 0;  // 0 => derived from telemetry budget
  int budget_cpu = 2000;
};

struct MemoryConfig {
  int n_promote = 3;
  int warmup_epochs = 20;
  int retrieve_k = 2;
};

struct ScenarioConfig {
  std::string name = "reference";
  // area / topology
  double area_w_m = 500.0;
  double area_h_m = 500.0;
  std::vector<Vec2> oru_positions;
  std::vector<BandConfig> bands;
  int prb_per_cell = 50;
  double prb_bandwidth_hz = 360e3;
  double tx_power_dbm = 30.0;
  double tx_power_min_dbm = 20.0;
  double noise_figure_db = 9.0;
  double se_max = 7.4;
  double se_min = 0.1;
  double hysteresis_db = 3.0;
  double d_min_m = 1.0;  // path-loss clamp
  // time
  double tick_s = 0.01;
  int nearrt_epoch_ticks = 50;
  double nonrt_period_s = 60.0;
  double episode_s = 600.0;
  // UEs
  SliceArray<int> ue_counts;
  double ue_speed_min = 1.0;
  double ue_speed_max = 15.0;
  // traffic shared knobs
  double load_scale = 1.0;
  double pkt_bytes_max_factor = 8.0;
  double queue_limit_s = 2.0;
  double probe_rate_hz = 20.0;  // per (cell,slice) sojourn-probe cap
  // slices
  SliceArray<SliceConfig> slices;
  double alpha_violation = 0.05;  // per-epoch violation-rate threshold
  double fairness_floor = 0.05;   // min PRB share any slice may be left with
  double prb_cap_budget = 1.00;   // target for Sigma prb_cap (renorm target)
  // controller
  GateConfig gate;
  AgentConfig agent;
  MemoryConfig memory;
  double telemetry_budget_fraction = 0.60;
  // coordinator intent lines (sent to an external coordinator verbatim)
  std::vector<std::string> intent;

  std::size_t num_cells() const { return oru_positions.size() * bands.size(); }
  double epoch_s() const { return tick_s * nearrt_epoch_ticks; }
  int epochs_per_episode() const {
    return static_cast<int>(episode_s / epoch_s() + 0.5);
  }
  int ticks_per_episode() const {
    return epochs_per_episode() * nearrt_epoch_ticks;
  }
  int epochs_per_nonrt() const {
    return static_cast<int>(nonrt_period_s / epoch_s() + 0.5);
  }
};

// Reference scenario: 6 ORUs x 2 bands, 20 UEs, Appendix-style slice budgets.
ScenarioConfig default_scenario();

// Loads a YAML scenario file; unspecified keys keep default_scenario() values.
ScenarioConfig load_scenario(const std::string& path);

// Writes the scenario back out (round-trip documentation of applied defaults).
std::string scenario_to_yaml(const ScenarioConfig& cfg);

}  // namespace ranloop
