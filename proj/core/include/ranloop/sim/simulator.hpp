#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "ranloop/common.hpp"
#include "ranloop/config.hpp"
#include "ranloop/rng.hpp"

namespace ranloop {

// Control-plane knobs exposed to the skill layer and the coordinator.
// `version` is bumped by every mutation so the simulator can rebuild its
// derived caches lazily.
struct CellControl {
  double tx_power_dbm = 30.0;
  SliceArray<double> prb_share;
};

struct NetworkControlState {
  std::vector<CellControl> cells;
  SliceArray<double> prb_cap;
  SliceArray<int> ar_cap;
  SliceArray<double> energy_cap;
  std::vector<char> ue_pinned;
  std::uint64_t version = 0;

  void bump() { ++version; }
};

struct UEState {
  Vec2 pos;
  Vec2 waypoint;
  double speed = 0.0;
  int serving_cell = -1;
  ServiceClass slice = ServiceClass::eMBB;
  double sinr_db = 0.0;  // last tick
  double se = 0.0;
};

// Per-slice, per-episode byte ledger. All fields are exact integer counts;
// offered == served + dropped + backlog holds at every tick boundary.
struct ByteLedger {
  std::uint64_t offered = 0;
  std::uint64_t served = 0;
  std::uint64_t dropped = 0;
  std::uint64_t backlog = 0;
};

struct SliceEpochStats {
  double violation_rate = 0.0;  // (late + dropped probes) / (completed + dropped)
  double p99_ms = 0.0;          // episode-rolling reservoir percentile
  double p50_ms = 0.0;
  double epoch_p99_ms = 0.0;    // this epoch's probes only (carried when idle)
  double mean_delay_ms = 0.0;
  double prb_utilization = 0.0;  // fraction of system PRBs used by the slice
  double own_utilization = 0.0;  // busy fraction of the slice's own allocation
  double energy_index = 0.0;
  double offered_bytes = 0.0;
  int action_count = 0;  // filled in by the controller layer
  int completed = 0;
  int late = 0;
  int dropped_probes = 0;
};

struct EpochStats {
  int epoch = 0;
  double t_end = 0.0;
  SliceArray<SliceEpochStats> slices;
  std::vector<double> cell_load;    // mean activity per cell
  std::vector<double> cell_energy;  // mean energy index per cell
  std::vector<SliceArray<double>> cell_slice_util;
  std::vector<std::vector<double>> cell_ue_sinr_db;  // values only, no ids
  double system_energy = 0.0;
  int handovers = 0;
};

// An extra tenant evaluated by the admission path: its queues ride on the
// unallocated PRB headroom and interact with the base slices via interference.
struct ExtraSliceConfig {
  double share = 0.0;
  double sla_p99_ms = 20.0;
  int ue_count = 2;
  SliceTrafficConfig traffic;
};

struct ExtraSliceStats {
  double mean_violation_rate = 0.0;  // mean per-epoch violation fraction
  ByteLedger ledger;
};

class Simulator {
 public:
  Simulator(const ScenarioConfig& cfg, std::uint64_t seed,
            std::optional<ExtraSliceConfig> extra = std::nullopt);

  // Advances one Near-RT epoch (cfg.nearrt_epoch_ticks ticks), then runs the
  // handover check and refreshes traffic weights.
  const EpochStats& run_epoch();

  const EpochStats& last_epoch() const { return stats_; }
  NetworkControlState& control() { return ctrl_; }
  const NetworkControlState& control() const { return ctrl_; }
  const ScenarioConfig& cfg() const { return cfg_; }

  int epoch_index() const { return epoch_; }
  double now() const { return tick_ * cfg_.tick_s; }
  const ByteLedger& ledger(ServiceClass s) const { return ledger_[s]; }
  const std::vector<UEState>& ues() const { return ues_; }
  int total_handovers() const { return total_handovers_; }
  ExtraSliceStats extra_stats() const;
  // Mean per-epoch violation fraction so far, per base slice.
  double mean_violation(ServiceClass s) const;
  // Fraction of epochs whose violation fraction exceeded alpha_violation.
  double violating_epoch_fraction(ServiceClass s) const;

  // rss of `cell` at a position, in dBm (uses current tx power)
  double rss_dbm(int cell, Vec2 pos) const;

 private:
  struct Queue {
    std::uint64_t backlog = 0;
    std::uint64_t cum_served = 0;
    double carry = 0.0;
    double busy_frac = 0.0;  // last tick: served / granted capacity
    struct Probe {
      double arrival_t;
      std::uint64_t watermark;
      std::uint64_t size;
    };
    std::deque<Probe> probes;
  };

  void attach_initial();
  void refresh_weights();
  void rebuild_caches();
  void tick();
  void do_handovers();
  void finalize_epoch();
  void arrivals(int cell, int sl, Queue& q, ByteLedger& led, double weight,
                const SliceTrafficConfig& tc, double sla_s, Rng& bulk_rng,
                Rng& probe_rng, int stat_slot);
  void serve(int cell, int sl, Queue& q, ByteLedger& led, double cap_bytes_f,
             double sla_s, int stat_slot);

  ScenarioConfig cfg_;
  std::optional<ExtraSliceConfig> extra_;
  NetworkControlState ctrl_;
  std::uint64_t cached_version_ = ~0ULL;

  // topology caches
  int n_cells_ = 0;
  int n_slots_ = 0;  // kNumSlices (+1 with extra tenant)
  std::vector<Vec2> cell_pos_;
  std::vector<int> cell_band_;
  std::vector<double> band_gain_;  // (c/4πf)^2 per band
  double noise_mw_prb_ = 0.0;
  std::vector<double> k_mw_;            // per cell: tx_mw_per_prb × band gain
  std::vector<double> p_ratio_;         // per cell: tx_lin / tx_max_lin
  std::vector<SliceArray<double>> eff_share_;
  double extra_share_ = 0.0;

  std::vector<UEState> ues_;
  std::vector<Vec2> extra_ue_pos_;  // static anchor points for the tenant
  std::vector<double> phase_;       // per cell sinusoid phase

  std::vector<Queue> queues_;        // cell-major, n_slots_ per cell
  std::vector<double> weights_;      // arrival weight per (cell, slot)
  SliceArray<ByteLedger> ledger_;
  ByteLedger extra_ledger_;

  std::vector<double> activity_;  // per cell, previous tick
  std::vector<Rng> bulk_rng_, probe_rng_;
  std::vector<Rng> ue_rng_;
  SliceArray<Rng> reservoir_rng_{
      {Rng(0), Rng(0), Rng(0)}};  // reseeded in ctor

  // per-slice delay reservoir (Algorithm R, uniform over the episode)
  struct Reservoir {
    std::vector<double> v;
    std::uint64_t seen = 0;
  };
  SliceArray<Reservoir> reservoir_;
  static constexpr std::size_t kReservoirCap = 4096;

  // epoch accumulators
  struct SlotAccum {
    std::vector<double> delays_ms;
    int late = 0;
    int dropped = 0;
    double own_util_sum = 0.0;   // busy fraction of own allocation
    double sys_util_sum = 0.0;   // eff_share × busy
    std::uint64_t offered0 = 0;  // ledger offset at epoch start
  };
  std::vector<SlotAccum> slot_accum_;  // per (cell, slot)
  std::vector<double> cell_energy_sum_, cell_load_sum_;
  SliceArray<double> epoch_p99_carry_;

  EpochStats stats_;
  SliceArray<double> violation_sum_;
  SliceArray<int> violation_epochs_;
  double extra_violation_sum_ = 0.0;

  int tick_ = 0;
  int epoch_ = 0;
  int total_handovers_ = 0;
};

}  // namespace ranloop
