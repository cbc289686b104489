#include "ranloop/sim/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ranloop/sim/channel.hpp"

namespace ranloop {

namespace {

constexpr double kMinDelayS = 1e-6;

std::uint64_t draw_pkt_bytes(Rng& rng, const SliceTrafficConfig& tc,
                             double max_factor) {
  double b = rng.exponential(1.0 / tc.pkt_bytes_mean);
  const double hi = tc.pkt_bytes_mean * max_factor;
  b = std::clamp(b, 64.0, hi);
  return static_cast<std::uint64_t>(std::llround(b));
}

}  // namespace

bool should_handover(double serving_rss_dbm, double best_rss_dbm,
                     double hysteresis_db, bool pinned) {
  if (pinned) return false;
  return best_rss_dbm - serving_rss_dbm >= hysteresis_db;
}

Simulator::Simulator(const ScenarioConfig& cfg, std::uint64_t seed,
                     std::optional<ExtraSliceConfig> extra)
    : cfg_(cfg), extra_(std::move(extra)) {
  n_cells_ = static_cast<int>(cfg_.num_cells());
  n_slots_ = static_cast<int>(kNumSlices) + (extra_ ? 1 : 0);
  if (n_cells_ <= 0) throw std::runtime_error("scenario has no cells");

  // topology: one cell per (oru, band), oru-major
  cell_pos_.reserve(n_cells_);
  cell_band_.reserve(n_cells_);
  for (std::size_t o = 0; o < cfg_.oru_positions.size(); ++o) {
    for (std::size_t b = 0; b < cfg_.bands.size(); ++b) {
      cell_pos_.push_back(cfg_.oru_positions[o]);
      cell_band_.push_back(static_cast<int>(b));
    }
  }
  band_gain_.reserve(cfg_.bands.size());
  for (const auto& b : cfg_.bands) band_gain_.push_back(fs_gain_coeff(b.freq_hz));
  noise_mw_prb_ = noise_mw(cfg_.prb_bandwidth_hz, cfg_.noise_figure_db);

  // control-plane defaults from the scenario
  ctrl_.cells.resize(n_cells_);
  for (auto& c : ctrl_.cells) {
    c.tx_power_dbm = cfg_.tx_power_dbm;
    for (ServiceClass s : kAllSlices) c.prb_share[s] = cfg_.slices[s].share;
  }
  for (ServiceClass s : kAllSlices) {
    ctrl_.prb_cap[s] = cfg_.slices[s].prb_cap;
    ctrl_.ar_cap[s] = cfg_.slices[s].ar_cap;
    ctrl_.energy_cap[s] = cfg_.slices[s].energy_cap;
  }

  // UEs: slices round-robin over the configured counts, positions seeded
  int total_ues = 0;
  for (std::size_t i = 0; i < kNumSlices; ++i) total_ues += cfg_.ue_counts.at(i);
  ues_.reserve(total_ues);
  int uid = 0;
  for (ServiceClass s : kAllSlices) {
    for (int i = 0; i < cfg_.ue_counts[s]; ++i, ++uid) {
      Rng r(derive_seed(seed, "ue-init", uid));
      UEState u;
      u.slice = s;
      u.pos = {r.uniform(0, cfg_.area_w_m), r.uniform(0, cfg_.area_h_m)};
      u.waypoint = {r.uniform(0, cfg_.area_w_m), r.uniform(0, cfg_.area_h_m)};
      u.speed = r.uniform(cfg_.ue_speed_min, cfg_.ue_speed_max);
      ues_.push_back(u);
      ue_rng_.emplace_back(derive_seed(seed, "ue-move", uid));
    }
  }
  ctrl_.ue_pinned.assign(ues_.size(), 0);

  if (extra_) {
    Rng r(derive_seed(seed, "extra-ue"));
    for (int i = 0; i < extra_->ue_count; ++i)
      extra_ue_pos_.push_back(
          {r.uniform(0, cfg_.area_w_m), r.uniform(0, cfg_.area_h_m)});
  }

  phase_.reserve(n_cells_);
  {
    Rng r(derive_seed(seed, "phase"));
    for (int c = 0; c < n_cells_; ++c)
      phase_.push_back(r.uniform(0.0, 6.283185307179586));
  }

  queues_.assign(static_cast<std::size_t>(n_cells_) * n_slots_, Queue{});
  weights_.assign(queues_.size(), 0.0);
  slot_accum_.assign(queues_.size(), SlotAccum{});
  cell_energy_sum_.assign(n_cells_, 0.0);
  cell_load_sum_.assign(n_cells_, 0.0);
  activity_.assign(n_cells_, 0.0);

  bulk_rng_.reserve(queues_.size());
  probe_rng_.reserve(queues_.size());
  for (std::size_t q = 0; q < queues_.size(); ++q) {
    bulk_rng_.emplace_back(derive_seed(seed, "bulk", q));
    probe_rng_.emplace_back(derive_seed(seed, "probe", q));
  }
  for (std::size_t i = 0; i < kNumSlices; ++i)
    reservoir_rng_.at(i) = Rng(derive_seed(seed, "reservoir", i));

  for (auto& r : reservoir_.v) r.v.reserve(kReservoirCap);
  for (auto& p : epoch_p99_carry_.v) p = 0.0;

  rebuild_caches();
  attach_initial();
  refresh_weights();
}

double Simulator::rss_dbm(int cell, Vec2 pos) const {
  const double d = std::max(distance(pos, cell_pos_[cell]), cfg_.d_min_m);
  return mw_to_dbm(k_mw_[cell] / (d * d));
}

void Simulator::attach_initial() {
  auto attach = [&](Vec2 pos) {
    int best = 0;
    double best_rss = rss_dbm(0, pos);
    for (int c = 1; c < n_cells_; ++c) {
      const double r = rss_dbm(c, pos);
      if (r > best_rss) {
        best_rss = r;
        best = c;
      }
    }
    return best;
  };
  for (auto& u : ues_) u.serving_cell = attach(u.pos);
  if (extra_) {
    extra_ues_serving_.clear();
    for (const auto& p : extra_ue_pos_) extra_ues_serving_.push_back(attach(p));
  }
}

void Simulator::refresh_weights() {
  std::fill(weights_.begin(), weights_.end(), 0.0);
  SliceArray<int> totals{};
  for (const auto& u : ues_) totals[u.slice]++;
  for (const auto& u : ues_) {
    const std::size_t qi =
        static_cast<std::size_t>(u.serving_cell) * n_slots_ + index_of(u.slice);
    weights_[qi] += 1.0 / totals[u.slice];
  }
  if (extra_ && !extra_ue_pos_.empty()) {
    for (int serving : extra_ues_serving_) {
      const std::size_t qi =
          static_cast<std::size_t>(serving) * n_slots_ + kNumSlices;
      weights_[qi] += 1.0 / extra_ue_pos_.size();
    }
  }
}

void Simulator::rebuild_caches() {
  k_mw_.assign(n_cells_, 0.0);
  p_ratio_.assign(n_cells_, 0.0);
  eff_share_.assign(n_cells_, SliceArray<double>{});
  const double tx_max_mw = dbm_to_mw(cfg_.tx_power_dbm);
  for (int c = 0; c < n_cells_; ++c) {
    const double tx_mw = dbm_to_mw(ctrl_.cells[c].tx_power_dbm);
    k_mw_[c] = tx_mw / cfg_.prb_per_cell * band_gain_[cell_band_[c]];
    p_ratio_[c] = tx_mw / tx_max_mw;
    double sum = 0.0;
    for (ServiceClass s : kAllSlices) {
      eff_share_[c][s] =
          std::min(ctrl_.cells[c].prb_share[s], ctrl_.prb_cap[s]);
      sum += eff_share_[c][s];
    }
    extra_share_ = extra_ ? extra_->share : 0.0;
    if (sum + extra_share_ > 1.0 + 1e-9)
      throw std::runtime_error("PRB shares exceed cell capacity");
  }
  cached_version_ = ctrl_.version;
}

void Simulator::arrivals(int /*cell*/, int slot, Queue& q, ByteLedger& led,
                         double rate_bytes, const SliceTrafficConfig& tc,
                         double /*sla_s*/, Rng& bulk_rng, Rng& probe_rng,
                         std::uint64_t qlimit, double t) {
  if (rate_bytes <= 0.0) return;
  const double dt = cfg_.tick_s;
  const double pkt_rate = rate_bytes / tc.pkt_bytes_mean;
  const double probe_rate = std::min(pkt_rate, cfg_.probe_rate_hz);
  const double bulk_bytes_rate =
      std::max(0.0, rate_bytes - probe_rate * tc.pkt_bytes_mean);

  // bulk stream: aggregated byte volume, enqueued at tick start
  std::uint64_t bulk = 0;
  if (bulk_bytes_rate > 0.0) {
    if (tc.pkts_per_burst > 1.0) {
      const double burst_bytes = tc.pkts_per_burst * tc.pkt_bytes_mean;
      const std::uint64_t bursts =
          bulk_rng.poisson(bulk_bytes_rate / burst_bytes * dt);
      for (std::uint64_t i = 0; i < bursts; ++i) {
        // Erlang(pkts_per_burst, mean) ≈ normal for the batch sizes used here
        const double v = bulk_rng.normal(
            burst_bytes, tc.pkt_bytes_mean * std::sqrt(tc.pkts_per_burst));
        if (v > 0) bulk += static_cast<std::uint64_t>(std::llround(v));
      }
    } else {
      const std::uint64_t n =
          bulk_rng.poisson(bulk_bytes_rate / tc.pkt_bytes_mean * dt);
      if (n <= 8) {
        for (std::uint64_t i = 0; i < n; ++i)
          bulk += draw_pkt_bytes(bulk_rng, tc, cfg_.pkt_bytes_max_factor);
      } else {
        const double v = bulk_rng.normal(
            static_cast<double>(n) * tc.pkt_bytes_mean,
            tc.pkt_bytes_mean * std::sqrt(static_cast<double>(n)));
        if (v > 0) bulk = static_cast<std::uint64_t>(std::llround(v));
      }
    }
  }
  if (bulk > 0) {
    led.offered += bulk;
    const std::uint64_t space = q.backlog >= qlimit ? 0 : qlimit - q.backlog;
    const std::uint64_t add = std::min(bulk, space);
    q.backlog += add;
    led.backlog += add;
    led.dropped += bulk - add;
  }

  // probe stream: individually tracked packets giving sojourn samples
  const std::uint64_t n_probes = probe_rng.poisson(probe_rate * dt);
  if (n_probes == 0) return;
  double fracs[8];
  const std::uint64_t np = std::min<std::uint64_t>(n_probes, 8);
  for (std::uint64_t i = 0; i < np; ++i) fracs[i] = probe_rng.uniform();
  std::sort(fracs, fracs + np);
  for (std::uint64_t i = 0; i < np; ++i) {
    const std::uint64_t size =
        draw_pkt_bytes(probe_rng, tc, cfg_.pkt_bytes_max_factor);
    led.offered += size;
    if (q.backlog + size > qlimit) {
      led.dropped += size;
      slice_late_[slot].dropped += 1;
      continue;
    }
    q.backlog += size;
    led.backlog += size;
    q.probes.push_back({t + fracs[i] * dt, q.cum_served + q.backlog, size});
  }
}

void Simulator::serve(int cell, int slot, Queue& q, ByteLedger& led,
                      double cap_bytes_f, double sla_s, double t) {
  const double cap_plus = cap_bytes_f + q.carry;
  const std::uint64_t cap_int = static_cast<std::uint64_t>(cap_plus);
  q.carry = cap_plus - static_cast<double>(cap_int);
  const std::uint64_t served = std::min(q.backlog, cap_int);
  q.backlog -= served;
  q.cum_served += served;
  led.served += served;
  led.backlog -= served;
  q.busy_frac = cap_int > 0 ? static_cast<double>(served) / cap_int : 0.0;

  if (served == 0) return;
  const std::uint64_t cum_start = q.cum_served - served;
  while (!q.probes.empty() && q.probes.front().watermark <= q.cum_served) {
    const auto& p = q.probes.front();
    const double f =
        static_cast<double>(p.watermark - cum_start) / static_cast<double>(served);
    const double completion_t = t + std::clamp(f, 0.0, 1.0) * cfg_.tick_s;
    const double delay_s = std::max(completion_t - p.arrival_t, kMinDelayS);
    auto& acc = slice_late_[slot];
    acc.delays_ms.push_back(delay_s * 1e3);
    if (delay_s * 1e3 > sla_s) acc.late += 1;
    if (slot < static_cast<int>(kNumSlices)) {
      auto& res = reservoir_.at(slot);
      res.seen++;
      if (res.v.size() < kReservoirCap) {
        res.v.push_back(delay_s * 1e3);
      } else {
        const std::uint64_t j =
            static_cast<std::uint64_t>(reservoir_rng_.at(slot).uniform_int(
                0, static_cast<std::int64_t>(res.seen) - 1));
        if (j < kReservoirCap) res.v[j] = delay_s * 1e3;
      }
    }
    q.probes.pop_front();
  }
  (void)cell;
}

void Simulator::tick() {
  if (ctrl_.version != cached_version_) rebuild_caches();
  const double t = tick_ * cfg_.tick_s;
  const double dt = cfg_.tick_s;

  // --- mobility + per-(cell,slice) spectral efficiency ---------------------
  se_sum_.assign(queues_.size(), 0.0);
  se_cnt_.assign(queues_.size(), 0);
  cell_se_sum_.assign(n_cells_, 0.0);
  cell_se_cnt_.assign(n_cells_, 0);

  auto sinr_of = [&](Vec2 pos, int serving) {
    const double d =
        std::max(distance(pos, cell_pos_[serving]), cfg_.d_min_m);
    const double sig = k_mw_[serving] / (d * d);
    double interf = 0.0;
    const int band = cell_band_[serving];
    for (int c = 0; c < n_cells_; ++c) {
      if (c == serving || cell_band_[c] != band) continue;
      if (activity_[c] <= 0.0) continue;
      const double dc = std::max(distance(pos, cell_pos_[c]), cfg_.d_min_m);
      interf += k_mw_[c] / (dc * dc) * activity_[c];
    }
    return sig / (noise_mw_prb_ + interf);
  };

  for (std::size_t i = 0; i < ues_.size(); ++i) {
    UEState& u = ues_[i];
    if (u.speed > 0.0) {
      const double dx = u.waypoint.x - u.pos.x;
      const double dy = u.waypoint.y - u.pos.y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      const double step = u.speed * dt;
      if (dist <= step) {
        u.pos = u.waypoint;
        u.waypoint = {ue_rng_[i].uniform(0, cfg_.area_w_m),
                      ue_rng_[i].uniform(0, cfg_.area_h_m)};
        u.speed = ue_rng_[i].uniform(cfg_.ue_speed_min, cfg_.ue_speed_max);
      } else {
        u.pos.x += dx / dist * step;
        u.pos.y += dy / dist * step;
      }
    }
    const double sinr = sinr_of(u.pos, u.serving_cell);
    u.sinr_db = 10.0 * std::log10(sinr);
    u.se = spectral_efficiency(sinr, cfg_.se_max);
    const std::size_t qi =
        static_cast<std::size_t>(u.serving_cell) * n_slots_ + index_of(u.slice);
    se_sum_[qi] += u.se;
    se_cnt_[qi] += 1;
    cell_se_sum_[u.serving_cell] += u.se;
    cell_se_cnt_[u.serving_cell] += 1;
  }
  if (extra_) {
    for (std::size_t i = 0; i < extra_ue_pos_.size(); ++i) {
      const int serving = extra_ues_serving_[i];
      const double se =
          spectral_efficiency(sinr_of(extra_ue_pos_[i], serving), cfg_.se_max);
      const std::size_t qi =
          static_cast<std::size_t>(serving) * n_slots_ + kNumSlices;
      se_sum_[qi] += se;
      se_cnt_[qi] += 1;
    }
  }

  // --- traffic + service ----------------------------------------------------
  const double cap_coeff =
      cfg_.prb_per_cell * cfg_.prb_bandwidth_hz * dt / 8.0;
  for (int c = 0; c < n_cells_; ++c) {
    double activity_now = 0.0;
    for (int slot = 0; slot < n_slots_; ++slot) {
      const std::size_t qi = static_cast<std::size_t>(c) * n_slots_ + slot;
      Queue& q = queues_[qi];
      const bool base = slot < static_cast<int>(kNumSlices);
      const SliceTrafficConfig& tc =
          base ? cfg_.slices.at(slot).traffic : extra_->traffic;
      const double sla_ms =
          base ? cfg_.slices.at(slot).sla_p99_ms : extra_->sla_p99_ms;
      ByteLedger& led = base ? ledger_.at(slot) : extra_ledger_;
      const double share = base ? eff_share_[c].at(slot) : extra_share_;

      double rate = tc.bytes_per_s * cfg_.load_scale * weights_[qi];
      if (tc.sinusoid_period_s > 0.0 && rate > 0.0) {
        rate *= std::max(
            0.0, 1.0 + tc.sinusoid_amp *
                           std::sin(6.283185307179586 * t /
                                        tc.sinusoid_period_s +
                                    phase_[c]));
      }
      const std::uint64_t qlimit = static_cast<std::uint64_t>(
          std::max(1.0, cfg_.queue_limit_s * share * cfg_.prb_per_cell *
                            cfg_.prb_bandwidth_hz * 2.0 / 8.0));
      arrivals(c, slot, q, led, rate, tc, sla_ms, bulk_rng_[qi],
               probe_rng_[qi], qlimit, t);

      const double se =
          se_cnt_[qi] > 0
              ? se_sum_[qi] / se_cnt_[qi]
              : (cell_se_cnt_[c] > 0 ? cell_se_sum_[c] / cell_se_cnt_[c]
                                     : cfg_.se_min);
      serve(c, slot, q, led, share * cap_coeff * se, sla_ms, t);

      auto& acc = slot_accum_[qi];
      acc.own_util_sum += q.busy_frac;
      acc.sys_util_sum += share * q.busy_frac;
      activity_now += share * q.busy_frac;
    }
    const double e_c = 0.7 + 0.3 * p_ratio_[c] * activity_now;
    cell_energy_sum_[c] += e_c;
    cell_load_sum_[c] += activity_now;
    for (int slot = 0; slot < n_slots_; ++slot) {
      const std::size_t qi = static_cast<std::size_t>(c) * n_slots_ + slot;
      slot_accum_[qi].energy_weighted_sum += e_c * queues_[qi].busy_frac;
    }
    activity_[c] = activity_now;
  }
  ++tick_;
}

void Simulator::do_handovers() {
  stats_.handovers = 0;
  for (std::size_t i = 0; i < ues_.size(); ++i) {
    UEState& u = ues_[i];
    const double serving_rss = rss_dbm(u.serving_cell, u.pos);
    int best = u.serving_cell;
    double best_rss = serving_rss;
    for (int c = 0; c < n_cells_; ++c) {
      const double r = rss_dbm(c, u.pos);
      if (r > best_rss) {
        best_rss = r;
        best = c;
      }
    }
    if (best != u.serving_cell &&
        should_handover(serving_rss, best_rss, cfg_.hysteresis_db,
                        ctrl_.ue_pinned[i] != 0)) {
      u.serving_cell = best;
      ++stats_.handovers;
      ++total_handovers_;
    }
  }
  if (extra_) {
    for (std::size_t i = 0; i < extra_ue_pos_.size(); ++i) {
      int best = 0;
      double best_rss = rss_dbm(0, extra_ue_pos_[i]);
      for (int c = 1; c < n_cells_; ++c) {
        const double r = rss_dbm(c, extra_ue_pos_[i]);
        if (r > best_rss) {
          best_rss = r;
          best = c;
        }
      }
      extra_ues_serving_[i] = best;
    }
  }
}

void Simulator::finalize_epoch() {
  const int ticks = cfg_.nearrt_epoch_ticks;
  stats_.epoch = epoch_;
  stats_.t_end = tick_ * cfg_.tick_s;
  stats_.cell_load.assign(n_cells_, 0.0);
  stats_.cell_energy.assign(n_cells_, 0.0);
  stats_.cell_slice_util.assign(n_cells_, SliceArray<double>{});
  stats_.cell_ue_sinr_db.assign(n_cells_, {});
  double energy_total = 0.0;
  for (int c = 0; c < n_cells_; ++c) {
    stats_.cell_load[c] = cell_load_sum_[c] / ticks;
    stats_.cell_energy[c] = cell_energy_sum_[c] / ticks;
    energy_total += stats_.cell_energy[c];
    cell_load_sum_[c] = 0.0;
    cell_energy_sum_[c] = 0.0;
  }
  stats_.system_energy = energy_total / n_cells_;
  for (const auto& u : ues_)
    stats_.cell_ue_sinr_db[u.serving_cell].push_back(u.sinr_db);

  for (std::size_t s = 0; s < static_cast<std::size_t>(n_slots_); ++s) {
    auto& acc = slice_late_[s];
    const int completed = static_cast<int>(acc.delays_ms.size());
    const int denom = completed + acc.dropped;
    const double viol =
        denom > 0 ? static_cast<double>(acc.late + acc.dropped) / denom : 0.0;
    if (s < kNumSlices) {
      SliceEpochStats& st = stats_.slices.at(s);
      st.completed = completed;
      st.late = acc.late;
      st.dropped_probes = acc.dropped;
      st.violation_rate = viol;
      if (completed > 0) {
        double sum = 0;
        for (double d : acc.delays_ms) sum += d;
        st.mean_delay_ms = sum / completed;
        st.epoch_p99_ms = percentile_nearest_rank(acc.delays_ms, 0.99);
        epoch_p99_carry_.at(s) = st.epoch_p99_ms;
      } else {
        st.mean_delay_ms = 0.0;
        st.epoch_p99_ms = epoch_p99_carry_.at(s);
      }
      const auto& res = reservoir_.at(s);
      st.p99_ms = percentile_nearest_rank(res.v, 0.99);
      st.p50_ms = percentile_nearest_rank(res.v, 0.50);
      st.offered_bytes =
          static_cast<double>(ledger_.at(s).offered - slice_offered0_.at(s));
      slice_offered0_.at(s) = ledger_.at(s).offered;
      double own = 0.0, sys = 0.0, esum = 0.0;
      for (int c = 0; c < n_cells_; ++c) {
        const std::size_t qi = static_cast<std::size_t>(c) * n_slots_ + s;
        own += slot_accum_[qi].own_util_sum / ticks;
        sys += slot_accum_[qi].sys_util_sum / ticks;
        esum += slot_accum_[qi].energy_weighted_sum / ticks;
        stats_.cell_slice_util[c].at(s) = slot_accum_[qi].sys_util_sum / ticks;
      }
      st.own_utilization = own / n_cells_;
      st.prb_utilization = sys / n_cells_;
      st.energy_index = esum / n_cells_;
      st.action_count = 0;
      violation_sum_.at(s) += viol;
      if (viol > cfg_.alpha_violation) violation_epochs_.at(s) += 1;
    } else {
      extra_violation_sum_ += viol;
    }
    acc.delays_ms.clear();
    acc.late = 0;
    acc.dropped = 0;
  }
  for (auto& acc : slot_accum_) {
    acc.own_util_sum = 0.0;
    acc.sys_util_sum = 0.0;
    acc.energy_weighted_sum = 0.0;
  }
}

const EpochStats& Simulator::run_epoch() {
  for (int i = 0; i < cfg_.nearrt_epoch_ticks; ++i) tick();
  ++epoch_;
  finalize_epoch();
  do_handovers();
  refresh_weights();
  return stats_;
}

double Simulator::mean_violation(ServiceClass s) const {
  return epoch_ > 0 ? violation_sum_[s] / epoch_ : 0.0;
}

double Simulator::violating_epoch_fraction(ServiceClass s) const {
  return epoch_ > 0 ? static_cast<double>(violation_epochs_[s]) / epoch_ : 0.0;
}

ExtraSliceStats Simulator::extra_stats() const {
  ExtraSliceStats st;
  st.mean_violation_rate = epoch_ > 0 ? extra_violation_sum_ / epoch_ : 0.0;
  st.ledger = extra_ledger_;
  return st;
}

}  // namespace ranloop
