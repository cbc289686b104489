#include "ranloop/config.hpp"

#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace ranloop {

ScenarioConfig default_scenario() {
  ScenarioConfig c;
  c.oru_positions = {{100, 125}, {250, 125}, {400, 125},
                     {100, 375}, {250, 375}, {400, 375}};
  c.bands = {{"n77", 3.7e9}, {"n78", 3.5e9}};
  c.ue_counts[ServiceClass::eMBB] = 8;
  c.ue_counts[ServiceClass::URLLC] = 6;
  c.ue_counts[ServiceClass::mMTC] = 6;

  SliceConfig embb;
  embb.share = 0.62;
  embb.prb_cap = 0.60;
  embb.ar_cap = 12;
  embb.energy_cap = 0.70;
  embb.sla_p99_ms = 20.0;
  embb.traffic = {6.0e6, 4000.0, 1.0, 300.0, 0.3};

  SliceConfig urllc;
  urllc.share = 0.23;
  urllc.prb_cap = 0.25;
  urllc.ar_cap = 18;
  urllc.energy_cap = 0.55;
  urllc.sla_p99_ms = 10.0;
  urllc.traffic = {1.4e6, 1000.0, 1.0, 0.0, 0.0};

  SliceConfig mmtc;
  mmtc.share = 0.15;
  mmtc.prb_cap = 0.15;
  mmtc.ar_cap = 8;
  mmtc.energy_cap = 0.35;
  mmtc.sla_p99_ms = 40.0;
  mmtc.traffic = {1.2e6, 500.0, 40.0, 0.0, 0.0};

  c.slices[ServiceClass::eMBB] = embb;
  c.slices[ServiceClass::URLLC] = urllc;
  c.slices[ServiceClass::mMTC] = mmtc;

  c.intent = {
      "Reduce URLLC p99 latency under tight control/energy budgets.",
      "Avoid eMBB over-provisioning; keep mMTC low-cost.",
      "Keep slice isolation; no per-UE/per-cell actions.",
  };
  return c;
}

namespace {

template <typename T>
void maybe(const YAML::Node& n, const char* key, T& out) {
  if (n && n[key]) out = n[key].as<T>();
}

void load_slice(const YAML::Node& n, SliceConfig& s) {
  if (!n) return;
  maybe(n, "share", s.share);
  maybe(n, "prb_cap", s.prb_cap);
  maybe(n, "ar_cap", s.ar_cap);
  maybe(n, "energy_cap", s.energy_cap);
  maybe(n, "sla_p99_ms", s.sla_p99_ms);
  if (n["traffic"]) {
    const YAML::Node t = n["traffic"];
    maybe(t, "bytes_per_s", s.traffic.bytes_per_s);
    maybe(t, "pkt_bytes_mean", s.traffic.pkt_bytes_mean);
    maybe(t, "pkts_per_burst", s.traffic.pkts_per_burst);
    maybe(t, "sinusoid_period_s", s.traffic.sinusoid_period_s);
    maybe(t, "sinusoid_amp", s.traffic.sinusoid_amp);
  }
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const std::exception& e) {
    throw std::runtime_error("cannot load scenario '" + path + "': " + e.what());
  }
  ScenarioConfig c = default_scenario();
  maybe(root, "name", c.name);

  if (const YAML::Node a = root["area"]) {
    maybe(a, "width_m", c.area_w_m);
    maybe(a, "height_m", c.area_h_m);
  }
  if (const YAML::Node r = root["radio"]) {
    if (r["oru_positions"]) {
      c.oru_positions.clear();
      for (const auto& p : r["oru_positions"])
        c.oru_positions.push_back({p[0].as<double>(), p[1].as<double>()});
    }
    if (r["bands"]) {
      c.bands.clear();
      for (const auto& b : r["bands"])
        c.bands.push_back({b["name"].as<std::string>(), b["freq_hz"].as<double>()});
    }
    maybe(r, "prb_per_cell", c.prb_per_cell);
    maybe(r, "prb_bandwidth_hz", c.prb_bandwidth_hz);
    maybe(r, "tx_power_dbm", c.tx_power_dbm);
    maybe(r, "tx_power_min_dbm", c.tx_power_min_dbm);
    maybe(r, "noise_figure_db", c.noise_figure_db);
    maybe(r, "se_max", c.se_max);
    maybe(r, "se_min", c.se_min);
    maybe(r, "hysteresis_db", c.hysteresis_db);
    maybe(r, "d_min_m", c.d_min_m);
  }
  if (const YAML::Node t = root["time"]) {
    maybe(t, "tick_s", c.tick_s);
    maybe(t, "nearrt_epoch_ticks", c.nearrt_epoch_ticks);
    maybe(t, "nonrt_period_s", c.nonrt_period_s);
    maybe(t, "episode_s", c.episode_s);
  }
  if (const YAML::Node u = root["ues"]) {
    if (u["counts"]) {
      for (ServiceClass s : kAllSlices) {
        const std::string key{to_string(s)};
        if (u["counts"][key]) c.ue_counts[s] = u["counts"][key].as<int>();
      }
    }
    maybe(u, "speed_min_mps", c.ue_speed_min);
    maybe(u, "speed_max_mps", c.ue_speed_max);
  }
  if (const YAML::Node t = root["traffic"]) {
    maybe(t, "load_scale", c.load_scale);
    maybe(t, "pkt_bytes_max_factor", c.pkt_bytes_max_factor);
    maybe(t, "queue_limit_s", c.queue_limit_s);
    maybe(t, "probe_rate_hz", c.probe_rate_hz);
  }
  if (const YAML::Node sl = root["slices"]) {
    for (ServiceClass s : kAllSlices)
      load_slice(sl[std::string{to_string(s)}], c.slices[s]);
    maybe(sl, "alpha_violation", c.alpha_violation);
    maybe(sl, "fairness_floor", c.fairness_floor);
    maybe(sl, "prb_cap_budget", c.prb_cap_budget);
  }
  if (const YAML::Node g = root["gate"]) {
    maybe(g, "alpha", c.gate.alpha);
    maybe(g, "beta", c.gate.beta);
    maybe(g, "tau", c.gate.tau);
    maybe(g, "n_fail_rollback", c.gate.n_fail_rollback);
    maybe(g, "gamma_min", c.gate.gamma_min);
    maybe(g, "recovery_advances", c.gate.recovery_advances);
  }
  if (const YAML::Node a = root["agent"]) {
    maybe(a, "k_max", c.agent.k_max);
    maybe(a, "observe_epochs", c.agent.observe_epochs);
    maybe(a, "window", c.agent.window);
    maybe(a, "w_sla", c.agent.w_sla);
    maybe(a, "w_lat", c.agent.w_lat);
    maybe(a, "w_energy", c.agent.w_energy);
    maybe(a, "w_ovh", c.agent.w_ovh);
    maybe(a, "budget_actions", c.agent.budget_actions);
    maybe(a, "budget_e2_bytes", c.agent.budget_e2_bytes);
    maybe(a, "budget_cpu", c.agent.budget_cpu);
  }
  if (const YAML::Node m = root["memory"]) {
    maybe(m, "n_promote", c.memory.n_promote);
    maybe(m, "warmup_epochs", c.memory.warmup_epochs);
    maybe(m, "retrieve_k", c.memory.retrieve_k);
  }
  if (const YAML::Node t = root["telemetry"]) {
    maybe(t, "budget_fraction", c.telemetry_budget_fraction);
  }
  if (root["intent"]) {
    c.intent.clear();
    for (const auto& line : root["intent"]) c.intent.push_back(line.as<std::string>());
  }
  return c;
}

std::string scenario_to_yaml(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "name: " << c.name << "\n";
  o << "area: { width_m: " << format_double(c.area_w_m)
    << ", height_m: " << format_double(c.area_h_m) << " }\n";
  o << "radio:\n  oru_positions: [";
  for (std::size_t i = 0; i < c.oru_positions.size(); ++i) {
    const auto& p = c.oru_positions[i];
    o << (i ? ", [" : "[") << format_double(p.x) << ", " << format_double(p.y)
      << "]";
  }
  o << "]\n  bands: [";
  for (std::size_t i = 0; i < c.bands.size(); ++i) {
    const auto& b = c.bands[i];
    o << (i ? ", { " : "{ ") << "name: " << b.name
      << ", freq_hz: " << format_double(b.freq_hz) << " }";
  }
  o << "]\n  prb_per_cell: " << c.prb_per_cell
    << "\n  prb_bandwidth_hz: " << format_double(c.prb_bandwidth_hz)
    << "\n  tx_power_dbm: " << format_double(c.tx_power_dbm)
    << "\n  tx_power_min_dbm: " << format_double(c.tx_power_min_dbm)
    << "\n  noise_figure_db: " << format_double(c.noise_figure_db)
    << "\n  se_max: " << format_double(c.se_max)
    << "\n  hysteresis_db: " << format_double(c.hysteresis_db) << "\n";
  o << "time: { tick_s: " << format_double(c.tick_s)
    << ", nearrt_epoch_ticks: " << c.nearrt_epoch_ticks
    << ", nonrt_period_s: " << format_double(c.nonrt_period_s)
    << ", episode_s: " << format_double(c.episode_s) << " }\n";
  o << "ues:\n  counts: {";
  for (std::size_t i = 0; i < kNumSlices; ++i)
    o << (i ? ", " : " ") << to_string(kAllSlices[i]) << ": " << c.ue_counts.at(i);
  o << " }\n  speed_min_mps: " << format_double(c.ue_speed_min)
    << "\n  speed_max_mps: " << format_double(c.ue_speed_max) << "\n";
  o << "traffic: { load_scale: " << format_double(c.load_scale)
    << ", probe_rate_hz: " << format_double(c.probe_rate_hz)
    << ", queue_limit_s: " << format_double(c.queue_limit_s) << " }\n";
  o << "slices:\n";
  for (ServiceClass s : kAllSlices) {
    const SliceConfig& sc = c.slices[s];
    o << "  " << to_string(s) << ":\n"
      << "    share: " << format_double(sc.share) << "\n"
      << "    prb_cap: " << format_double(sc.prb_cap) << "\n"
      << "    ar_cap: " << sc.ar_cap << "\n"
      << "    energy_cap: " << format_double(sc.energy_cap) << "\n"
      << "    sla_p99_ms: " << format_double(sc.sla_p99_ms) << "\n"
      << "    traffic: { bytes_per_s: " << format_double(sc.traffic.bytes_per_s)
      << ", pkt_bytes_mean: " << format_double(sc.traffic.pkt_bytes_mean)
      << ", pkts_per_burst: " << format_double(sc.traffic.pkts_per_burst)
      << ", sinusoid_period_s: " << format_double(sc.traffic.sinusoid_period_s)
      << ", sinusoid_amp: " << format_double(sc.traffic.sinusoid_amp) << " }\n";
  }
  o << "  alpha_violation: " << format_double(c.alpha_violation)
    << "\n  fairness_floor: " << format_double(c.fairness_floor)
    << "\n  prb_cap_budget: " << format_double(c.prb_cap_budget) << "\n";
  o << "gate: { alpha: " << format_double(c.gate.alpha)
    << ", beta: " << format_double(c.gate.beta)
    << ", tau: " << format_double(c.gate.tau)
    << ", n_fail_rollback: " << c.gate.n_fail_rollback
    << ", gamma_min: " << format_double(c.gate.gamma_min) << " }\n";
  o << "agent: { k_max: " << c.agent.k_max
    << ", observe_epochs: " << c.agent.observe_epochs
    << ", window: " << c.agent.window << " }\n";
  o << "telemetry: { budget_fraction: "
    << format_double(c.telemetry_budget_fraction) << " }\n";
  return o.str();
}

}  // namespace ranloop
