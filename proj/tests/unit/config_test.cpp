#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ranloop/config.hpp"

using namespace ranloop;

TEST_SUITE_BEGIN("config");

TEST_CASE("reference scenario shape") {
  const ScenarioConfig c = default_scenario();
  CHECK(c.oru_positions.size() == 6);
  CHECK(c.bands.size() == 2);
  CHECK(c.num_cells() == 12);
  int ues = 0;
  for (std::size_t i = 0; i < kNumSlices; ++i) ues += c.ue_counts.at(i);
  CHECK(ues == 20);
  for (const auto& p : c.oru_positions) {
    CHECK(p.x >= 0);
    CHECK(p.x <= c.area_w_m);
    CHECK(p.y >= 0);
    CHECK(p.y <= c.area_h_m);
  }
  CHECK(c.epochs_per_episode() == 1200);
  CHECK(c.ticks_per_episode() == 60000);
  CHECK(c.epochs_per_nonrt() == 120);
}

TEST_CASE("default budgets mirror the coordinator contract values") {
  const ScenarioConfig c = default_scenario();
  CHECK(c.slices[ServiceClass::eMBB].prb_cap == 0.60);
  CHECK(c.slices[ServiceClass::eMBB].ar_cap == 12);
  CHECK(c.slices[ServiceClass::eMBB].energy_cap == 0.70);
  CHECK(c.slices[ServiceClass::URLLC].prb_cap == 0.25);
  CHECK(c.slices[ServiceClass::URLLC].ar_cap == 18);
  CHECK(c.slices[ServiceClass::URLLC].energy_cap == 0.55);
  CHECK(c.slices[ServiceClass::mMTC].prb_cap == 0.15);
  CHECK(c.slices[ServiceClass::mMTC].ar_cap == 8);
  CHECK(c.slices[ServiceClass::mMTC].energy_cap == 0.35);
  CHECK(c.slices[ServiceClass::eMBB].share == 0.62);
  CHECK(c.slices[ServiceClass::URLLC].share == 0.23);
  CHECK(c.slices[ServiceClass::mMTC].share == 0.15);
}

TEST_CASE("yaml overrides merge onto defaults") {
  const char* path = "cfg_test_tmp.yaml";
  {
    std::ofstream f(path);
    f << "name: tweaked\n"
      << "traffic: { load_scale: 1.5 }\n"
      << "slices:\n"
      << "  URLLC: { sla_p99_ms: 12.5, traffic: { bytes_per_s: 2.0e6 } }\n"
      << "gate: { alpha: 0.10 }\n";
  }
  const ScenarioConfig c = load_scenario(path);
  std::remove(path);
  CHECK(c.name == "tweaked");
  CHECK(c.load_scale == 1.5);
  CHECK(c.slices[ServiceClass::URLLC].sla_p99_ms == 12.5);
  CHECK(c.slices[ServiceClass::URLLC].traffic.bytes_per_s == 2.0e6);
  CHECK(c.gate.alpha == 0.10);
  // untouched keys keep defaults
  CHECK(c.slices[ServiceClass::URLLC].prb_cap == 0.25);
  CHECK(c.num_cells() == 12);
}

TEST_CASE("scenario round-trips through its own yaml dump") {
  ScenarioConfig c = default_scenario();
  c.load_scale = 1.25;
  const char* path = "cfg_roundtrip_tmp.yaml";
  {
    std::ofstream f(path);
    f << scenario_to_yaml(c);
  }
  const ScenarioConfig d = load_scenario(path);
  std::remove(path);
  CHECK(d.load_scale == c.load_scale);
  CHECK(d.oru_positions.size() == c.oru_positions.size());
  CHECK(d.slices[ServiceClass::mMTC].traffic.pkts_per_burst ==
        c.slices[ServiceClass::mMTC].traffic.pkts_per_burst);
  CHECK(d.gate.gamma_min == c.gate.gamma_min);
}

TEST_CASE("missing file raises") {
  CHECK_THROWS(load_scenario("/nonexistent/path.yaml"));
}

TEST_SUITE_END();
