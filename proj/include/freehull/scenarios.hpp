#pragma once

#include "freehull/json_io.hpp"
#include "freehull/relax.hpp"
#include "freehull/tvscreen.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace freehull {

struct CheckRecord {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct ScenarioReport {
  std::string id;
  std::vector<CheckRecord> checks;
  double seconds = 0.0;
  Json extra;

  bool passed() const {
    for (const CheckRecord& c : checks)
      if (!c.pass) return false;
    return true;
  }
  Json to_json() const;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  TvScreenConfig tv;
  int grid_points = 20;        // per axis for the scalar grid
  int pair_samples = 50;       // random 2x2 pairs
  int completion_samples = 30;
  int member_samples = 50;     // members validating a separation functional
  int exactness_samples = 30;
  int nesting_points = 4;
  SdpConfig sdp;
};

/// Relaxation knobs for the TV screen: box from the 5/4-archimedean constant.
RelaxConfig tv_relax_config(const ScenarioConfig& cfg = {});

std::vector<std::string> scenario_ids();

/// Runs one canned reproduction; throws Error on an unknown id.
ScenarioReport run_scenario(const std::string& id, const ScenarioConfig& cfg = {});

}  // namespace freehull
