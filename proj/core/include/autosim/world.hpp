// Copyright 2026 The Autosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "autosim/common.hpp"
#include "autosim/constraints.hpp"
#include "autosim/statemap.hpp"

namespace autosim {

struct AssetState {
  std::string id;
  Vec2 position;
  double heading = 0.0;
  double speed = 0.0;
  double max_speed = 100.0;  // m/s
  double max_turn = 0.2;     // rad/s
  double health = 1.0;
  double fuel = 1e9;  // seconds at full speed
  std::int64_t weapons = 0;
  std::int64_t countermeasures = 0;
  bool alive = true;
  // Set by a filtered TerminateMission; the asset holds position and counts as
  // surviving.
  bool mission_terminated = false;
  Tick death_tick = -1;
  double turn_fraction = 0.0;  // last applied heading_rate
  bool countermeasures_fired = false;  // during the last step
};

/// Airborne interceptor that pursues the nearest living asset.
struct HostileState {
  std::string id;
  std::string classification = "interceptor";
  Vec2 position;
  double heading = 0.0;
  double speed = 150.0;
  double max_turn = 0.15;
  double engage_radius = 150.0;
  double p_kill = 0.5;  // per tick while inside engage_radius
  bool alive = true;
};

struct SamSite {
  std::string id;
  Vec2 position;
  double radar_range = 3000.0;
  double missile_speed = 250.0;
  double missile_max_turn = 0.35;
  std::int64_t missile_lifetime = 40;
  double fuse_radius = 60.0;
  std::int64_t lock_ticks = 5;
  std::int64_t magazine = 4;
  bool neutralized = false;
  // Consecutive illuminated ticks per asset id.
  std::map<std::string, std::int64_t> lock_progress;
};

struct Missile {
  std::string id;
  std::string launcher;
  Vec2 position;
  Vec2 velocity;
  std::string target;
  double fuse_radius = 60.0;
  double max_turn = 0.35;
  std::int64_t ticks_left = 40;
};

struct Obstacle {
  std::string id;
  Circle area;
};

struct WorldState {
  Tick tick = 0;
  Box bounds{{0.0, 0.0}, {10000.0, 10000.0}};
  Vec2 wind;
  std::vector<AssetState> assets;
  std::vector<HostileState> hostiles;
  std::vector<SamSite> sam_sites;
  std::vector<Missile> missiles;
  std::vector<Entity> targets;  // kind Target
  std::vector<Obstacle> zones;  // briefed no-fly zones
  std::vector<Obstacle> obstacles;  // physical, unbriefed
  std::int64_t missiles_launched = 0;

  [[nodiscard]] const AssetState* find_asset(const std::string& id) const;
  [[nodiscard]] AssetState* find_asset(const std::string& id);
};

/// Engagement odds and normalizers; all scenario-configurable.
struct WorldRules {
  double p_kill = 0.8;
  double p_hit = 0.7;
  double weapon_range = 1500.0;
  double rejection_normalizer = 10.0;  // R0 in the constraint score
  double missile_damage = 0.5;         // health lost when a missile fails to kill
};

struct UtilityWeights {
  double targets = 1.0;
  double waypoints = 1.0;
  double survival = 1.0;
  double constraints = 1.0;
  double time = 1.0;
};

struct TargetBrief {
  std::string id;
  double priority = 1.0;
};

struct MissionPlan {
  std::string mission_type = "generic";
  std::vector<Vec2> waypoints;
  std::vector<TargetBrief> target_list;
  UtilityWeights weights;
  ConstraintSet constraints;
  std::int64_t max_ticks = 200;
};

struct UtilityComponents {
  double targets_frac = 0.0;
  double waypoints_frac = 0.0;
  double survival_frac = 0.0;
  double constraint_score = 1.0;
  double time_frac = 0.0;
};

struct UtilityReport {
  UtilityComponents components;
  double total = 0.0;
};

/// Scripted world event; `kill` destroys the named asset at `tick`.
struct ScriptedKill {
  Tick tick = 0;
  std::string asset;
};

}  // namespace autosim
