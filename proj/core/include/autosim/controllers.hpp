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

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "autosim/actions.hpp"
#include "autosim/astar.hpp"
#include "autosim/sensorbus.hpp"
#include "autosim/statemap.hpp"
#include "autosim/world.hpp"

namespace autosim {

// The controller bank, in the fixed order proposals reach the ensembler.
inline constexpr std::array<std::string_view, 5> kControllerIds = {"waypoint", "avoidance", "evasion",
                                                                   "targeting", "swarm"};
inline constexpr std::size_t kNumControllers = kControllerIds.size();

struct WaypointConfig {
  double capture_radius = 200.0;
  double gain = 2.0 / kPi;  // heading_rate per radian of bearing error
};

struct AvoidanceConfig {
  double horizon = 2000.0;
  double cell_size = 200.0;
  double margin = 150.0;
  double gain = 2.0 / kPi;
  double terminate_vibration = 0.9;  // HealthReport level that aborts the mission
};

struct EvasionConfig {
  double rwr_gain = 2.0 / kPi;
  double rwr_confidence = 0.7;
};

struct TargetingConfig {
  double weapon_range = 1500.0;
  double new_target_priority = 0.5;
  std::set<std::string> threat_classes{"SAM"};
  double gain = 2.0 / kPi;
};

struct SwarmRole {
  std::string name;
  double priority = 0.0;
  double angle = 0.0;  // slot bearing around the swarm centroid
};

struct SwarmConfig {
  double ring_radius = 600.0;
  Tick stale_ticks = 5;
  double gain = 2.0 / kPi;
  std::vector<SwarmRole> roles;  // empty: evenly spaced roles, priority by index
};

struct ControllerConfig {
  WaypointConfig waypoint;
  AvoidanceConfig avoidance;
  EvasionConfig evasion;
  TargetingConfig targeting;
  SwarmConfig swarm;
};

/// Shortest-turn pure-pursuit law toward `point`: gain × bearing error,
/// clipped to [-1, 1].
double pursuit_heading_rate(Vec2 position, double heading, Vec2 point, double gain);

ControllerProposal waypoint_controller(const AssetState& self, std::span<const Vec2> active_path,
                                       const WaypointConfig& config);

/// The obstruction test and replan used by the avoidance controller.
struct AvoidanceInputs {
  const AssetState& self;
  const BusSnapshot& snapshot;
  const StateMap& map;
  std::span<const Vec2> remaining_waypoints;  // next mission waypoint first
  Box bounds;
};

ControllerProposal avoidance_controller(const AvoidanceInputs& in, const AvoidanceConfig& config);

/// Builds the planning grid from the map's zones and obstacles plus `extra`
/// circles, then plans from `from` to `to`. The returned polyline excludes
/// the start cell and ends exactly at `to`.
std::optional<std::vector<Vec2>> plan_route(const StateMap& map, std::span<const Circle> extra, Box bounds,
                                            double cell_size, double margin, Vec2 from, Vec2 to);

ControllerProposal evasion_controller(const BusSnapshot& snapshot, const EvasionConfig& config);

ControllerProposal targeting_controller(const AssetState& self, const StateMap& map, const BusSnapshot& snapshot,
                                        const MissionPlan& mission, const TargetingConfig& config);

/// Role of each fresh swarm member: members sorted by id take roles sorted by
/// descending priority (ties by role index). Returns role indices aligned with
/// `members` sorted ascending.
std::vector<std::pair<std::string, std::size_t>> assign_roles(std::vector<std::string> members,
                                                              const std::vector<SwarmRole>& roles);

/// Roles from the config, or `n` evenly spaced roles when none configured.
std::vector<SwarmRole> effective_roles(const SwarmConfig& config, std::size_t n);

/// Swarm members (self plus allies on the roster) updated within stale_ticks.
std::vector<std::string> fresh_members(const StateMap& map, std::span<const std::string> roster, Tick stale_ticks);

struct SwarmInputs {
  const AssetState& self;
  const StateMap& map;
  const BusSnapshot& snapshot;
  std::span<const std::string> roster;
  std::optional<std::size_t> current_role;
  std::span<const Vec2> remaining_waypoints;
};

struct SwarmDecision {
  ControllerProposal proposal;
  std::size_t role = 0;
  Vec2 slot;
  bool retasked = false;
};

SwarmDecision swarm_decide(const SwarmInputs& in, const SwarmConfig& config);

ControllerProposal swarm_controller(const SwarmInputs& in, const SwarmConfig& config);

struct ControllerInputs {
  const AssetState& self;
  const BusSnapshot& snapshot;
  const StateMap& map;
  const MissionPlan& mission;
  std::span<const Vec2> active_path;
  std::span<const Vec2> remaining_waypoints;
  std::span<const std::string> roster;
  std::optional<std::size_t> current_role;
  Box bounds;
};

/// Evaluates every controller; result is in kControllerIds order.
std::vector<ControllerProposal> run_controllers(const ControllerInputs& in, const ControllerConfig& config);

}  // namespace autosim
