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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autosim/common.hpp"
#include "autosim/constraints.hpp"
#include "autosim/statemap.hpp"

namespace autosim {

/// The nine mission-level actions.
enum class ActionKind : std::uint8_t {
  kTerminateMission = 0,
  kUpdateMissionAchievement,
  kAddNewTarget,
  kDeprioritizeTarget,
  kChangeCourse,
  kAddObstacle,
  kEngageWeaponSystem,
  kEvasiveManeuvers,
  kEngageCountermeasures,
};
inline constexpr std::size_t kNumActionKinds = 9;

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> action_kind_from_string(std::string_view name);

/// A discrete action and its parameters. Only the fields relevant to `kind`
/// are meaningful; the factories below set exactly those.
struct DiscreteAction {
  ActionKind kind = ActionKind::kTerminateMission;
  std::string target_id;     // UpdateMissionAchievement, DeprioritizeTarget, EngageWeaponSystem
  Entity entity;             // AddNewTarget, AddObstacle (id, position, radius)
  std::vector<Vec2> path;    // ChangeCourse

  bool operator==(const DiscreteAction&) const = default;

  static DiscreteAction terminate_mission();
  static DiscreteAction update_mission_achievement(std::string target_id);
  static DiscreteAction add_new_target(Entity target);
  static DiscreteAction deprioritize_target(std::string target_id);
  static DiscreteAction change_course(std::vector<Vec2> path);
  static DiscreteAction add_obstacle(std::string id, Circle area);
  static DiscreteAction engage_weapon_system(std::string target_id);
  static DiscreteAction evasive_maneuvers();
  static DiscreteAction engage_countermeasures();
};

struct ContinuousCommand {
  double heading_rate = 0.0;  // [-1, 1] fraction of max turn rate
  double speed_cmd = 0.0;     // [0, 1] fraction of max speed
  bool operator==(const ContinuousCommand&) const = default;
};

inline constexpr std::size_t kNumContinuous = 2;

struct ProposedAction {
  DiscreteAction action;
  std::vector<std::uint64_t> justifications;  // SensorRecord ids of this tick
  bool operator==(const ProposedAction&) const = default;
};

struct ControllerProposal {
  std::string controller_id;
  ContinuousCommand continuous;
  std::vector<ProposedAction> discrete;
  double confidence = 0.0;

  /// Union of per-action justifications, ascending.
  [[nodiscard]] std::vector<std::uint64_t> justifications() const;
  [[nodiscard]] bool proposes(ActionKind kind) const;
  bool operator==(const ControllerProposal&) const = default;
};

struct EmittedAction {
  DiscreteAction action;
  std::vector<std::string> controllers;
  std::vector<std::uint64_t> justifications;
  bool operator==(const EmittedAction&) const = default;
};

/// The unified action for one asset and one tick.
struct ActionVector {
  ContinuousCommand continuous;
  std::vector<EmittedAction> discrete;

  [[nodiscard]] bool has(ActionKind kind) const;
  bool operator==(const ActionVector&) const = default;
};

}  // namespace autosim
