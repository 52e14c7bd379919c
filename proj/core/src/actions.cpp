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

#include "autosim/actions.hpp"

#include <algorithm>

namespace autosim {

namespace {

constexpr std::array<std::string_view, kNumActionKinds> kActionNames = {
    "TerminateMission", "UpdateMissionAchievement", "AddNewTarget",
    "DeprioritizeTarget", "ChangeCourse", "AddObstacle",
    "EngageWeaponSystem", "EvasiveManeuvers", "EngageCountermeasures"};

DiscreteAction of_kind(ActionKind kind) {
  DiscreteAction a;
  a.kind = kind;
  return a;
}

}  // namespace

std::string_view to_string(ActionKind kind) { return kActionNames.at(static_cast<std::size_t>(kind)); }

std::optional<ActionKind> action_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kActionNames.size(); ++i) {
    if (kActionNames[i] == name) return static_cast<ActionKind>(i);
  }
  return std::nullopt;
}

DiscreteAction DiscreteAction::terminate_mission() { return of_kind(ActionKind::kTerminateMission); }

DiscreteAction DiscreteAction::update_mission_achievement(std::string target_id) {
  auto a = of_kind(ActionKind::kUpdateMissionAchievement);
  a.target_id = std::move(target_id);
  return a;
}

DiscreteAction DiscreteAction::add_new_target(Entity target) {
  auto a = of_kind(ActionKind::kAddNewTarget);
  target.kind = EntityKind::kTarget;
  a.target_id = target.id;
  a.entity = std::move(target);
  return a;
}

DiscreteAction DiscreteAction::deprioritize_target(std::string target_id) {
  auto a = of_kind(ActionKind::kDeprioritizeTarget);
  a.target_id = std::move(target_id);
  return a;
}

DiscreteAction DiscreteAction::change_course(std::vector<Vec2> path) {
  auto a = of_kind(ActionKind::kChangeCourse);
  a.path = std::move(path);
  return a;
}

DiscreteAction DiscreteAction::add_obstacle(std::string id, Circle area) {
  auto a = of_kind(ActionKind::kAddObstacle);
  a.entity.id = std::move(id);
  a.entity.kind = EntityKind::kObstacle;
  a.entity.position = area.center;
  a.entity.radius = area.radius;
  a.entity.classification = "obstacle";
  a.target_id = a.entity.id;
  return a;
}

DiscreteAction DiscreteAction::engage_weapon_system(std::string target_id) {
  auto a = of_kind(ActionKind::kEngageWeaponSystem);
  a.target_id = std::move(target_id);
  return a;
}

DiscreteAction DiscreteAction::evasive_maneuvers() { return of_kind(ActionKind::kEvasiveManeuvers); }

DiscreteAction DiscreteAction::engage_countermeasures() { return of_kind(ActionKind::kEngageCountermeasures); }

std::vector<std::uint64_t> ControllerProposal::justifications() const {
  std::vector<std::uint64_t> ids;
  for (const auto& p : discrete) ids.insert(ids.end(), p.justifications.begin(), p.justifications.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool ControllerProposal::proposes(ActionKind kind) const {
  return std::any_of(discrete.begin(), discrete.end(), [kind](const auto& p) { return p.action.kind == kind; });
}

bool ActionVector::has(ActionKind kind) const {
  return std::any_of(discrete.begin(), discrete.end(), [kind](const auto& e) { return e.action.kind == kind; });
}

}  // namespace autosim
