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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "autosim/actions.hpp"
#include "autosim/constraints.hpp"
#include "autosim/sensorbus.hpp"
#include "autosim/statemap.hpp"

namespace autosim {

/// Which sensor categories may justify each action kind. Immutable.
class PermissionMatrix {
 public:
  static constexpr bool permits(ActionKind action, SensorCategory category) {
    return kTable[static_cast<std::size_t>(action)][static_cast<std::size_t>(category)];
  }

 private:
  //                                       Health Perf  Nav    EnvMap
  static constexpr std::array<std::array<bool, kNumSensorCategories>, kNumActionKinds> kTable = {{
      {true, true, false, true},     // TerminateMission
      {false, false, false, true},   // UpdateMissionAchievement
      {false, false, false, true},   // AddNewTarget
      {true, false, false, true},    // DeprioritizeTarget
      {true, false, true, true},     // ChangeCourse
      {false, false, false, true},   // AddObstacle
      {false, false, false, true},   // EngageWeaponSystem
      {false, false, false, true},   // EvasiveManeuvers
      {false, false, false, true},   // EngageCountermeasures
  }};
};

struct ProvenanceOk {};
struct ProvenanceViolation {
  ActionKind action;
  std::vector<SensorCategory> seen;
  std::string reason;
};
using ProvenanceResult = std::variant<ProvenanceOk, ProvenanceViolation>;

/// Ok iff at least one justification's category is permitted for the action.
ProvenanceResult check_provenance(const DiscreteAction& action, std::span<const SensorRecord> justifications);

ActionVector clamp_continuous(ActionVector action, const ConstraintSet& c);

enum class Verdict : std::uint8_t { kPassed = 0, kClamped, kRejected };
std::string_view to_string(Verdict v);

struct AuditEntry {
  Tick tick = 0;
  std::string asset;
  std::string action;  // ActionKind name, or "Continuous"
  Verdict verdict = Verdict::kPassed;
  std::string reason;
  std::vector<std::uint64_t> justifications;
  bool operator==(const AuditEntry&) const = default;
};

/// Expendable stores of the asset being filtered.
struct Stores {
  std::int64_t weapons = 0;
  std::int64_t countermeasures = 0;
};

struct FilterResult {
  ActionVector action;
  std::vector<AuditEntry> audit;
};

/// Degrades the action to the constraint set: clamps continuous channels and
/// drops discrete actions that fail provenance or their constraint rule. Every
/// discrete action and the continuous command get one audit entry.
FilterResult filter(const ActionVector& action, const BusSnapshot& snapshot, const ConstraintSet& c,
                    const StateMap& map, const Stores& stores, const std::string& asset = {});

/// True if the polyline start -> path[0] -> ... crosses any geofence circle.
bool path_violates_geofence(Vec2 start, std::span<const Vec2> path, std::span<const Circle> geofence);

}  // namespace autosim
