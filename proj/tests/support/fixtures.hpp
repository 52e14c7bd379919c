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
#include <string>
#include <vector>

#include "autosim/actionfilter.hpp"
#include "autosim/scenario.hpp"

namespace autosim::testing {

// Action rows × {Health, Perf, Nav, EnvMap}, transcribed as marks.
inline constexpr std::array<std::string_view, kNumActionKinds> kPermissionRows = {
    "XX.X",  // Terminate Mission
    "...X",  // Update Mission Achievement
    "...X",  // Add New Target
    "X..X",  // De-prioritize Target
    "X.XX",  // Change Course
    "...X",  // Add Obstacle
    "...X",  // Engage Weapon System
    "...X",  // Evasive Maneuvers
    "...X",  // Engage Countermeasures
};

inline bool table_permits(ActionKind a, SensorCategory c) {
  return kPermissionRows[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] == 'X';
}

SensorRecord make_record(std::uint64_t id, Tick tick, SensorCategory category);

struct FuzzCase {
  ConstraintSet constraints;
  BusSnapshot snapshot;
  StateMap map{"self", Entity{}};
  Stores stores;
  ActionVector action;
};

FuzzCase random_fuzz_case(Rng& rng);

/// Empty string if `out` satisfies every constraint, otherwise a description.
std::string post_filter_violation(const FuzzCase& c, const ActionVector& out);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Reads a file under the pinned scenario directory.
Scenario pinned_scenario(const std::string& name);
std::string scenario_path(const std::string& name);

}  // namespace autosim::testing
