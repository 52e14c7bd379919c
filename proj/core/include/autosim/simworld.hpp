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

#include <map>
#include <string>
#include <vector>

#include "autosim/actions.hpp"
#include "autosim/common.hpp"
#include "autosim/world.hpp"

namespace autosim {

struct WorldEvent {
  Tick tick = 0;
  std::string kind;     // launch, kill, damage, hit, miss, expire, collision, fuel_out, terminate
  std::string subject;  // acting object
  std::string object;   // affected object, may be empty
  bool operator==(const WorldEvent&) const = default;
};

struct StepResult {
  WorldState world;
  std::vector<WorldEvent> events;
};

/// Advances the world by one second. Living assets that have not terminated
/// their mission need an entry in `actions`; entries for dead assets are
/// ignored. Assets act in id order, then interceptors, missiles, SAM sites.
StepResult step(const WorldState& world, const std::map<std::string, ActionVector>& actions, const WorldRules& rules,
                Rng& rng);

/// Episode outcome counts consumed by compute_utility.
struct EpisodeSummary {
  std::size_t initial_assets = 0;
  std::size_t surviving_assets = 0;
  std::size_t primary_targets_neutralized = 0;
  std::size_t waypoints_captured = 0;  // summed over assets
  std::size_t waypoints_total = 0;     // mission waypoints × initial assets
  std::int64_t audit_rejections = 0;
  Tick ticks_used = 0;
};

/// U = w_t·targets + w_w·waypoints + w_s·survival + w_c·constraints − w_time·time.
/// Empty target or waypoint lists count as fully achieved.
UtilityReport compute_utility(const EpisodeSummary& summary, const MissionPlan& plan, const WorldRules& rules);

/// Ids of `world.targets` that appear in the plan's target list and are neutralized.
std::size_t count_primary_neutralized(const WorldState& world, const MissionPlan& plan);

}  // namespace autosim
