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


#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace autosim::testing {

SensorRecord make_record(std::uint64_t id, Tick tick, SensorCategory category) {
  SensorRecord r;
  r.record_id = id;
  r.tick = tick;
  switch (category) {
    case SensorCategory::kHealth:
      r.payload = HealthReport{0.1, 70.0, 101.0};
      r.source = "engine";
      break;
    case SensorCategory::kPerformance:
      r.payload = PerfReport{50.0, 0.1};
      r.source = "airframe";
      break;
    case SensorCategory::kNavigation:
      r.payload = NavReport{{0.0, 0.0}, {0.0, 0.0}, true};
      r.source = "ins";
      break;
    case SensorCategory::kEnvironmentalMapping:
      r.payload = ContactReport{"h", EntityKind::kHostile, {100.0, 0.0}, 0.0, 0.0, "SAM", false, 0.0};
      r.source = "radar";
      break;
  }
  r.category = category_of(r.payload);
  return r;
}

namespace {

double wild(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 19);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  switch (pick(rng)) {
    case 0:
      return std::numeric_limits<double>::quiet_NaN();
    case 1:
      return std::numeric_limits<double>::infinity();
    case 2:
      return -std::numeric_limits<double>::infinity();
    default:
      return u(rng);
  }
}

}  // namespace

FuzzCase random_fuzz_case(Rng& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> coord(-2000.0, 2000.0);
  std::uniform_int_distribution<int> small(0, 4);
  FuzzCase c;

  auto& k = c.constraints;
  k.max_speed_cmd = u01(rng);
  k.max_heading_rate = u01(rng);
  k.weapons_free = u01(rng) < 0.6;
  k.min_countermeasures_reserve = small(rng);
  for (int i = small(rng); i > 0; --i) k.geofence.push_back({{coord(rng), coord(rng)}, 50.0 + 400.0 * u01(rng)});

  Entity self;
  self.position = {coord(rng), coord(rng)};
  c.map = StateMap("self", self, 10);
  std::vector<std::string> ids;
  for (int i = 0; i < 5; ++i) {
    Entity t;
    t.id = "t" + std::to_string(i);
    t.kind = u01(rng) < 0.8 ? EntityKind::kTarget : EntityKind::kHostile;
    t.position = {coord(rng), coord(rng)};
    t.neutralized = u01(rng) < 0.3;
    t.priority = u01(rng);
    t.last_update_tick = 10;
    t.author = "self";
    c.map.upsert(t);
    ids.push_back(t.id);
    if (u01(rng) < 0.25) k.no_strike_ids.insert(t.id);
  }
  ids.push_back("ghost");

  std::vector<SensorRecord> records;
  const int n_records = 1 + small(rng) * 2;
  for (int i = 0; i < n_records; ++i) {
    records.push_back(make_record(static_cast<std::uint64_t>(i), 10,
                                  static_cast<SensorCategory>(std::uniform_int_distribution<int>(0, 3)(rng))));
  }
  c.snapshot = publish(records);

  c.stores.weapons = small(rng) - 1;
  c.stores.countermeasures = small(rng) * 2 - 1;

  c.action.continuous = {wild(rng), wild(rng)};
  std::uniform_int_distribution<int> kind(0, static_cast<int>(kNumActionKinds) - 1);
  std::uniform_int_distribution<std::size_t> id_pick(0, ids.size() - 1);
  for (int i = small(rng); i > 0; --i) {
    EmittedAction e;
    e.action.kind = static_cast<ActionKind>(kind(rng));
    e.action.target_id = ids[id_pick(rng)];
    if (e.action.kind == ActionKind::kAddNewTarget || e.action.kind == ActionKind::kAddObstacle) {
      e.action.entity.id = ids[id_pick(rng)];
      e.action.entity.position = {coord(rng), coord(rng)};
    }
    if (e.action.kind == ActionKind::kChangeCourse) {
      for (int j = small(rng); j > 0; --j) e.action.path.push_back({coord(rng), coord(rng)});
    }
    for (int j = small(rng); j > 0; --j) {
      e.justifications.push_back(std::uniform_int_distribution<std::uint64_t>(0, static_cast<std::uint64_t>(n_records) + 2)(rng));
    }
    e.controllers = {"fuzz"};
    c.action.discrete.push_back(std::move(e));
  }
  return c;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = a.x + t * vx - p.x;
  const double dy = a.y + t * vy - p.y;
  return std::sqrt(dx * dx + dy * dy);
}

std::string post_filter_violation(const FuzzCase& c, const ActionVector& out) {
  const auto& k = c.constraints;
  const double hr = out.continuous.heading_rate;
  const double sp = out.continuous.speed_cmd;
  if (!std::isfinite(hr) || hr < -k.max_heading_rate || hr > k.max_heading_rate) return "heading_rate out of bounds";
  if (!std::isfinite(sp) || sp < 0.0 || sp > k.max_speed_cmd) return "speed_cmd out of bounds";
  for (const auto& e : out.discrete) {
    bool permitted = false;
    for (auto id : e.justifications) {
      for (const auto& r : c.snapshot.records()) {
        if (r.record_id == id && table_permits(e.action.kind, r.category)) permitted = true;
      }
    }
    if (!permitted) return "unjustified " + std::string(to_string(e.action.kind));
    const Entity* t = c.map.find(e.action.target_id);
    const bool live_target = t != nullptr && t->kind == EntityKind::kTarget;
    switch (e.action.kind) {
      case ActionKind::kEngageWeaponSystem:
        if (!k.weapons_free) return "engage while weapons hold";
        if (k.no_strike_ids.count(e.action.target_id)) return "engage no-strike";
        if (!live_target || t->neutralized) return "engage invalid target";
        if (c.stores.weapons <= 0) return "engage without weapons";
        break;
      case ActionKind::kEngageCountermeasures:
        if (c.stores.countermeasures <= k.min_countermeasures_reserve) return "countermeasures below reserve";
        break;
      case ActionKind::kChangeCourse: {
        if (e.action.path.empty()) return "empty course";
        Vec2 from = c.map.self().position;
        for (Vec2 to : e.action.path) {
          for (const auto& g : k.geofence) {
            if (point_segment_distance(g.center, from, to) <= g.radius) return "course crosses geofence";
          }
          from = to;
        }
        break;
      }
      case ActionKind::kAddNewTarget:
        if (k.no_strike_ids.count(e.action.entity.id)) return "no-strike added as target";
        break;
      case ActionKind::kUpdateMissionAchievement:
      case ActionKind::kDeprioritizeTarget:
        if (!live_target) return "unknown target";
        break;
      default:
        break;
    }
  }
  return {};
}

std::string scenario_path(const std::string& name) { return std::string(AUTOSIM_SCENARIO_DIR) + "/" + name; }

Scenario pinned_scenario(const std::string& name) { return load_scenario(scenario_path(name)); }

}  // namespace autosim::testing
