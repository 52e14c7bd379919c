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


#include <gtest/gtest.h>

#include <cmath>

#include "autosim/controllers.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace autosim {
namespace {

AssetState asset_at(Vec2 p, double heading = 0.0) {
  AssetState a;
  a.id = "uav1";
  a.position = p;
  a.heading = heading;
  return a;
}

Entity self_entity(Vec2 p, Tick tick = 0) {
  Entity e;
  e.id = "uav1";
  e.kind = EntityKind::kSelfAsset;
  e.position = p;
  e.last_update_tick = tick;
  e.author = "uav1";
  return e;
}

SensorRecord rec(std::uint64_t id, SensorPayload payload, Tick tick = 0) {
  SensorRecord r;
  r.record_id = id;
  r.tick = tick;
  r.payload = std::move(payload);
  r.category = category_of(r.payload);
  return r;
}

BusSnapshot basic_bus(std::vector<SensorRecord> extra = {}, Tick tick = 0) {
  std::vector<SensorRecord> recs{rec(0, HealthReport{0.1, 80, 90}, tick), rec(1, PerfReport{50, 0.1}, tick),
                                 rec(2, NavReport{{0, 0}, {}, true}, tick)};
  for (auto& r : extra) {
    r.tick = tick;
    recs.push_back(std::move(r));
  }
  return publish(std::move(recs));
}

TEST(Waypoint, HeadingRateFollowsBearing) {
  const WaypointConfig cfg;
  const std::vector<Vec2> ahead{{2000, 1000}};
  const std::vector<Vec2> behind{{0, 1000}};
  const std::vector<Vec2> thirty{{1000 + 1000 * std::cos(kPi / 6), 1000 + 1000 * std::sin(kPi / 6)}};
  const AssetState a = asset_at({1000, 1000});
  EXPECT_NEAR(waypoint_controller(a, ahead, cfg).continuous.heading_rate, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(waypoint_controller(a, behind, cfg).continuous.heading_rate), 1.0, 1e-12);
  EXPECT_NEAR(waypoint_controller(a, thirty, cfg).continuous.heading_rate, 1.0 / 3.0, 1e-9);
  EXPECT_EQ(waypoint_controller(a, ahead, cfg).continuous.speed_cmd, 1.0);
}

TEST(Waypoint, SkipsCapturedAndHoldsAtEnd) {
  const WaypointConfig cfg;
  const AssetState a = asset_at({1000, 1000});
  const std::vector<Vec2> path{{1100, 1000}, {1000, 3000}};
  EXPECT_NEAR(waypoint_controller(a, path, cfg).continuous.heading_rate, 1.0, 1e-12);
  const std::vector<Vec2> done{{1050, 1000}};
  const auto p = waypoint_controller(a, done, cfg);
  EXPECT_EQ(p.continuous, ContinuousCommand{});
  EXPECT_TRUE(p.discrete.empty());
}

TEST(Avoidance, ClearPathIsIdle) {
  StateMap map("uav1", self_entity({1000, 1000}));
  const BusSnapshot bus = basic_bus();
  const std::vector<Vec2> wps{{5000, 1000}};
  const auto p = avoidance_controller({asset_at({1000, 1000}), bus, map, wps, {{0, 0}, {10000, 10000}}}, {});
  EXPECT_TRUE(p.discrete.empty());
  EXPECT_EQ(p.confidence, 0.0);
}

TEST(Avoidance, ZoneAheadGivesSafeChangeCourse) {
  StateMap map("uav1", self_entity({1000, 5000}));
  Entity zone;
  zone.id = "nfz";
  zone.kind = EntityKind::kNoFlyZone;
  zone.position = {2200, 5000};
  zone.radius = 400;
  map.upsert(zone);
  const BusSnapshot bus = basic_bus();
  const std::vector<Vec2> wps{{5000, 5000}, {5000, 8000}};
  const AvoidanceConfig cfg;
  const auto p = avoidance_controller({asset_at({1000, 5000}), bus, map, wps, {{0, 0}, {10000, 10000}}}, cfg);
  ASSERT_EQ(p.discrete.size(), 1u);
  const auto& cc = p.discrete[0];
  EXPECT_EQ(cc.action.kind, ActionKind::kChangeCourse);
  EXPECT_EQ(cc.justifications, std::vector<std::uint64_t>{2});
  ASSERT_GE(cc.action.path.size(), 3u);
  EXPECT_EQ(cc.action.path.back(), wps[1]);
  EXPECT_EQ(cc.action.path[cc.action.path.size() - 2], wps[0]);
  Vec2 from{1000, 5000};
  for (Vec2 to : cc.action.path) {
    EXPECT_GT(testing::point_segment_distance(zone.position, from, to), zone.radius);
    from = to;
  }
  EXPECT_GT(p.confidence, 0.0);
  EXPECT_NE(p.continuous.heading_rate, 0.0);
}

TEST(Avoidance, SensedObstacleIsAdded) {
  StateMap map("uav1", self_entity({1000, 5000}));
  ContactReport c;
  c.track_id = "rock";
  c.type = EntityKind::kObstacle;
  c.position = {1800, 5000};
  c.radius = 200;
  const BusSnapshot bus = basic_bus({rec(3, c)});
  const std::vector<Vec2> wps{{5000, 5000}};
  const auto p = avoidance_controller({asset_at({1000, 5000}), bus, map, wps, {{0, 0}, {10000, 10000}}}, {});
  ASSERT_TRUE(p.proposes(ActionKind::kAddObstacle));
  EXPECT_EQ(p.discrete[0].action.entity.id, "rock");
  EXPECT_EQ(p.discrete[0].action.entity.radius, 200);
  EXPECT_EQ(p.discrete[0].justifications, std::vector<std::uint64_t>{3});
  ASSERT_TRUE(p.proposes(ActionKind::kChangeCourse));
  const auto& cc = p.discrete.back();
  EXPECT_EQ(cc.justifications, (std::vector<std::uint64_t>{2, 3}));
}

TEST(Avoidance, HighVibrationTerminates) {
  StateMap map("uav1", self_entity({1000, 5000}));
  const BusSnapshot bus = publish({rec(0, HealthReport{0.95, 80, 90})});
  const auto p = avoidance_controller({asset_at({1000, 5000}), bus, map, {}, {{0, 0}, {10000, 10000}}}, {});
  ASSERT_EQ(p.discrete.size(), 1u);
  EXPECT_EQ(p.discrete[0].action.kind, ActionKind::kTerminateMission);
  EXPECT_TRUE(PermissionMatrix::permits(ActionKind::kTerminateMission, SensorCategory::kHealth));
}

TEST(Evasion, NoWarningIsIdle) {
  const auto p = evasion_controller(basic_bus(), {});
  EXPECT_EQ(p.confidence, 0.0);
  EXPECT_TRUE(p.discrete.empty());
}

TEST(Evasion, MawBreaksAndFiresCountermeasures) {
  const BusSnapshot bus = basic_bus({rec(3, WarningReport{WarningKind::kMaw, 0.4, "m1"})});
  const auto p = evasion_controller(bus, {});
  EXPECT_EQ(p.confidence, 1.0);
  EXPECT_EQ(p.continuous.heading_rate, -1.0);
  EXPECT_TRUE(p.proposes(ActionKind::kEvasiveManeuvers));
  EXPECT_TRUE(p.proposes(ActionKind::kEngageCountermeasures));
  for (const auto& a : p.discrete) EXPECT_EQ(a.justifications, std::vector<std::uint64_t>{3});
}

TEST(Evasion, RwrBeamTurn) {
  const EvasionConfig cfg;
  // Emitter at +π/2: beaming puts it behind, a turn toward π.
  const BusSnapshot bus = basic_bus({rec(3, WarningReport{WarningKind::kRwr, kPi / 2, "sam"})});
  const auto p = evasion_controller(bus, cfg);
  EXPECT_EQ(p.confidence, cfg.rwr_confidence);
  EXPECT_NEAR(std::abs(p.continuous.heading_rate), 1.0, 1e-12);
  const BusSnapshot front = basic_bus({rec(3, WarningReport{WarningKind::kRwr, 0.0, "sam"})});
  EXPECT_NEAR(evasion_controller(front, cfg).continuous.heading_rate, 1.0, 1e-12);
  const BusSnapshot small = basic_bus({rec(3, WarningReport{WarningKind::kRwr, -1.2, "sam"})});
  EXPECT_NEAR(evasion_controller(small, cfg).continuous.heading_rate, cfg.rwr_gain * (-1.2 + kPi / 2), 1e-12);
}

TEST(Targeting, UnbriefedThreatBecomesNewTarget) {
  StateMap map("uav1", self_entity({1000, 1000}));
  ContactReport c;
  c.track_id = "sam-x";
  c.type = EntityKind::kHostile;
  c.position = {2000, 2000};
  c.classification = "SAM";
  ContactReport plane = c;
  plane.track_id = "jet";
  plane.classification = "fighter";
  const BusSnapshot bus = basic_bus({rec(3, c), rec(4, plane)});
  const auto p = targeting_controller(asset_at({1000, 1000}), map, bus, MissionPlan{}, {});
  ASSERT_EQ(p.discrete.size(), 1u);
  EXPECT_EQ(p.discrete[0].action.kind, ActionKind::kAddNewTarget);
  EXPECT_EQ(p.discrete[0].action.entity.id, "sam-x");
  EXPECT_EQ(p.discrete[0].action.entity.kind, EntityKind::kTarget);
  EXPECT_EQ(p.discrete[0].justifications, std::vector<std::uint64_t>{3});
  MissionPlan briefed;
  briefed.target_list = {{"sam-x", 0.5}};
  EXPECT_TRUE(targeting_controller(asset_at({1000, 1000}), map, bus, briefed, {}).discrete.empty());
}

TEST(Targeting, EngagesHighestPriorityInRange) {
  StateMap map("uav1", self_entity({1000, 1000}));
  std::vector<SensorRecord> recs;
  const std::vector<std::pair<std::string, double>> targets{{"a", 0.3}, {"b", 0.9}, {"c", 0.6}, {"far", 1.0}};
  std::uint64_t id = 3;
  for (const auto& [name, prio] : targets) {
    Entity t;
    t.id = name;
    t.kind = EntityKind::kTarget;
    t.priority = prio;
    t.position = name == "far" ? Vec2{9000, 9000} : Vec2{1500, 1000 + 100.0 * static_cast<double>(id)};
    map.upsert(t);
    ContactReport c{name, EntityKind::kTarget, t.position, 0, 0, "", false, 0};
    recs.push_back(rec(id++, c));
  }
  AssetState self = asset_at({1000, 1000});
  self.weapons = 1;
  const auto p = targeting_controller(self, map, basic_bus(recs), MissionPlan{}, {});
  ASSERT_TRUE(p.proposes(ActionKind::kEngageWeaponSystem));
  EXPECT_EQ(p.discrete.back().action.target_id, "b");
  // Steering follows the global argmax, here out of range.
  EXPECT_NEAR(p.continuous.heading_rate,
              pursuit_heading_rate({1000, 1000}, 0.0, {9000, 9000}, TargetingConfig{}.gain), 1e-12);
  self.weapons = 0;
  EXPECT_FALSE(targeting_controller(self, map, basic_bus(recs), MissionPlan{}, {}).proposes(
      ActionKind::kEngageWeaponSystem));
}

TEST(Targeting, NeutralizedContactUpdatesAchievement) {
  StateMap map("uav1", self_entity({1000, 1000}));
  Entity t;
  t.id = "depot";
  t.kind = EntityKind::kTarget;
  t.priority = 0.8;
  t.position = {2000, 1000};
  map.upsert(t);
  const BusSnapshot bus = basic_bus({rec(3, ContactReport{"depot", EntityKind::kTarget, t.position, 0, 0, "", true, 0})});
  const auto p = targeting_controller(asset_at({1000, 1000}), map, bus, MissionPlan{}, {});
  EXPECT_TRUE(p.proposes(ActionKind::kUpdateMissionAchievement));
  EXPECT_TRUE(p.proposes(ActionKind::kDeprioritizeTarget));
}

Entity ally(const std::string& id, Vec2 p, Tick tick) {
  Entity e;
  e.id = id;
  e.kind = EntityKind::kAllied;
  e.position = p;
  e.last_update_tick = tick;
  e.author = id;
  return e;
}

TEST(Swarm, AssignmentMatchesEnumeration) {
  const std::vector<SwarmRole> roles{{"lead", 1.0, 0}, {"left", 0.7, 1}, {"right", 0.4, 2}, {"tail", 0.7, 3}};
  const std::vector<std::vector<std::string>> cases{{"c", "a", "b"}, {"x"}, {"d", "b", "a", "c"}, {"q", "p"}};
  for (const auto& members : cases) {
    EXPECT_EQ(assign_roles(members, roles), testing::enumerate_assignment(members, roles));
  }
}

TEST(Swarm, AloneTakesTopRoleWithoutConfidence) {
  const std::vector<std::string> roster{"uav1", "uav2"};
  StateMap map("uav1", self_entity({1000, 1000}, 10), 10);
  SwarmConfig cfg;
  cfg.roles = {{"lead", 1.0, 0.0}, {"wing", 0.5, kPi}};
  const auto d = swarm_decide({asset_at({1000, 1000}), map, basic_bus(), roster, std::nullopt, {}}, cfg);
  EXPECT_EQ(d.role, 0u);
  EXPECT_EQ(d.proposal.confidence, 0.0);
  EXPECT_FALSE(d.retasked);
}

TEST(Swarm, StaleLeaderTriggersRetask) {
  const std::vector<std::string> roster{"uav0", "uav1", "uav2"};
  SwarmConfig cfg;
  cfg.stale_ticks = 3;
  cfg.roles = {{"lead", 1.0, 0.0}, {"left", 0.7, 2.0}, {"right", 0.4, 4.0}};
  StateMap map("uav1", self_entity({1000, 1000}, 20), 20);
  map.upsert(ally("uav0", {1200, 1000}, 20));
  map.upsert(ally("uav2", {1000, 1200}, 20));
  const std::vector<Vec2> wps{{5000, 5000}};
  auto d = swarm_decide({asset_at({1000, 1000}), map, basic_bus(), roster, 1, wps}, cfg);
  const auto fresh = testing::enumerate_assignment({"uav0", "uav1", "uav2"}, cfg.roles);
  EXPECT_EQ(d.role, fresh[1].second);
  EXPECT_FALSE(d.retasked);

  map.set_tick(24);
  map.upsert(ally("uav2", {1000, 1200}, 24));
  d = swarm_decide({asset_at({1000, 1000}), map, basic_bus({}, 24), roster, 1, wps}, cfg);
  const auto oracle = testing::enumerate_assignment({"uav1", "uav2"}, cfg.roles);
  EXPECT_EQ(d.role, oracle[0].second);
  EXPECT_TRUE(d.retasked);
  ASSERT_TRUE(d.proposal.proposes(ActionKind::kChangeCourse));
  EXPECT_EQ(d.proposal.discrete[0].action.path.front(), d.slot);
  EXPECT_EQ(d.proposal.discrete[0].action.path.back(), wps[0]);
  EXPECT_EQ(d.proposal.confidence, 1.0);

  // Same inputs again with the new role: stable, no second re-task.
  const auto again = swarm_decide({asset_at({1000, 1000}), map, basic_bus({}, 24), roster, d.role, wps}, cfg);
  EXPECT_EQ(again.role, d.role);
  EXPECT_FALSE(again.retasked);
}

TEST(Controllers, BankOrder) {
  StateMap map("uav1", self_entity({1000, 1000}));
  const BusSnapshot bus = basic_bus();
  const MissionPlan mission;
  const std::vector<std::string> roster{"uav1"};
  const auto out = run_controllers({asset_at({1000, 1000}), bus, map, mission, {}, {}, roster, std::nullopt,
                                    {{0, 0}, {10000, 10000}}},
                                   {});
  ASSERT_EQ(out.size(), kNumControllers);
  for (std::size_t i = 0; i < kNumControllers; ++i) EXPECT_EQ(out[i].controller_id, kControllerIds[i]);
}

}  // namespace
}  // namespace autosim
