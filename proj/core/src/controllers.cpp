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

#include "autosim/controllers.hpp"

#include <algorithm>
#include <map>

namespace autosim {

namespace {

ControllerProposal idle(std::string_view id) {
  ControllerProposal p;
  p.controller_id = std::string(id);
  return p;
}

std::optional<std::uint64_t> first_record_id(const BusSnapshot& snapshot, SensorCategory category) {
  for (const auto& r : snapshot.records()) {
    if (r.category == category) return r.record_id;
  }
  return std::nullopt;
}

const ContactReport* contact_for(const BusSnapshot& snapshot, const std::string& track, std::uint64_t* id) {
  for (const auto& r : snapshot.records()) {
    if (const auto* c = std::get_if<ContactReport>(&r.payload); c != nullptr && c->track_id == track) {
      if (id != nullptr) *id = r.record_id;
      return c;
    }
  }
  return nullptr;
}

}  // namespace

double pursuit_heading_rate(Vec2 position, double heading, Vec2 point, double gain) {
  return std::clamp(gain * relative_bearing(position, heading, point), -1.0, 1.0);
}

ControllerProposal waypoint_controller(const AssetState& self, std::span<const Vec2> active_path,
                                       const WaypointConfig& config) {
  ControllerProposal p = idle(kControllerIds[0]);
  p.confidence = 1.0;
  auto it = std::find_if(active_path.begin(), active_path.end(), [&](Vec2 wp) {
    return distance(wp, self.position) > config.capture_radius;
  });
  if (it == active_path.end()) return p;  // final waypoint captured: hold
  p.continuous.heading_rate = pursuit_heading_rate(self.position, self.heading, *it, config.gain);
  p.continuous.speed_cmd = 1.0;
  return p;
}

std::optional<std::vector<Vec2>> plan_route(const StateMap& map, std::span<const Circle> extra, Box bounds,
                                            double cell_size, double margin, Vec2 from, Vec2 to) {
  const int width = std::max(1, static_cast<int>(std::ceil(bounds.width() / cell_size)));
  const int height = std::max(1, static_cast<int>(std::ceil(bounds.height() / cell_size)));
  PlanGrid grid(width, height, cell_size, bounds.min);
  std::vector<Circle> circles(extra.begin(), extra.end());
  for (const auto& [id, e] : map.entities()) {
    if (e.kind == EntityKind::kNoFlyZone || e.kind == EntityKind::kObstacle) {
      circles.push_back({e.position, e.radius});
    }
  }
  grid.block_circles(circles, margin);
  const Cell start = grid.cell_of(from);
  const Cell goal = grid.cell_of(to);
  if (grid.blocked(start)) return std::nullopt;
  auto path = plan_path_astar(grid, start, goal);
  if (!path) return std::nullopt;
  const auto cells = compress_path(path->cells);
  std::vector<Vec2> out;
  for (std::size_t i = 1; i + 1 < cells.size(); ++i) out.push_back(grid.center_of(cells[i]));
  out.push_back(to);
  return out;
}

ControllerProposal avoidance_controller(const AvoidanceInputs& in, const AvoidanceConfig& config) {
  ControllerProposal p = idle(kControllerIds[1]);

  for (const SensorRecord* r : in.snapshot.of_type<HealthReport>()) {
    if (std::get<HealthReport>(r->payload).engine_vibration >= config.terminate_vibration) {
      p.discrete.push_back({DiscreteAction::terminate_mission(), {r->record_id}});
      p.confidence = 1.0;
      return p;
    }
  }

  struct Obstruction {
    Circle area;
    std::optional<std::uint64_t> record;  // set for sensed obstacles not yet in the map
    std::string id;
  };
  std::vector<Obstruction> obstructions;
  for (const auto& [id, e] : in.map.entities()) {
    if (e.kind == EntityKind::kNoFlyZone || e.kind == EntityKind::kObstacle) {
      obstructions.push_back({{e.position, e.radius}, std::nullopt, id});
    }
  }
  for (const SensorRecord* r : in.snapshot.of_type<ContactReport>()) {
    const auto& c = std::get<ContactReport>(r->payload);
    if (c.type != EntityKind::kObstacle) continue;
    const Entity* known = in.map.find(c.track_id);
    if (known != nullptr && known->kind == EntityKind::kObstacle) continue;
    obstructions.push_back({{c.position, c.radius}, r->record_id, c.track_id});
  }

  const Vec2 pos = in.self.position;
  const Vec2 ahead = pos + Vec2{std::cos(in.self.heading), std::sin(in.self.heading)} * config.horizon;
  std::optional<double> nearest_entry;
  std::vector<std::uint64_t> involved;
  for (const auto& o : obstructions) {
    auto d = segment_entry_distance(pos, ahead, o.area.center, o.area.radius + config.margin);
    if (!d) continue;
    nearest_entry = nearest_entry ? std::min(*nearest_entry, *d) : *d;
    if (o.record) involved.push_back(*o.record);
  }
  if (!nearest_entry) return p;

  std::vector<Circle> sensed;
  for (const auto& o : obstructions) {
    if (!o.record) continue;
    sensed.push_back(o.area);
    p.discrete.push_back({DiscreteAction::add_obstacle(o.id, o.area), {*o.record}});
  }

  p.confidence = std::min(1.0, 2.0 * (1.0 - *nearest_entry / config.horizon));
  p.continuous.speed_cmd = 1.0;
  if (!in.remaining_waypoints.empty()) {
    auto route = plan_route(in.map, sensed, in.bounds, config.cell_size, config.margin, pos,
                            in.remaining_waypoints.front());
    if (route) {
      p.continuous.heading_rate = pursuit_heading_rate(pos, in.self.heading, route->front(), config.gain);
      std::vector<Vec2> path = *route;
      path.insert(path.end(), in.remaining_waypoints.begin() + 1, in.remaining_waypoints.end());
      std::vector<std::uint64_t> just = involved;
      if (auto nav = first_record_id(in.snapshot, SensorCategory::kNavigation)) just.push_back(*nav);
      std::sort(just.begin(), just.end());
      just.erase(std::unique(just.begin(), just.end()), just.end());
      p.discrete.push_back({DiscreteAction::change_course(std::move(path)), std::move(just)});
    }
  }
  return p;
}

ControllerProposal evasion_controller(const BusSnapshot& snapshot, const EvasionConfig& config) {
  ControllerProposal p = idle(kControllerIds[2]);
  const SensorRecord* maw = nullptr;
  const SensorRecord* rwr = nullptr;
  for (const SensorRecord* r : snapshot.of_type<WarningReport>()) {
    const auto& w = std::get<WarningReport>(r->payload);
    if (w.warning_kind == WarningKind::kMaw && maw == nullptr) maw = r;
    if (w.warning_kind == WarningKind::kRwr && rwr == nullptr) rwr = r;
  }
  if (maw != nullptr) {
    std::vector<std::uint64_t> ids;
    for (const SensorRecord* r : snapshot.of_type<WarningReport>()) {
      if (std::get<WarningReport>(r->payload).warning_kind == WarningKind::kMaw) ids.push_back(r->record_id);
    }
    const double bearing = std::get<WarningReport>(maw->payload).bearing;
    // Hard turn putting the missile behind: threat on the left, break right.
    p.continuous.heading_rate = bearing >= 0.0 ? -1.0 : 1.0;
    p.continuous.speed_cmd = 1.0;
    p.confidence = 1.0;
    p.discrete.push_back({DiscreteAction::evasive_maneuvers(), ids});
    p.discrete.push_back({DiscreteAction::engage_countermeasures(), ids});
    return p;
  }
  if (rwr != nullptr) {
    const double bearing = std::get<WarningReport>(rwr->payload).bearing;
    const double desired = wrap_pi(bearing + kPi / 2.0);
    p.continuous.heading_rate = std::clamp(config.rwr_gain * desired, -1.0, 1.0);
    p.continuous.speed_cmd = 1.0;
    p.confidence = config.rwr_confidence;
    p.discrete.push_back({DiscreteAction::evasive_maneuvers(), {rwr->record_id}});
  }
  return p;
}

ControllerProposal targeting_controller(const AssetState& self, const StateMap& map, const BusSnapshot& snapshot,
                                        const MissionPlan& mission, const TargetingConfig& config) {
  ControllerProposal p = idle(kControllerIds[3]);
  std::set<std::string> briefed;
  for (const auto& t : mission.target_list) briefed.insert(t.id);

  for (const SensorRecord* r : snapshot.of_type<ContactReport>()) {
    const auto& c = std::get<ContactReport>(r->payload);
    const Entity* known = map.find(c.track_id);
    const bool is_target = known != nullptr && known->kind == EntityKind::kTarget;

    if (c.type == EntityKind::kHostile && !c.neutralized && config.threat_classes.contains(c.classification) &&
        !is_target && !briefed.contains(c.track_id)) {
      Entity e;
      e.id = c.track_id;
      e.kind = EntityKind::kTarget;
      e.position = c.position;
      e.classification = c.classification;
      e.priority = config.new_target_priority;
      p.discrete.push_back({DiscreteAction::add_new_target(std::move(e)), {r->record_id}});
    }
    if (!is_target) continue;
    if (c.neutralized && !known->neutralized) {
      p.discrete.push_back({DiscreteAction::update_mission_achievement(c.track_id), {r->record_id}});
    }
    const bool restricted = mission.constraints.no_strike_ids.contains(c.track_id);
    if (known->priority > 0.0 && (c.neutralized || known->neutralized || restricted)) {
      p.discrete.push_back({DiscreteAction::deprioritize_target(c.track_id), {r->record_id}});
    }
  }

  // Engagement and steering: best live target by (priority desc, id).
  const Entity* best_any = nullptr;
  const Entity* best_in_range = nullptr;
  std::uint64_t in_range_record = 0;
  for (const auto& [id, e] : map.entities()) {
    if (e.kind != EntityKind::kTarget || e.neutralized || e.priority <= 0.0) continue;
    if (best_any == nullptr || e.priority > best_any->priority) best_any = &e;
    std::uint64_t rid = 0;
    const ContactReport* c = contact_for(snapshot, id, &rid);
    if (c == nullptr || c->neutralized || distance(c->position, self.position) > config.weapon_range) continue;
    if (best_in_range == nullptr || e.priority > best_in_range->priority) {
      best_in_range = &e;
      in_range_record = rid;
    }
  }
  if (self.weapons > 0 && best_in_range != nullptr) {
    p.discrete.push_back({DiscreteAction::engage_weapon_system(best_in_range->id), {in_range_record}});
  }
  if (self.weapons > 0 && best_any != nullptr) {
    p.continuous.heading_rate = pursuit_heading_rate(self.position, self.heading, best_any->position, config.gain);
    p.continuous.speed_cmd = 1.0;
    p.confidence = best_any->priority;
  }
  if (!p.discrete.empty()) p.confidence = std::max(p.confidence, 0.5);
  return p;
}

std::vector<SwarmRole> effective_roles(const SwarmConfig& config, std::size_t n) {
  if (!config.roles.empty()) return config.roles;
  std::vector<SwarmRole> roles;
  for (std::size_t i = 0; i < n; ++i) {
    roles.push_back({"slot" + std::to_string(i), 1.0 - static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n, 1)),
                     kTwoPi * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n, 1))});
  }
  return roles;
}

std::vector<std::pair<std::string, std::size_t>> assign_roles(std::vector<std::string> members,
                                                              const std::vector<SwarmRole>& roles) {
  std::sort(members.begin(), members.end());
  std::vector<std::size_t> order(roles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return roles[a].priority > roles[b].priority; });
  std::vector<std::pair<std::string, std::size_t>> out;
  for (std::size_t i = 0; i < members.size() && i < order.size(); ++i) out.emplace_back(members[i], order[i]);
  return out;
}

std::vector<std::string> fresh_members(const StateMap& map, std::span<const std::string> roster, Tick stale_ticks) {
  std::vector<std::string> out{map.own_id()};
  for (const auto& id : roster) {
    if (id == map.own_id()) continue;
    const Entity* e = map.find(id);
    if (e == nullptr || e->kind != EntityKind::kAllied) continue;
    if (map.tick() - e->last_update_tick > stale_ticks) continue;
    out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SwarmDecision swarm_decide(const SwarmInputs& in, const SwarmConfig& config) {
  SwarmDecision d;
  d.proposal = idle(kControllerIds[4]);
  const auto roles = effective_roles(config, std::max<std::size_t>(in.roster.size(), 1));
  const auto members = fresh_members(in.map, in.roster, config.stale_ticks);
  const auto assignment = assign_roles(members, roles);

  Vec2 centroid;
  for (const auto& id : members) centroid += in.map.find(id)->position;
  centroid = centroid * (1.0 / static_cast<double>(members.size()));

  auto mine = std::find_if(assignment.begin(), assignment.end(),
                           [&](const auto& a) { return a.first == in.map.own_id(); });
  if (mine == assignment.end()) return d;  // more members than roles: no slot
  d.role = mine->second;
  const double angle = roles[d.role].angle;
  d.slot = centroid + Vec2{std::cos(angle), std::sin(angle)} * config.ring_radius;

  const Vec2 pos = in.self.position;
  d.proposal.continuous.heading_rate = pursuit_heading_rate(pos, in.self.heading, d.slot, config.gain);
  d.proposal.continuous.speed_cmd = std::clamp(distance(pos, d.slot) / config.ring_radius, 0.0, 1.0);
  d.proposal.confidence = members.size() > 1 ? 0.25 : 0.0;

  d.retasked = in.current_role.has_value() && *in.current_role != d.role;
  if (d.retasked) {
    std::vector<Vec2> path{d.slot};
    path.insert(path.end(), in.remaining_waypoints.begin(), in.remaining_waypoints.end());
    std::vector<std::uint64_t> just;
    if (auto nav = first_record_id(in.snapshot, SensorCategory::kNavigation)) just.push_back(*nav);
    d.proposal.discrete.push_back({DiscreteAction::change_course(std::move(path)), std::move(just)});
    d.proposal.confidence = 1.0;
  }
  return d;
}

ControllerProposal swarm_controller(const SwarmInputs& in, const SwarmConfig& config) {
  return swarm_decide(in, config).proposal;
}

std::vector<ControllerProposal> run_controllers(const ControllerInputs& in, const ControllerConfig& config) {
  std::vector<ControllerProposal> out;
  out.reserve(kNumControllers);
  out.push_back(waypoint_controller(in.self, in.active_path, config.waypoint));
  out.push_back(avoidance_controller({in.self, in.snapshot, in.map, in.remaining_waypoints, in.bounds},
                                     config.avoidance));
  out.push_back(evasion_controller(in.snapshot, config.evasion));
  out.push_back(targeting_controller(in.self, in.map, in.snapshot, in.mission, config.targeting));
  out.push_back(swarm_controller({in.self, in.map, in.snapshot, in.roster, in.current_role, in.remaining_waypoints},
                                 config.swarm));
  return out;
}

}  // namespace autosim
