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


#include "autosim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "autosim/ensembler.hpp"
#include "json_util.hpp"

namespace autosim {

using detail::array;
using detail::boolean;
using detail::check_keys;
using detail::index;
using detail::integer;
using detail::join;
using detail::json;
using detail::number;
using detail::point;
using detail::required_string;
using detail::string;

EnvLayout Scenario::env_layout() const {
  EnvLayout l;
  l.contact_slots = ensembler.contact_slots;
  l.bounds = world.bounds;
  return l;
}

MapEncodingLayout Scenario::map_layout() const {
  MapEncodingLayout l;
  l.per_kind_slots = ensembler.map_slots;
  l.normalization = world.bounds;
  return l;
}

std::size_t Scenario::input_size() const {
  return ensembler_input_size(env_layout().length(), kNumControllers, map_layout().length());
}

namespace {

void positive(double v, const std::string& field) {
  if (!(v > 0.0)) throw ValidationError(field, "must be > 0");
}

void non_negative(double v, const std::string& field) {
  if (!(v >= 0.0)) throw ValidationError(field, "must be >= 0");
}

void unit_interval(double v, const std::string& field) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(field, "must be in [0, 1]");
}

void parse_world(const json& j, Scenario& s) {
  const std::string path = "world";
  check_keys(j, path, {"bounds", "wind", "targets", "zones", "obstacles", "missiles", "events", "rules"});
  WorldState& w = s.world;
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    check_keys(b, "world.bounds", {"min", "max"});
    w.bounds.min = point(b, "min", "world.bounds", {0.0, 0.0});
    w.bounds.max = point(b, "max", "world.bounds", {10000.0, 10000.0});
    if (w.bounds.degenerate()) throw ValidationError("world.bounds", "box must have positive width and height");
  }
  w.wind = point(j, "wind", path, {});

  const auto& targets = array(j, "targets", path);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string p = index("world.targets", i);
    check_keys(targets[i], p, {"id", "position", "classification", "priority", "neutralized"});
    Entity t;
    t.id = required_string(targets[i], "id", p);
    t.kind = EntityKind::kTarget;
    t.position = point(targets[i], "position", p, {});
    t.classification = string(targets[i], "classification", p, "target");
    t.priority = number(targets[i], "priority", p, 1.0);
    unit_interval(t.priority, join(p, "priority"));
    t.neutralized = boolean(targets[i], "neutralized", p, false);
    w.targets.push_back(std::move(t));
  }
  auto circles = [&](std::string_view key, std::vector<Obstacle>& out) {
    const auto& list = array(j, key, path);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = index(join(path, key), i);
      check_keys(list[i], p, {"id", "center", "radius"});
      Obstacle o{required_string(list[i], "id", p), {point(list[i], "center", p, {}), number(list[i], "radius", p, 0.0)}};
      positive(o.area.radius, join(p, "radius"));
      out.push_back(std::move(o));
    }
  };
  circles("zones", w.zones);
  circles("obstacles", w.obstacles);

  const auto& missiles = array(j, "missiles", path);
  for (std::size_t i = 0; i < missiles.size(); ++i) {
    const std::string p = index("world.missiles", i);
    check_keys(missiles[i], p, {"id", "position", "velocity", "target", "fuse_radius", "max_turn", "lifetime"});
    Missile m;
    m.id = required_string(missiles[i], "id", p);
    m.launcher = "scripted";
    m.position = point(missiles[i], "position", p, {});
    m.velocity = point(missiles[i], "velocity", p, {});
    m.target = required_string(missiles[i], "target", p);
    m.fuse_radius = number(missiles[i], "fuse_radius", p, 60.0);
    m.max_turn = number(missiles[i], "max_turn", p, 0.35);
    m.ticks_left = integer(missiles[i], "lifetime", p, 40);
    positive(m.velocity.norm(), join(p, "velocity"));
    w.missiles.push_back(std::move(m));
  }

  const auto& events = array(j, "events", path);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string p = index("world.events", i);
    check_keys(events[i], p, {"tick", "kill"});
    ScriptedKill k{integer(events[i], "tick", p, 0), required_string(events[i], "kill", p)};
    if (k.tick < 0) throw ValidationError(join(p, "tick"), "must be >= 0");
    s.kills.push_back(std::move(k));
  }

  if (j.contains("rules")) {
    const json& r = j.at("rules");
    const std::string p = "world.rules";
    check_keys(r, p, {"p_kill", "p_hit", "weapon_range", "rejection_normalizer", "missile_damage"});
    s.rules.p_kill = number(r, "p_kill", p, s.rules.p_kill);
    s.rules.p_hit = number(r, "p_hit", p, s.rules.p_hit);
    s.rules.weapon_range = number(r, "weapon_range", p, s.rules.weapon_range);
    s.rules.rejection_normalizer = number(r, "rejection_normalizer", p, s.rules.rejection_normalizer);
    s.rules.missile_damage = number(r, "missile_damage", p, s.rules.missile_damage);
    unit_interval(s.rules.p_kill, join(p, "p_kill"));
    unit_interval(s.rules.p_hit, join(p, "p_hit"));
    non_negative(s.rules.weapon_range, join(p, "weapon_range"));
    positive(s.rules.rejection_normalizer, join(p, "rejection_normalizer"));
    unit_interval(s.rules.missile_damage, join(p, "missile_damage"));
  }
}

void parse_assets(const json& list, Scenario& s) {
  if (!list.is_array() || list.empty()) throw ValidationError("assets", "expected a non-empty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = index("assets", i);
    const json& j = list[i];
    check_keys(j, p, {"id", "position", "heading", "speed", "max_speed", "max_turn", "health", "fuel", "weapons",
                      "countermeasures", "sensors"});
    AssetState a;
    a.id = required_string(j, "id", p);
    a.position = point(j, "position", p, {});
    a.heading = wrap_two_pi(number(j, "heading", p, 0.0));
    a.max_speed = number(j, "max_speed", p, a.max_speed);
    a.speed = number(j, "speed", p, 0.0);
    a.max_turn = number(j, "max_turn", p, a.max_turn);
    a.health = number(j, "health", p, 1.0);
    a.fuel = number(j, "fuel", p, a.fuel);
    a.weapons = integer(j, "weapons", p, 0);
    a.countermeasures = integer(j, "countermeasures", p, 0);
    positive(a.max_speed, join(p, "max_speed"));
    if (a.speed < 0.0 || a.speed > a.max_speed) throw ValidationError(join(p, "speed"), "must be in [0, max_speed]");
    positive(a.max_turn, join(p, "max_turn"));
    unit_interval(a.health, join(p, "health"));
    positive(a.fuel, join(p, "fuel"));
    if (a.weapons < 0) throw ValidationError(join(p, "weapons"), "must be >= 0");
    if (a.countermeasures < 0) throw ValidationError(join(p, "countermeasures"), "must be >= 0");
    if (!s.world.bounds.contains(a.position)) throw ValidationError(join(p, "position"), "outside world.bounds");

    SensorSuite suite;
    if (j.contains("sensors")) {
      const json& sj = j.at("sensors");
      const std::string sp = join(p, "sensors");
      check_keys(sj, sp, {"radar_range", "radar_noise_std", "rwr", "maws", "health_noise_std"});
      suite.radar_range = number(sj, "radar_range", sp, suite.radar_range);
      suite.radar_noise_std = number(sj, "radar_noise_std", sp, suite.radar_noise_std);
      suite.rwr_enabled = boolean(sj, "rwr", sp, true);
      suite.maws_enabled = boolean(sj, "maws", sp, true);
      suite.health_noise_std = number(sj, "health_noise_std", sp, 0.0);
      non_negative(suite.radar_range, join(sp, "radar_range"));
      non_negative(suite.radar_noise_std, join(sp, "radar_noise_std"));
      non_negative(suite.health_noise_std, join(sp, "health_noise_std"));
    }
    s.world.assets.push_back(std::move(a));
    s.sensors.push_back(suite);
  }
}

void parse_sams(const json& list, Scenario& s) {
  if (!list.is_array()) throw ValidationError("sam_sites", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = index("sam_sites", i);
    const json& j = list[i];
    check_keys(j, p, {"id", "position", "radar_range", "missile_speed", "missile_max_turn", "missile_lifetime",
                      "fuse_radius", "lock_ticks", "magazine"});
    SamSite m;
    m.id = required_string(j, "id", p);
    m.position = point(j, "position", p, {});
    m.radar_range = number(j, "radar_range", p, m.radar_range);
    m.missile_speed = number(j, "missile_speed", p, m.missile_speed);
    m.missile_max_turn = number(j, "missile_max_turn", p, m.missile_max_turn);
    m.missile_lifetime = integer(j, "missile_lifetime", p, m.missile_lifetime);
    m.fuse_radius = number(j, "fuse_radius", p, m.fuse_radius);
    m.lock_ticks = integer(j, "lock_ticks", p, m.lock_ticks);
    m.magazine = integer(j, "magazine", p, m.magazine);
    non_negative(m.radar_range, join(p, "radar_range"));
    positive(m.missile_speed, join(p, "missile_speed"));
    positive(m.missile_max_turn, join(p, "missile_max_turn"));
    if (m.missile_lifetime <= 0) throw ValidationError(join(p, "missile_lifetime"), "must be > 0");
    positive(m.fuse_radius, join(p, "fuse_radius"));
    if (m.lock_ticks <= 0) throw ValidationError(join(p, "lock_ticks"), "must be > 0");
    if (m.magazine < 0) throw ValidationError(join(p, "magazine"), "must be >= 0");
    s.world.sam_sites.push_back(std::move(m));
  }
}

void parse_hostiles(const json& list, Scenario& s) {
  if (!list.is_array()) throw ValidationError("hostiles", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = index("hostiles", i);
    const json& j = list[i];
    check_keys(j, p, {"id", "classification", "position", "heading", "speed", "max_turn", "engage_radius", "p_kill"});
    HostileState h;
    h.id = required_string(j, "id", p);
    h.classification = string(j, "classification", p, h.classification);
    h.position = point(j, "position", p, {});
    h.heading = wrap_two_pi(number(j, "heading", p, 0.0));
    h.speed = number(j, "speed", p, h.speed);
    h.max_turn = number(j, "max_turn", p, h.max_turn);
    h.engage_radius = number(j, "engage_radius", p, h.engage_radius);
    h.p_kill = number(j, "p_kill", p, h.p_kill);
    non_negative(h.speed, join(p, "speed"));
    positive(h.max_turn, join(p, "max_turn"));
    non_negative(h.engage_radius, join(p, "engage_radius"));
    unit_interval(h.p_kill, join(p, "p_kill"));
    s.world.hostiles.push_back(std::move(h));
  }
}

void parse_controllers(const json& j, Scenario& s) {
  const std::string path = "controllers";
  check_keys(j, path, {"enabled", "waypoint", "avoidance", "evasion", "targeting", "swarm"});
  auto& c = s.controllers;
  if (j.contains("enabled")) {
    const auto& list = array(j, "enabled", path);
    s.enabled.fill(false);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = index("controllers.enabled", i);
      if (!list[i].is_string()) throw ValidationError(p, "expected a controller id");
      auto it = std::find(kControllerIds.begin(), kControllerIds.end(), list[i].get<std::string>());
      if (it == kControllerIds.end()) throw ValidationError(p, "unknown controller id");
      s.enabled[static_cast<std::size_t>(it - kControllerIds.begin())] = true;
    }
  }
  if (j.contains("waypoint")) {
    const json& w = j.at("waypoint");
    const std::string p = "controllers.waypoint";
    check_keys(w, p, {"capture_radius", "gain"});
    c.waypoint.capture_radius = number(w, "capture_radius", p, c.waypoint.capture_radius);
    c.waypoint.gain = number(w, "gain", p, c.waypoint.gain);
    positive(c.waypoint.capture_radius, join(p, "capture_radius"));
    positive(c.waypoint.gain, join(p, "gain"));
  }
  if (j.contains("avoidance")) {
    const json& a = j.at("avoidance");
    const std::string p = "controllers.avoidance";
    check_keys(a, p, {"horizon", "cell_size", "margin", "gain", "terminate_vibration"});
    c.avoidance.horizon = number(a, "horizon", p, c.avoidance.horizon);
    c.avoidance.cell_size = number(a, "cell_size", p, c.avoidance.cell_size);
    c.avoidance.margin = number(a, "margin", p, c.avoidance.margin);
    c.avoidance.gain = number(a, "gain", p, c.avoidance.gain);
    c.avoidance.terminate_vibration = number(a, "terminate_vibration", p, c.avoidance.terminate_vibration);
    positive(c.avoidance.horizon, join(p, "horizon"));
    positive(c.avoidance.cell_size, join(p, "cell_size"));
    non_negative(c.avoidance.margin, join(p, "margin"));
    positive(c.avoidance.gain, join(p, "gain"));
    unit_interval(c.avoidance.terminate_vibration, join(p, "terminate_vibration"));
  }
  if (j.contains("evasion")) {
    const json& e = j.at("evasion");
    const std::string p = "controllers.evasion";
    check_keys(e, p, {"rwr_gain", "rwr_confidence"});
    c.evasion.rwr_gain = number(e, "rwr_gain", p, c.evasion.rwr_gain);
    c.evasion.rwr_confidence = number(e, "rwr_confidence", p, c.evasion.rwr_confidence);
    positive(c.evasion.rwr_gain, join(p, "rwr_gain"));
    unit_interval(c.evasion.rwr_confidence, join(p, "rwr_confidence"));
  }
  if (j.contains("targeting")) {
    const json& t = j.at("targeting");
    const std::string p = "controllers.targeting";
    check_keys(t, p, {"weapon_range", "new_target_priority", "threat_classes", "gain"});
    c.targeting.weapon_range = number(t, "weapon_range", p, c.targeting.weapon_range);
    c.targeting.new_target_priority = number(t, "new_target_priority", p, c.targeting.new_target_priority);
    c.targeting.gain = number(t, "gain", p, c.targeting.gain);
    if (t.contains("threat_classes")) {
      c.targeting.threat_classes.clear();
      const auto& list = array(t, "threat_classes", p);
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (!list[i].is_string()) throw ValidationError(index(join(p, "threat_classes"), i), "expected a string");
        c.targeting.threat_classes.insert(list[i].get<std::string>());
      }
    }
    non_negative(c.targeting.weapon_range, join(p, "weapon_range"));
    unit_interval(c.targeting.new_target_priority, join(p, "new_target_priority"));
    positive(c.targeting.gain, join(p, "gain"));
  }
  if (j.contains("swarm")) {
    const json& w = j.at("swarm");
    const std::string p = "controllers.swarm";
    check_keys(w, p, {"ring_radius", "stale_ticks", "gain", "roles"});
    c.swarm.ring_radius = number(w, "ring_radius", p, c.swarm.ring_radius);
    c.swarm.stale_ticks = integer(w, "stale_ticks", p, c.swarm.stale_ticks);
    c.swarm.gain = number(w, "gain", p, c.swarm.gain);
    positive(c.swarm.ring_radius, join(p, "ring_radius"));
    if (c.swarm.stale_ticks < 0) throw ValidationError(join(p, "stale_ticks"), "must be >= 0");
    positive(c.swarm.gain, join(p, "gain"));
    const auto& roles = array(w, "roles", p);
    for (std::size_t i = 0; i < roles.size(); ++i) {
      const std::string rp = index(join(p, "roles"), i);
      check_keys(roles[i], rp, {"name", "priority", "angle"});
      c.swarm.roles.push_back(
          {required_string(roles[i], "name", rp), number(roles[i], "priority", rp, 0.0), number(roles[i], "angle", rp, 0.0)});
    }
  }
}

void parse_ensembler(const json& j, Scenario& s) {
  const std::string p = "ensembler";
  check_keys(j, p, {"hidden", "delta_max", "init_scale", "contact_slots", "map_slots"});
  auto& e = s.ensembler;
  const std::int64_t hidden = integer(j, "hidden", p, static_cast<std::int64_t>(e.hidden));
  const std::int64_t contacts = integer(j, "contact_slots", p, static_cast<std::int64_t>(e.contact_slots));
  const std::int64_t slots = integer(j, "map_slots", p, static_cast<std::int64_t>(e.map_slots));
  if (hidden <= 0) throw ValidationError(join(p, "hidden"), "must be > 0");
  if (contacts < 0) throw ValidationError(join(p, "contact_slots"), "must be >= 0");
  if (slots < 0) throw ValidationError(join(p, "map_slots"), "must be >= 0");
  e.hidden = static_cast<std::size_t>(hidden);
  e.contact_slots = static_cast<std::size_t>(contacts);
  e.map_slots = static_cast<std::size_t>(slots);
  e.delta_max = number(j, "delta_max", p, e.delta_max);
  e.init_scale = number(j, "init_scale", p, e.init_scale);
  non_negative(e.delta_max, join(p, "delta_max"));
  non_negative(e.init_scale, join(p, "init_scale"));
}

void parse_training(const json& j, Scenario& s) {
  const std::string p = "training";
  check_keys(j, p, {"iterations", "episodes_per_iteration", "learning_rate", "sigma", "epsilon", "baseline_decay",
                    "seed", "grad_clip", "baseline_personalities"});
  auto& t = s.training;
  t.iterations = integer(j, "iterations", p, t.iterations);
  t.episodes_per_iteration = integer(j, "episodes_per_iteration", p, t.episodes_per_iteration);
  t.learning_rate = number(j, "learning_rate", p, t.learning_rate);
  t.sigma = number(j, "sigma", p, t.sigma);
  t.epsilon = number(j, "epsilon", p, t.epsilon);
  t.baseline_decay = number(j, "baseline_decay", p, t.baseline_decay);
  const std::int64_t seed = integer(j, "seed", p, static_cast<std::int64_t>(t.seed));
  t.grad_clip = number(j, "grad_clip", p, t.grad_clip);
  t.baseline_personalities = integer(j, "baseline_personalities", p, t.baseline_personalities);
  if (t.iterations < 0) throw ValidationError(join(p, "iterations"), "must be >= 0");
  if (t.episodes_per_iteration <= 0) throw ValidationError(join(p, "episodes_per_iteration"), "must be > 0");
  positive(t.learning_rate, join(p, "learning_rate"));
  non_negative(t.sigma, join(p, "sigma"));
  unit_interval(t.epsilon, join(p, "epsilon"));
  if (!(t.baseline_decay >= 0.0 && t.baseline_decay < 1.0)) {
    throw ValidationError(join(p, "baseline_decay"), "must be in [0, 1)");
  }
  if (seed < 0) throw ValidationError(join(p, "seed"), "must be >= 0");
  t.seed = static_cast<std::uint64_t>(seed);
  non_negative(t.grad_clip, join(p, "grad_clip"));
  if (t.baseline_personalities <= 0) throw ValidationError(join(p, "baseline_personalities"), "must be > 0");
}

void parse_network(const json& j, Scenario& s) {
  const std::string p = "network";
  check_keys(j, p, {"drop_prob", "partitions", "seed", "secret"});
  auto& n = s.network;
  n.net.drop_prob = number(j, "drop_prob", p, 0.0);
  if (!(n.net.drop_prob >= 0.0 && n.net.drop_prob < 1.0)) throw ValidationError(join(p, "drop_prob"), "must be in [0, 1)");
  const std::int64_t seed = integer(j, "seed", p, 0);
  if (seed < 0) throw ValidationError(join(p, "seed"), "must be >= 0");
  n.net.seed = static_cast<std::uint64_t>(seed);
  n.secret = string(j, "secret", p, n.secret);
  const auto& parts = array(j, "partitions", p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string pp = index(join(p, "partitions"), i);
    check_keys(parts[i], pp, {"begin", "end", "groups"});
    PartitionWindow w;
    w.begin = integer(parts[i], "begin", pp, 0);
    w.end = integer(parts[i], "end", pp, 0);
    if (w.end < w.begin) throw ValidationError(join(pp, "end"), "must be >= begin");
    const auto& groups = array(parts[i], "groups", pp);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::string gp = index(join(pp, "groups"), g);
      if (!groups[g].is_array()) throw ValidationError(gp, "expected an array of asset ids");
      std::vector<std::string> ids;
      for (std::size_t k = 0; k < groups[g].size(); ++k) {
        if (!groups[g][k].is_string()) throw ValidationError(index(gp, k), "expected a string");
        ids.push_back(groups[g][k].get<std::string>());
      }
      w.groups.push_back(std::move(ids));
    }
    n.net.partitions.push_back(std::move(w));
  }
}

void cross_check(const Scenario& s) {
  std::set<std::string> ids;
  auto unique = [&](const std::string& id, const std::string& field) {
    if (!ids.insert(id).second) throw ValidationError(field, "duplicate id '" + id + "'");
  };
  for (std::size_t i = 0; i < s.world.assets.size(); ++i) unique(s.world.assets[i].id, index("assets", i) + ".id");
  for (std::size_t i = 0; i < s.world.sam_sites.size(); ++i) unique(s.world.sam_sites[i].id, index("sam_sites", i) + ".id");
  for (std::size_t i = 0; i < s.world.hostiles.size(); ++i) unique(s.world.hostiles[i].id, index("hostiles", i) + ".id");
  for (std::size_t i = 0; i < s.world.targets.size(); ++i) unique(s.world.targets[i].id, index("world.targets", i) + ".id");
  for (std::size_t i = 0; i < s.world.zones.size(); ++i) unique(s.world.zones[i].id, index("world.zones", i) + ".id");
  for (std::size_t i = 0; i < s.world.obstacles.size(); ++i) {
    unique(s.world.obstacles[i].id, index("world.obstacles", i) + ".id");
  }
  for (std::size_t i = 0; i < s.world.missiles.size(); ++i) {
    unique(s.world.missiles[i].id, index("world.missiles", i) + ".id");
    if (s.world.find_asset(s.world.missiles[i].target) == nullptr) {
      throw ValidationError(index("world.missiles", i) + ".target", "unknown asset");
    }
  }
  for (std::size_t i = 0; i < s.kills.size(); ++i) {
    if (s.world.find_asset(s.kills[i].asset) == nullptr) {
      throw ValidationError(index("world.events", i) + ".kill", "unknown asset");
    }
  }
  for (std::size_t i = 0; i < s.mission.target_list.size(); ++i) {
    const auto& id = s.mission.target_list[i].id;
    const bool known =
        std::any_of(s.world.targets.begin(), s.world.targets.end(), [&](const Entity& t) { return t.id == id; }) ||
        std::any_of(s.world.sam_sites.begin(), s.world.sam_sites.end(), [&](const SamSite& t) { return t.id == id; });
    if (!known) throw ValidationError(index("mission.targets", i) + ".id", "not a world target or SAM site");
  }
  for (std::size_t i = 0; i < s.mission.waypoints.size(); ++i) {
    if (!s.world.bounds.contains(s.mission.waypoints[i])) {
      throw ValidationError(index("mission.waypoints", i), "outside world.bounds");
    }
  }
}

std::string canonical_digest(const json& doc) {
  const std::string text = doc.dump();
  const Digest d = sha256({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  return to_hex(d);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario JSON: ") + e.what());
  }
  check_keys(doc, "", {"name", "world", "assets", "sam_sites", "hostiles", "mission", "controllers", "ensembler",
                       "training", "network"});
  Scenario s;
  s.name = string(doc, "name", "", "scenario");
  if (doc.contains("world")) parse_world(doc.at("world"), s);
  if (!doc.contains("assets")) throw ValidationError("assets", "required");
  parse_assets(doc.at("assets"), s);
  if (doc.contains("sam_sites")) parse_sams(doc.at("sam_sites"), s);
  if (doc.contains("hostiles")) parse_hostiles(doc.at("hostiles"), s);
  if (doc.contains("mission")) s.mission = detail::mission_from_json(doc.at("mission"), "mission");
  if (doc.contains("controllers")) parse_controllers(doc.at("controllers"), s);
  if (doc.contains("ensembler")) parse_ensembler(doc.at("ensembler"), s);
  if (doc.contains("training")) parse_training(doc.at("training"), s);
  if (doc.contains("network")) parse_network(doc.at("network"), s);
  cross_check(s);
  // Briefed targets carry the mission priority.
  for (auto& t : s.world.targets) {
    for (const auto& b : s.mission.target_list) {
      if (b.id == t.id) t.priority = b.priority;
    }
  }
  s.digest = canonical_digest(doc);
  return s;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_text_file(path)); }

}  // namespace autosim
