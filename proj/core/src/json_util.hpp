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


// Internal JSON helpers shared by the scenario, corpus and replay codecs.

#pragma once

#include <cmath>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "autosim/common.hpp"
#include "autosim/statemap.hpp"
#include "autosim/world.hpp"

namespace autosim::detail {

using nlohmann::json;

inline std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path.empty() ? "<root>" : path, "expected an object");
}

inline void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  require_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ValidationError(join(path, it.key()), "unknown field");
  }
}

inline double number(const json& j, std::string_view key, const std::string& path, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) throw ValidationError(join(path, key), "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ValidationError(join(path, key), "must be finite");
  return v;
}

inline std::int64_t integer(const json& j, std::string_view key, const std::string& path, std::int64_t fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) throw ValidationError(join(path, key), "expected an integer");
  return it->get<std::int64_t>();
}

inline bool boolean(const json& j, std::string_view key, const std::string& path, bool fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw ValidationError(join(path, key), "expected a boolean");
  return it->get<bool>();
}

inline std::string string(const json& j, std::string_view key, const std::string& path, std::string fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) throw ValidationError(join(path, key), "expected a string");
  return it->get<std::string>();
}

inline std::string required_string(const json& j, std::string_view key, const std::string& path) {
  if (!j.contains(key)) throw ValidationError(join(path, key), "required");
  std::string s = string(j, key, path, {});
  if (s.empty()) throw ValidationError(join(path, key), "must be non-empty");
  return s;
}

inline Vec2 point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(path, "expected [x, y]");
  }
  Vec2 v{j[0].get<double>(), j[1].get<double>()};
  if (!v.finite()) throw ValidationError(path, "must be finite");
  return v;
}

inline Vec2 point(const json& j, std::string_view key, const std::string& path, Vec2 fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return point(*it, join(path, key));
}

inline const json& array(const json& j, std::string_view key, const std::string& path) {
  static const json kEmpty = json::array();
  auto it = j.find(key);
  if (it == j.end()) return kEmpty;
  if (!it->is_array()) throw ValidationError(join(path, key), "expected an array");
  return *it;
}

inline json to_json(Vec2 v) { return json::array({v.x, v.y}); }

inline json to_json(const Entity& e) {
  return json{{"id", e.id},
              {"kind", std::string(to_string(e.kind))},
              {"position", to_json(e.position)},
              {"velocity", to_json(e.velocity)},
              {"heading", e.heading},
              {"classification", e.classification},
              {"priority", e.priority},
              {"neutralized", e.neutralized},
              {"last_update_tick", e.last_update_tick},
              {"author", e.author},
              {"radius", e.radius}};
}

inline Entity entity_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"id", "kind", "position", "velocity", "heading", "classification", "priority", "neutralized",
                       "last_update_tick", "author", "radius"});
  Entity e;
  e.id = required_string(j, "id", path);
  const auto kind = entity_kind_from_string(string(j, "kind", path, "Hostile"));
  if (!kind) throw ValidationError(join(path, "kind"), "unknown entity kind");
  e.kind = *kind;
  e.position = point(j, "position", path, {});
  e.velocity = point(j, "velocity", path, {});
  e.heading = number(j, "heading", path, 0.0);
  e.classification = string(j, "classification", path, {});
  e.priority = number(j, "priority", path, 0.0);
  e.neutralized = boolean(j, "neutralized", path, false);
  e.last_update_tick = integer(j, "last_update_tick", path, 0);
  e.author = string(j, "author", path, {});
  e.radius = number(j, "radius", path, 0.0);
  return e;
}

inline json to_json(const ConstraintSet& c) {
  json fence = json::array();
  for (const auto& g : c.geofence) fence.push_back({{"center", to_json(g.center)}, {"radius", g.radius}});
  return json{{"max_speed_cmd", c.max_speed_cmd},
              {"max_heading_rate", c.max_heading_rate},
              {"geofence", fence},
              {"no_strike", c.no_strike_ids},
              {"weapons_free", c.weapons_free},
              {"min_countermeasures_reserve", c.min_countermeasures_reserve}};
}

inline ConstraintSet constraints_from_json(const json& j, const std::string& path) {
  check_keys(j, path,
             {"max_speed_cmd", "max_heading_rate", "geofence", "no_strike", "weapons_free", "min_countermeasures_reserve"});
  ConstraintSet c;
  c.max_speed_cmd = number(j, "max_speed_cmd", path, 1.0);
  c.max_heading_rate = number(j, "max_heading_rate", path, 1.0);
  const auto& fence = array(j, "geofence", path);
  for (std::size_t i = 0; i < fence.size(); ++i) {
    const std::string p = index(join(path, "geofence"), i);
    check_keys(fence[i], p, {"center", "radius"});
    c.geofence.push_back({point(fence[i], "center", p, {}), number(fence[i], "radius", p, 0.0)});
  }
  const auto& ns = array(j, "no_strike", path);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!ns[i].is_string()) throw ValidationError(index(join(path, "no_strike"), i), "expected a string");
    c.no_strike_ids.insert(ns[i].get<std::string>());
  }
  c.weapons_free = boolean(j, "weapons_free", path, true);
  c.min_countermeasures_reserve = integer(j, "min_countermeasures_reserve", path, 0);
  validate(c, path);
  return c;
}

inline json to_json(const UtilityComponents& c) {
  return json{{"targets_frac", c.targets_frac},
              {"waypoints_frac", c.waypoints_frac},
              {"survival_frac", c.survival_frac},
              {"constraint_score", c.constraint_score},
              {"time_frac", c.time_frac}};
}

inline json to_json(const UtilityReport& r) { return json{{"components", to_json(r.components)}, {"total", r.total}}; }

inline UtilityReport utility_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"components", "total"});
  UtilityReport r;
  if (!j.contains("components")) throw ValidationError(join(path, "components"), "required");
  const json& c = j.at("components");
  const std::string cp = join(path, "components");
  check_keys(c, cp, {"targets_frac", "waypoints_frac", "survival_frac", "constraint_score", "time_frac"});
  r.components.targets_frac = number(c, "targets_frac", cp, 0.0);
  r.components.waypoints_frac = number(c, "waypoints_frac", cp, 0.0);
  r.components.survival_frac = number(c, "survival_frac", cp, 0.0);
  r.components.constraint_score = number(c, "constraint_score", cp, 1.0);
  r.components.time_frac = number(c, "time_frac", cp, 0.0);
  r.total = number(j, "total", path, 0.0);
  return r;
}

inline json to_json(const MissionPlan& m) {
  json wps = json::array();
  for (auto w : m.waypoints) wps.push_back(to_json(w));
  json targets = json::array();
  for (const auto& t : m.target_list) targets.push_back({{"id", t.id}, {"priority", t.priority}});
  return json{{"type", m.mission_type},
              {"waypoints", wps},
              {"targets", targets},
              {"weights",
               {{"targets", m.weights.targets},
                {"waypoints", m.weights.waypoints},
                {"survival", m.weights.survival},
                {"constraints", m.weights.constraints},
                {"time", m.weights.time}}},
              {"constraints", to_json(m.constraints)},
              {"max_ticks", m.max_ticks}};
}

inline MissionPlan mission_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"type", "waypoints", "targets", "weights", "constraints", "max_ticks"});
  MissionPlan m;
  m.mission_type = string(j, "type", path, "generic");
  const auto& wps = array(j, "waypoints", path);
  for (std::size_t i = 0; i < wps.size(); ++i) m.waypoints.push_back(point(wps[i], index(join(path, "waypoints"), i)));
  const auto& ts = array(j, "targets", path);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string p = index(join(path, "targets"), i);
    check_keys(ts[i], p, {"id", "priority"});
    TargetBrief b{required_string(ts[i], "id", p), number(ts[i], "priority", p, 1.0)};
    if (b.priority < 0.0 || b.priority > 1.0) throw ValidationError(join(p, "priority"), "must be in [0, 1]");
    m.target_list.push_back(std::move(b));
  }
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    const std::string p = join(path, "weights");
    check_keys(w, p, {"targets", "waypoints", "survival", "constraints", "time"});
    m.weights.targets = number(w, "targets", p, 1.0);
    m.weights.waypoints = number(w, "waypoints", p, 1.0);
    m.weights.survival = number(w, "survival", p, 1.0);
    m.weights.constraints = number(w, "constraints", p, 1.0);
    m.weights.time = number(w, "time", p, 1.0);
    for (auto [name, v] : {std::pair{"targets", m.weights.targets}, {"waypoints", m.weights.waypoints},
                           {"survival", m.weights.survival}, {"constraints", m.weights.constraints},
                           {"time", m.weights.time}}) {
      if (v < 0.0) throw ValidationError(join(p, name), "must be >= 0");
    }
  }
  if (j.contains("constraints")) m.constraints = constraints_from_json(j.at("constraints"), join(path, "constraints"));
  m.max_ticks = integer(j, "max_ticks", path, 200);
  if (m.max_ticks <= 0) throw ValidationError(join(path, "max_ticks"), "must be > 0");
  return m;
}

}  // namespace autosim::detail
