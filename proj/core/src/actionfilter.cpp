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

#include "autosim/actionfilter.hpp"

#include <algorithm>
#include <optional>

namespace autosim {

namespace {

double clamp_sym(double v, double limit) {
  if (!std::isfinite(v)) return 0.0;
  return std::clamp(v, -limit, limit);
}

double clamp_speed(double v, double limit) {
  if (!std::isfinite(v)) return 0.0;
  return std::clamp(v, 0.0, limit);
}

// Reason the action breaks its constraint rule, if it does.
std::optional<std::string> rule_violation(const DiscreteAction& a, const ConstraintSet& c, const StateMap& map,
                                          const Stores& stores) {
  auto known_target = [&](const std::string& id) -> const Entity* {
    const Entity* e = map.find(id);
    return e != nullptr && e->kind == EntityKind::kTarget ? e : nullptr;
  };
  switch (a.kind) {
    case ActionKind::kEngageWeaponSystem: {
      if (!c.weapons_free) return "weapons-hold";
      if (c.no_strike_ids.contains(a.target_id)) return "no-strike";
      const Entity* t = known_target(a.target_id);
      if (t == nullptr) return "unknown-target";
      if (t->neutralized) return "target-neutralized";
      if (stores.weapons <= 0) return "no-weapons";
      return std::nullopt;
    }
    case ActionKind::kEngageCountermeasures:
      if (stores.countermeasures <= c.min_countermeasures_reserve) return "countermeasure-reserve";
      return std::nullopt;
    case ActionKind::kChangeCourse:
      if (a.path.empty()) return "empty-path";
      if (path_violates_geofence(map.self().position, a.path, c.geofence)) return "geofence";
      return std::nullopt;
    case ActionKind::kAddNewTarget:
      if (c.no_strike_ids.contains(a.entity.id)) return "no-strike";
      return std::nullopt;
    case ActionKind::kUpdateMissionAchievement:
    case ActionKind::kDeprioritizeTarget:
      if (known_target(a.target_id) == nullptr) return "unknown-target";
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPassed:
      return "passed";
    case Verdict::kClamped:
      return "clamped";
    case Verdict::kRejected:
      return "rejected";
  }
  return "unknown";
}

ProvenanceResult check_provenance(const DiscreteAction& action, std::span<const SensorRecord> justifications) {
  ProvenanceViolation v{action.kind, {}, {}};
  for (const auto& r : justifications) {
    if (PermissionMatrix::permits(action.kind, r.category)) return ProvenanceOk{};
    if (std::find(v.seen.begin(), v.seen.end(), r.category) == v.seen.end()) v.seen.push_back(r.category);
  }
  v.reason = std::string(to_string(action.kind)) + " not permitted by {";
  for (std::size_t i = 0; i < v.seen.size(); ++i) {
    if (i) v.reason += ",";
    v.reason += to_string(v.seen[i]);
  }
  v.reason += "}";
  return v;
}

ActionVector clamp_continuous(ActionVector action, const ConstraintSet& c) {
  action.continuous.heading_rate = clamp_sym(action.continuous.heading_rate, c.max_heading_rate);
  action.continuous.speed_cmd = clamp_speed(action.continuous.speed_cmd, c.max_speed_cmd);
  return action;
}

bool path_violates_geofence(Vec2 start, std::span<const Vec2> path, std::span<const Circle> geofence) {
  Vec2 from = start;
  for (Vec2 to : path) {
    for (const auto& circle : geofence) {
      if (segment_intersects_circle(from, to, circle.center, circle.radius)) return true;
    }
    from = to;
  }
  return false;
}

FilterResult filter(const ActionVector& action, const BusSnapshot& snapshot, const ConstraintSet& c,
                    const StateMap& map, const Stores& stores, const std::string& asset) {
  FilterResult out;
  const Tick tick = snapshot.tick();
  out.action = clamp_continuous(action, c);
  out.action.discrete.clear();

  {
    AuditEntry e{tick, asset, "Continuous", Verdict::kPassed, "", {}};
    std::string clamped;
    if (out.action.continuous.heading_rate != action.continuous.heading_rate) clamped += "heading_rate";
    if (out.action.continuous.speed_cmd != action.continuous.speed_cmd) {
      clamped += clamped.empty() ? "speed_cmd" : ",speed_cmd";
    }
    if (!clamped.empty()) {
      e.verdict = Verdict::kClamped;
      e.reason = clamped;
    }
    out.audit.push_back(std::move(e));
  }

  for (const auto& emitted : action.discrete) {
    AuditEntry e{tick, asset, std::string(to_string(emitted.action.kind)), Verdict::kPassed, "",
                 emitted.justifications};
    std::vector<SensorRecord> records;
    for (auto id : emitted.justifications) {
      if (const SensorRecord* r = snapshot.find(id)) records.push_back(*r);
    }
    const ProvenanceResult provenance = check_provenance(emitted.action, records);
    if (records.empty()) {
      e.verdict = Verdict::kRejected;
      e.reason = "no-justification";
    } else if (const auto* v = std::get_if<ProvenanceViolation>(&provenance)) {
      e.verdict = Verdict::kRejected;
      e.reason = "provenance: " + v->reason;
    } else if (auto why = rule_violation(emitted.action, c, map, stores)) {
      e.verdict = Verdict::kRejected;
      e.reason = *why;
    } else {
      out.action.discrete.push_back(emitted);
    }
    out.audit.push_back(std::move(e));
  }
  return out;
}

}  // namespace autosim
