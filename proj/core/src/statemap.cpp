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

#include "autosim/statemap.hpp"

#include <algorithm>
#include <tuple>

namespace autosim {

namespace {

constexpr std::array<std::string_view, kNumEntityKinds> kKindNames = {
    "SelfAsset", "Allied", "Hostile", "Target", "NoFlyZone", "Obstacle", "Waypoint"};

void normalize(Entity& e) {
  if (e.id.empty()) throw InvalidObservation("observation has empty id");
  if (!e.position.finite()) throw InvalidObservation("observation '" + e.id + "' has non-finite position");
  if (!e.velocity.finite() || !std::isfinite(e.heading) || !std::isfinite(e.priority) ||
      !std::isfinite(e.radius)) {
    throw InvalidObservation("observation '" + e.id + "' has non-finite fields");
  }
  if (e.last_update_tick < 0) throw InvalidObservation("observation '" + e.id + "' has negative tick");
  e.heading = wrap_two_pi(e.heading);
  e.priority = std::clamp(e.priority, 0.0, 1.0);
  e.radius = std::max(0.0, e.radius);
}

double norm_coord(double v, double lo, double hi) {
  return std::clamp(2.0 * (v - lo) / (hi - lo) - 1.0, -1.0, 1.0);
}

}  // namespace

std::string_view to_string(EntityKind kind) { return kKindNames.at(static_cast<std::size_t>(kind)); }

std::optional<EntityKind> entity_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<EntityKind>(i);
  }
  return std::nullopt;
}

bool content_less(const Entity& a, const Entity& b) {
  auto key = [](const Entity& e) {
    return std::tie(e.kind, e.position.x, e.position.y, e.velocity.x, e.velocity.y, e.heading,
                    e.classification, e.priority, e.neutralized, e.radius);
  };
  return key(a) < key(b);
}

StateMap::StateMap(std::string own_id, Entity self, Tick tick) : own_id_(std::move(own_id)), tick_(tick) {
  if (tick < 0) throw InvalidObservation("state map tick must be non-negative");
  self.id = own_id_;
  self.kind = EntityKind::kSelfAsset;
  if (self.author.empty()) self.author = own_id_;
  normalize(self);
  if (self.last_update_tick > tick_) tick_ = self.last_update_tick;
  entities_.emplace(own_id_, std::move(self));
}

const Entity& StateMap::self() const { return entities_.at(own_id_); }

const Entity* StateMap::find(std::string_view id) const {
  auto it = entities_.find(std::string(id));
  return it == entities_.end() ? nullptr : &it->second;
}

void StateMap::set_tick(Tick tick) {
  if (tick < tick_) throw InvalidObservation("state map tick cannot move backwards");
  tick_ = tick;
}

bool StateMap::upsert(Entity obs) {
  normalize(obs);
  if (obs.id == own_id_) {
    if (obs.author != own_id_) return false;
    obs.kind = EntityKind::kSelfAsset;
  } else if (obs.kind == EntityKind::kSelfAsset) {
    obs.kind = EntityKind::kAllied;
  }
  if (obs.last_update_tick > tick_) tick_ = obs.last_update_tick;

  auto it = entities_.find(obs.id);
  if (it == entities_.end()) {
    entities_.emplace(obs.id, std::move(obs));
    return true;
  }
  const Entity& cur = it->second;
  const auto obs_key = std::tie(obs.last_update_tick, obs.author);
  const auto cur_key = std::tie(cur.last_update_tick, cur.author);
  if (obs_key > cur_key || (obs_key == cur_key && content_less(cur, obs))) {
    it->second = std::move(obs);
    return true;
  }
  return false;
}

void StateMap::write_local(Entity e) {
  e.author = own_id_;
  e.last_update_tick = tick_;
  normalize(e);
  if (e.id == own_id_) e.kind = EntityKind::kSelfAsset;
  entities_.insert_or_assign(e.id, std::move(e));
}

StateMap upsert_entity(StateMap map, const Entity& obs) {
  map.upsert(obs);
  return map;
}

std::vector<Entity> query_nearest(const StateMap& map, EntityKind kind, Vec2 origin, std::size_t k) {
  std::vector<std::pair<double, const Entity*>> candidates;
  for (const auto& [id, e] : map.entities()) {
    if (e.kind != kind) continue;
    if (kind == EntityKind::kTarget && e.neutralized) continue;
    candidates.emplace_back(distance(origin, e.position), &e);
  }
  const std::size_t n = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n),
                    candidates.end(), [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first < b.first;
                      return a.second->id < b.second->id;
                    });
  std::vector<Entity> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(*candidates[i].second);
  return out;
}

std::vector<double> encode_state_map(const StateMap& map, const MapEncodingLayout& layout) {
  if (layout.normalization.degenerate()) {
    throw PreconditionError("encode_state_map: degenerate normalization box");
  }
  const Box& box = layout.normalization;
  const double vscale = layout.velocity_scale > 0.0 ? layout.velocity_scale : 1.0;
  const std::size_t k = layout.per_kind_slots;
  const Vec2 origin = map.self().position;

  std::vector<double> out(layout.length(), 0.0);
  std::array<std::vector<std::pair<double, const Entity*>>, kNumEntityKinds> by_kind;
  for (const auto& [id, e] : map.entities()) {
    by_kind[static_cast<std::size_t>(e.kind)].emplace_back(distance(origin, e.position), &e);
  }
  for (std::size_t kind = 0; kind < kNumEntityKinds; ++kind) {
    auto& list = by_kind[kind];
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second->id < b.second->id;
    });
    for (std::size_t slot = 0; slot < k && slot < list.size(); ++slot) {
      const Entity& e = *list[slot].second;
      double* f = out.data() + (kind * k + slot) * MapEncodingLayout::kFieldsPerSlot;
      f[0] = 1.0;
      f[1] = norm_coord(e.position.x, box.min.x, box.max.x);
      f[2] = norm_coord(e.position.y, box.min.y, box.max.y);
      f[3] = std::clamp(e.velocity.x / vscale, -1.0, 1.0);
      f[4] = std::clamp(e.velocity.y / vscale, -1.0, 1.0);
      f[5] = e.priority;
      f[6] = e.neutralized ? 1.0 : 0.0;
    }
  }
  return out;
}

}  // namespace autosim
