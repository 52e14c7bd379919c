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
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "autosim/common.hpp"

namespace autosim {

using Tick = std::int64_t;

enum class EntityKind : std::uint8_t {
  kSelfAsset = 0,
  kAllied,
  kHostile,
  kTarget,
  kNoFlyZone,
  kObstacle,
  kWaypoint,
};
inline constexpr std::size_t kNumEntityKinds = 7;

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> entity_kind_from_string(std::string_view name);

/// One object in an asset's world picture.
struct Entity {
  std::string id;
  EntityKind kind = EntityKind::kHostile;
  Vec2 position;
  Vec2 velocity;
  double heading = 0.0;  // radians, [0, 2π)
  std::string classification;
  double priority = 0.0;  // [0, 1]
  bool neutralized = false;
  Tick last_update_tick = 0;
  std::string author;
  // Extent of zones and obstacles; zero for point contacts.
  double radius = 0.0;

  bool operator==(const Entity&) const = default;
};

/// Total order over entity contents, used to break exact (tick, author) ties.
bool content_less(const Entity& a, const Entity& b);

class InvalidObservation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-asset world model. Value type; snapshots are shared read-only.
class StateMap {
 public:
  StateMap(std::string own_id, Entity self, Tick tick = 0);

  [[nodiscard]] const std::string& own_id() const { return own_id_; }
  [[nodiscard]] Tick tick() const { return tick_; }
  [[nodiscard]] const std::map<std::string, Entity>& entities() const { return entities_; }
  [[nodiscard]] const Entity& self() const;
  [[nodiscard]] const Entity* find(std::string_view id) const;
  [[nodiscard]] std::size_t size() const { return entities_.size(); }

  void set_tick(Tick tick);

  /// Last-writer-wins upsert keyed on (last_update_tick, author). Returns true
  /// when the map changed. A SelfAsset record from another writer is stored as
  /// Allied; records about this asset written by others are ignored.
  bool upsert(Entity obs);

  /// Unconditional write by the owning asset at the current tick. Used for
  /// several same-tick edits to one entity before they are published.
  void write_local(Entity e);

  bool operator==(const StateMap&) const = default;

 private:
  std::string own_id_;
  Tick tick_ = 0;
  std::map<std::string, Entity> entities_;
};

StateMap upsert_entity(StateMap map, const Entity& obs);

/// Nearest-K-per-kind fixed-slot encoding layout.
struct MapEncodingLayout {
  static constexpr std::size_t kFieldsPerSlot = 7;

  std::size_t per_kind_slots = 2;
  Box normalization{{0.0, 0.0}, {10000.0, 10000.0}};
  double velocity_scale = 100.0;  // m/s mapped to 1.0

  [[nodiscard]] std::size_t length() const {
    return kNumEntityKinds * per_kind_slots * kFieldsPerSlot;
  }
};

/// Slot order within a kind block is (distance to SelfAsset, id); each slot is
/// [present, x, y, vx, vy, priority, neutralized] with x, y mapped to [-1, 1].
std::vector<double> encode_state_map(const StateMap& map, const MapEncodingLayout& layout);

/// Up to k entities of `kind` ordered by (distance to origin, id). Neutralized
/// targets are skipped.
std::vector<Entity> query_nearest(const StateMap& map, EntityKind kind, Vec2 origin,
                                  std::size_t k);

}  // namespace autosim
