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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "autosim/common.hpp"
#include "autosim/statemap.hpp"
#include "autosim/world.hpp"

namespace autosim {

enum class SensorCategory : std::uint8_t {
  kHealth = 0,
  kPerformance,
  kNavigation,
  kEnvironmentalMapping,
};
inline constexpr std::size_t kNumSensorCategories = 4;

std::string_view to_string(SensorCategory c);

/// Semantic radar track: what the object is and how it moves, not the echo.
struct ContactReport {
  std::string track_id;
  EntityKind type = EntityKind::kHostile;
  Vec2 position;
  double speed = 0.0;
  double heading = 0.0;
  std::string classification;
  bool neutralized = false;
  double radius = 0.0;
  bool operator==(const ContactReport&) const = default;
};

struct HealthReport {
  double engine_vibration = 0.0;  // [0, 1]
  double temperature = 0.0;       // °C
  double pressure = 0.0;          // kPa
  bool operator==(const HealthReport&) const = default;
};

struct PerfReport {
  double velocity = 0.0;  // m/s
  double stress = 0.0;    // [0, 1]
  bool operator==(const PerfReport&) const = default;
};

struct NavReport {
  Vec2 position_estimate;
  Vec2 wind;
  bool attitude_ok = true;
  bool operator==(const NavReport&) const = default;
};

enum class WarningKind : std::uint8_t { kRwr = 0, kMaw };

struct WarningReport {
  WarningKind warning_kind = WarningKind::kRwr;
  double bearing = 0.0;  // relative to own heading, (-π, π]
  std::string emitter;   // SAM site or missile id
  bool operator==(const WarningReport&) const = default;
};

using SensorPayload = std::variant<ContactReport, HealthReport, PerfReport, NavReport, WarningReport>;

struct SensorRecord {
  std::uint64_t record_id = 0;
  Tick tick = 0;
  SensorCategory category = SensorCategory::kHealth;
  std::string source;
  SensorPayload payload;
  bool operator==(const SensorRecord&) const = default;
};

/// The category a payload type belongs to. sense() never emits anything else.
SensorCategory category_of(const SensorPayload& payload);

struct SensorSuite {
  double radar_range = 5000.0;
  double radar_noise_std = 0.0;
  bool rwr_enabled = true;
  bool maws_enabled = true;
  double health_noise_std = 0.0;
};

/// Records for one asset at the world's current tick: Health, Perf, Nav first,
/// then RWR, MAW and contact reports. Throws PreconditionError for a dead or
/// unknown asset.
std::vector<SensorRecord> sense(const WorldState& world, const std::string& asset_id,
                                const SensorSuite& suite, Rng& rng);

/// Immutable, record_id-ordered view of one tick's records. Copies share the
/// same underlying list.
class BusSnapshot {
 public:
  BusSnapshot() : records_(std::make_shared<const std::vector<SensorRecord>>()) {}

  [[nodiscard]] Tick tick() const { return tick_; }
  [[nodiscard]] std::span<const SensorRecord> records() const { return *records_; }
  [[nodiscard]] std::size_t size() const { return records_->size(); }
  [[nodiscard]] const SensorRecord* find(std::uint64_t record_id) const;

  template <typename T>
  [[nodiscard]] std::vector<const SensorRecord*> of_type() const {
    std::vector<const SensorRecord*> out;
    for (const auto& r : *records_) {
      if (std::holds_alternative<T>(r.payload)) out.push_back(&r);
    }
    return out;
  }

 private:
  friend BusSnapshot publish(std::vector<SensorRecord> records);
  Tick tick_ = 0;
  std::shared_ptr<const std::vector<SensorRecord>> records_;
};

/// Throws PreconditionError on mixed ticks or duplicate record ids.
BusSnapshot publish(std::vector<SensorRecord> records);

struct EnvLayout {
  static constexpr std::size_t kHealthFields = 3;
  static constexpr std::size_t kPerfFields = 2;
  static constexpr std::size_t kNavFields = 4;
  static constexpr std::size_t kWarningFlags = 2;
  static constexpr std::size_t kContactFields = 6;

  std::size_t contact_slots = 4;
  Box bounds{{0.0, 0.0}, {10000.0, 10000.0}};
  double contact_range_scale = 5000.0;  // meters mapped to 1.0
  double speed_scale = 100.0;           // m/s mapped to 1.0

  [[nodiscard]] std::size_t length() const {
    return kHealthFields + kPerfFields + kNavFields + kWarningFlags + contact_slots * kContactFields;
  }
};

/// Fixed-length environment vector:
/// [vibration, temperature/150, pressure/100, velocity/speed_scale, stress,
///  x, y, wind/speed_scale, attitude_ok, rwr, maw, C × contact slots].
/// Contact slot: [present, dx, dy, speed, hostile, neutralized], nearest first.
std::vector<double> build_env_vector(const BusSnapshot& snapshot, const EnvLayout& layout);

}  // namespace autosim
