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

#include "autosim/sensorbus.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace autosim {

namespace {

constexpr std::array<std::string_view, kNumSensorCategories> kCategoryNames = {
    "Health", "Performance", "Navigation", "EnvironmentalMapping"};

double gauss(Rng& rng, double stddev) {
  if (!(stddev > 0.0)) return 0.0;
  std::normal_distribution<double> dist(0.0, stddev);
  return dist(rng);
}

double heading_of(Vec2 v) { return wrap_two_pi(std::atan2(v.y, v.x)); }

}  // namespace

std::string_view to_string(SensorCategory c) { return kCategoryNames.at(static_cast<std::size_t>(c)); }

SensorCategory category_of(const SensorPayload& payload) {
  struct Visitor {
    SensorCategory operator()(const ContactReport&) const { return SensorCategory::kEnvironmentalMapping; }
    SensorCategory operator()(const WarningReport&) const { return SensorCategory::kEnvironmentalMapping; }
    SensorCategory operator()(const HealthReport&) const { return SensorCategory::kHealth; }
    SensorCategory operator()(const PerfReport&) const { return SensorCategory::kPerformance; }
    SensorCategory operator()(const NavReport&) const { return SensorCategory::kNavigation; }
  };
  return std::visit(Visitor{}, payload);
}

const SensorRecord* BusSnapshot::find(std::uint64_t record_id) const {
  auto it = std::lower_bound(records_->begin(), records_->end(), record_id,
                             [](const SensorRecord& r, std::uint64_t id) { return r.record_id < id; });
  if (it == records_->end() || it->record_id != record_id) return nullptr;
  return &*it;
}

std::vector<SensorRecord> sense(const WorldState& world, const std::string& asset_id,
                                const SensorSuite& suite, Rng& rng) {
  const AssetState* self = world.find_asset(asset_id);
  if (self == nullptr || !self->alive) {
    throw PreconditionError("sense: asset '" + asset_id + "' is not alive");
  }
  std::vector<SensorRecord> out;
  std::uint64_t next_id = 0;
  auto emit = [&](std::string source, SensorPayload payload) {
    SensorRecord r;
    r.record_id = next_id++;
    r.tick = world.tick;
    r.category = category_of(payload);
    r.source = std::move(source);
    r.payload = std::move(payload);
    out.push_back(std::move(r));
  };

  const double speed_frac = self->max_speed > 0.0 ? self->speed / self->max_speed : 0.0;
  const double damage = 1.0 - self->health;

  HealthReport health;
  health.engine_vibration =
      std::clamp(0.2 * speed_frac + 0.8 * damage + gauss(rng, suite.health_noise_std), 0.0, 1.0);
  health.temperature = 60.0 + 30.0 * speed_frac + 100.0 * damage + 10.0 * gauss(rng, suite.health_noise_std);
  health.pressure = 101.3 - 20.0 * damage + 10.0 * gauss(rng, suite.health_noise_std);
  emit("engine", health);

  PerfReport perf;
  perf.velocity = self->speed;
  perf.stress = std::clamp(0.8 * std::abs(self->turn_fraction) + 0.2 * damage +
                               gauss(rng, suite.health_noise_std),
                           0.0, 1.0);
  emit("airframe", perf);

  NavReport nav;
  nav.position_estimate = self->position;
  nav.wind = world.wind;
  nav.attitude_ok = self->health >= 0.3;
  emit("ins", nav);

  if (suite.rwr_enabled) {
    const SamSite* nearest = nullptr;
    double best = 0.0;
    for (const auto& sam : world.sam_sites) {
      if (sam.neutralized) continue;
      const double d = distance(sam.position, self->position);
      if (d <= sam.radar_range && (nearest == nullptr || d < best)) {
        nearest = &sam;
        best = d;
      }
    }
    if (nearest != nullptr) {
      emit("rwr", WarningReport{WarningKind::kRwr, relative_bearing(self->position, self->heading, nearest->position),
                                nearest->id});
    }
  }
  if (suite.maws_enabled) {
    for (const auto& m : world.missiles) {
      if (m.target != asset_id) continue;
      emit("maws", WarningReport{WarningKind::kMaw, relative_bearing(self->position, self->heading, m.position), m.id});
    }
  }

  auto contact = [&](const std::string& id, EntityKind type, Vec2 pos, Vec2 vel, const std::string& cls,
                     bool neutralized, double radius) {
    if (distance(pos, self->position) > suite.radar_range) return;
    ContactReport c;
    c.track_id = id;
    c.type = type;
    c.position = {pos.x + gauss(rng, suite.radar_noise_std), pos.y + gauss(rng, suite.radar_noise_std)};
    c.speed = vel.norm();
    c.heading = heading_of(vel);
    c.classification = cls;
    c.neutralized = neutralized;
    c.radius = radius;
    emit("radar", std::move(c));
  };
  for (const auto& a : world.assets) {
    if (a.id == asset_id || !a.alive) continue;
    contact(a.id, EntityKind::kAllied, a.position, Vec2{std::cos(a.heading), std::sin(a.heading)} * a.speed,
            "allied", false, 0.0);
  }
  for (const auto& h : world.hostiles) {
    if (!h.alive) continue;
    contact(h.id, EntityKind::kHostile, h.position, Vec2{std::cos(h.heading), std::sin(h.heading)} * h.speed,
            h.classification, false, 0.0);
  }
  for (const auto& sam : world.sam_sites) {
    contact(sam.id, EntityKind::kHostile, sam.position, {}, "SAM", sam.neutralized, 0.0);
  }
  for (const auto& m : world.missiles) {
    contact(m.id, EntityKind::kHostile, m.position, m.velocity, "missile", false, 0.0);
  }
  for (const auto& t : world.targets) {
    contact(t.id, EntityKind::kTarget, t.position, t.velocity, t.classification, t.neutralized, t.radius);
  }
  for (const auto& o : world.obstacles) {
    contact(o.id, EntityKind::kObstacle, o.area.center, {}, "obstacle", false, o.area.radius);
  }
  return out;
}

BusSnapshot publish(std::vector<SensorRecord> records) {
  BusSnapshot snap;
  if (!records.empty()) {
    const Tick tick = records.front().tick;
    for (const auto& r : records) {
      if (r.tick != tick) throw PreconditionError("publish: records from mixed ticks");
    }
    snap.tick_ = tick;
  }
  std::sort(records.begin(), records.end(),
            [](const SensorRecord& a, const SensorRecord& b) { return a.record_id < b.record_id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].record_id == records[i - 1].record_id) {
      throw PreconditionError("publish: duplicate record id " + std::to_string(records[i].record_id));
    }
  }
  snap.records_ = std::make_shared<const std::vector<SensorRecord>>(std::move(records));
  return snap;
}

std::vector<double> build_env_vector(const BusSnapshot& snapshot, const EnvLayout& layout) {
  std::vector<double> out(layout.length(), 0.0);
  const double vscale = layout.speed_scale > 0.0 ? layout.speed_scale : 1.0;
  const double rscale = layout.contact_range_scale > 0.0 ? layout.contact_range_scale : 1.0;
  const Box& box = layout.bounds;
  auto norm = [](double v, double lo, double hi) {
    return hi > lo ? std::clamp(2.0 * (v - lo) / (hi - lo) - 1.0, -1.0, 1.0) : 0.0;
  };

  Vec2 own;
  std::vector<std::pair<double, const ContactReport*>> contacts;
  for (const auto& r : snapshot.records()) {
    if (const auto* h = std::get_if<HealthReport>(&r.payload)) {
      out[0] = h->engine_vibration;
      out[1] = h->temperature / 150.0;
      out[2] = h->pressure / 100.0;
    } else if (const auto* p = std::get_if<PerfReport>(&r.payload)) {
      out[3] = p->velocity / vscale;
      out[4] = p->stress;
    } else if (const auto* n = std::get_if<NavReport>(&r.payload)) {
      own = n->position_estimate;
      out[5] = norm(own.x, box.min.x, box.max.x);
      out[6] = norm(own.y, box.min.y, box.max.y);
      out[7] = n->wind.norm() / vscale;
      out[8] = n->attitude_ok ? 1.0 : 0.0;
    } else if (const auto* w = std::get_if<WarningReport>(&r.payload)) {
      out[w->warning_kind == WarningKind::kRwr ? 9 : 10] = 1.0;
    }
  }
  for (const auto& r : snapshot.records()) {
    if (const auto* c = std::get_if<ContactReport>(&r.payload)) {
      contacts.emplace_back(distance(own, c->position), c);
    }
  }
  std::stable_sort(contacts.begin(), contacts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->track_id < b.second->track_id;
  });
  const std::size_t base = EnvLayout::kHealthFields + EnvLayout::kPerfFields + EnvLayout::kNavFields +
                           EnvLayout::kWarningFlags;
  for (std::size_t slot = 0; slot < layout.contact_slots && slot < contacts.size(); ++slot) {
    const ContactReport& c = *contacts[slot].second;
    double* f = out.data() + base + slot * EnvLayout::kContactFields;
    f[0] = 1.0;
    f[1] = std::clamp((c.position.x - own.x) / rscale, -1.0, 1.0);
    f[2] = std::clamp((c.position.y - own.y) / rscale, -1.0, 1.0);
    f[3] = std::min(c.speed / vscale, 5.0);
    f[4] = c.type == EntityKind::kHostile ? 1.0 : 0.0;
    f[5] = c.neutralized ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace autosim
