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


#include "autosim/simworld.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace autosim {

const AssetState* WorldState::find_asset(const std::string& id) const {
  auto it = std::find_if(assets.begin(), assets.end(), [&](const AssetState& a) { return a.id == id; });
  return it == assets.end() ? nullptr : &*it;
}

AssetState* WorldState::find_asset(const std::string& id) {
  auto it = std::find_if(assets.begin(), assets.end(), [&](const AssetState& a) { return a.id == id; });
  return it == assets.end() ? nullptr : &*it;
}

namespace {

Vec2 unit(double heading) { return {std::cos(heading), std::sin(heading)}; }

Vec2 clamp_to(Box b, Vec2 p) { return {std::clamp(p.x, b.min.x, b.max.x), std::clamp(p.y, b.min.y, b.max.y)}; }

// Turns `heading` toward `desired` by at most `max_turn`.
double turn_toward(double heading, double desired, double max_turn) {
  const double err = wrap_pi(desired - heading);
  return wrap_two_pi(heading + std::clamp(err, -max_turn, max_turn));
}

bool draw(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::vector<std::size_t> id_order(const std::vector<AssetState>& assets) {
  std::vector<std::size_t> order(assets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return assets[a].id < assets[b].id; });
  return order;
}

void kill(AssetState& a, Tick tick) {
  a.alive = false;
  a.speed = 0.0;
  a.death_tick = tick;
}

}  // namespace

StepResult step(const WorldState& world, const std::map<std::string, ActionVector>& actions, const WorldRules& rules,
                Rng& rng) {
  StepResult out{world, {}};
  WorldState& w = out.world;
  const Tick now = world.tick;
  const Tick next = world.tick + 1;
  auto event = [&](std::string kind, std::string subject, std::string object = {}) {
    out.events.push_back({now, std::move(kind), std::move(subject), std::move(object)});
  };

  const auto order = id_order(w.assets);
  for (std::size_t i : order) {
    AssetState& a = w.assets[i];
    a.countermeasures_fired = false;
    if (!a.alive || a.mission_terminated) continue;
    auto it = actions.find(a.id);
    if (it == actions.end()) throw PreconditionError("step: no action for living asset '" + a.id + "'");
    const ActionVector& act = it->second;

    if (act.has(ActionKind::kTerminateMission)) {
      a.mission_terminated = true;
      a.speed = 0.0;
      a.turn_fraction = 0.0;
      event("terminate", a.id);
      continue;
    }
    for (const auto& e : act.discrete) {
      if (e.action.kind == ActionKind::kEngageCountermeasures && a.countermeasures > 0 && !a.countermeasures_fired) {
        --a.countermeasures;
        a.countermeasures_fired = true;
        event("countermeasures", a.id);
      }
      if (e.action.kind == ActionKind::kEngageWeaponSystem && a.weapons > 0) {
        --a.weapons;
        const std::string& tid = e.action.target_id;
        Vec2 where;
        bool* neutral = nullptr;
        for (auto& t : w.targets) {
          if (t.id == tid && !t.neutralized) {
            where = t.position;
            neutral = &t.neutralized;
          }
        }
        for (auto& s : w.sam_sites) {
          if (s.id == tid && !s.neutralized) {
            where = s.position;
            neutral = &s.neutralized;
          }
        }
        if (neutral != nullptr && distance(where, a.position) <= rules.weapon_range && draw(rng, rules.p_hit)) {
          *neutral = true;
          event("hit", a.id, tid);
          for (auto& t : w.targets) {
            if (t.id == tid) t.last_update_tick = next;
          }
        } else {
          event("miss", a.id, tid);
        }
      }
    }

    const double hr = std::isfinite(act.continuous.heading_rate) ? std::clamp(act.continuous.heading_rate, -1.0, 1.0)
                                                                 : 0.0;
    const double sc =
        std::isfinite(act.continuous.speed_cmd) ? std::clamp(act.continuous.speed_cmd, 0.0, 1.0) : 0.0;
    a.turn_fraction = hr;
    a.heading = wrap_two_pi(a.heading + hr * a.max_turn);
    a.speed = sc * a.max_speed;
    a.position = clamp_to(w.bounds, a.position + unit(a.heading) * a.speed);
    a.fuel -= sc;
    if (a.fuel <= 0.0) {
      a.fuel = 0.0;
      kill(a, next);
      event("fuel_out", a.id);
      continue;
    }
    for (const auto& o : w.obstacles) {
      if (distance(a.position, o.area.center) <= o.area.radius) {
        kill(a, next);
        event("collision", a.id, o.id);
        break;
      }
    }
  }

  auto nearest_asset = [&](Vec2 from) -> AssetState* {
    AssetState* best = nullptr;
    double best_d = 0.0;
    for (std::size_t i : order) {
      AssetState& a = w.assets[i];
      if (!a.alive) continue;
      const double d = distance(from, a.position);
      if (best == nullptr || d < best_d) {
        best = &a;
        best_d = d;
      }
    }
    return best;
  };

  for (auto& h : w.hostiles) {
    if (!h.alive) continue;
    AssetState* prey = nearest_asset(h.position);
    if (prey == nullptr) continue;
    const Vec2 d = prey->position - h.position;
    h.heading = turn_toward(h.heading, std::atan2(d.y, d.x), h.max_turn);
    const Vec2 before = h.position;
    h.position = clamp_to(w.bounds, h.position + unit(h.heading) * h.speed);
    if (segment_intersects_circle(before, h.position, prey->position, h.engage_radius) && draw(rng, h.p_kill)) {
      kill(*prey, next);
      event("kill", h.id, prey->id);
    }
  }

  std::vector<Missile> flying;
  for (auto& m : w.missiles) {
    AssetState* target = w.find_asset(m.target);
    if (target == nullptr || !target->alive) {
      event("expire", m.id, m.target);
      continue;
    }
    const double speed = m.velocity.norm();
    const Vec2 d = target->position - m.position;
    const double heading = turn_toward(std::atan2(m.velocity.y, m.velocity.x), std::atan2(d.y, d.x), m.max_turn);
    m.velocity = unit(heading) * speed;
    const Vec2 before = m.position;
    m.position = m.position + m.velocity;
    if (segment_intersects_circle(before, m.position, target->position, m.fuse_radius)) {
      const double p = rules.p_kill * (target->countermeasures_fired ? 0.5 : 1.0);
      if (draw(rng, p)) {
        kill(*target, next);
        event("kill", m.id, target->id);
      } else {
        target->health = std::max(0.0, target->health - rules.missile_damage);
        event("damage", m.id, target->id);
        if (target->health <= 0.0) {
          kill(*target, next);
          event("kill", m.id, target->id);
        }
      }
      continue;
    }
    if (--m.ticks_left <= 0) {
      event("expire", m.id, m.target);
      continue;
    }
    flying.push_back(std::move(m));
  }
  w.missiles = std::move(flying);

  for (auto& sam : w.sam_sites) {
    if (sam.neutralized) {
      sam.lock_progress.clear();
      continue;
    }
    for (std::size_t i : order) {
      const AssetState& a = w.assets[i];
      if (!a.alive || distance(a.position, sam.position) > sam.radar_range) {
        sam.lock_progress.erase(a.id);
        continue;
      }
      const bool in_flight = std::any_of(w.missiles.begin(), w.missiles.end(), [&](const Missile& m) {
        return m.launcher == sam.id && m.target == a.id;
      });
      if (in_flight) continue;
      auto& progress = sam.lock_progress[a.id];
      if (++progress < sam.lock_ticks || sam.magazine <= 0) continue;
      progress = 0;
      --sam.magazine;
      Missile m;
      m.id = "m" + std::to_string(w.missiles_launched++);
      m.launcher = sam.id;
      m.position = sam.position;
      const Vec2 d = a.position - sam.position;
      m.velocity = unit(std::atan2(d.y, d.x)) * sam.missile_speed;
      m.target = a.id;
      m.fuse_radius = sam.fuse_radius;
      m.max_turn = sam.missile_max_turn;
      m.ticks_left = sam.missile_lifetime;
      event("launch", sam.id, a.id);
      w.missiles.push_back(std::move(m));
    }
  }

  w.tick = next;
  return out;
}

UtilityReport compute_utility(const EpisodeSummary& s, const MissionPlan& plan, const WorldRules& rules) {
  auto frac = [](double num, double den) { return den > 0.0 ? std::clamp(num / den, 0.0, 1.0) : 1.0; };
  UtilityReport r;
  auto& c = r.components;
  c.targets_frac = frac(static_cast<double>(s.primary_targets_neutralized), static_cast<double>(plan.target_list.size()));
  c.waypoints_frac = frac(static_cast<double>(s.waypoints_captured), static_cast<double>(s.waypoints_total));
  c.survival_frac = frac(static_cast<double>(s.surviving_assets), static_cast<double>(s.initial_assets));
  const double r0 = rules.rejection_normalizer > 0.0 ? rules.rejection_normalizer : 1.0;
  c.constraint_score = 1.0 - std::min(1.0, static_cast<double>(s.audit_rejections) / r0);
  c.time_frac = plan.max_ticks > 0 ? std::clamp(static_cast<double>(s.ticks_used) / static_cast<double>(plan.max_ticks),
                                                0.0, 1.0)
                                   : 0.0;
  const auto& w = plan.weights;
  r.total = w.targets * c.targets_frac + w.waypoints * c.waypoints_frac + w.survival * c.survival_frac +
            w.constraints * c.constraint_score - w.time * c.time_frac;
  return r;
}

std::size_t count_primary_neutralized(const WorldState& world, const MissionPlan& plan) {
  std::size_t n = 0;
  for (const auto& brief : plan.target_list) {
    bool done = std::any_of(world.targets.begin(), world.targets.end(),
                            [&](const Entity& t) { return t.id == brief.id && t.neutralized; });
    done = done || std::any_of(world.sam_sites.begin(), world.sam_sites.end(),
                               [&](const SamSite& s) { return s.id == brief.id && s.neutralized; });
    n += done ? 1 : 0;
  }
  return n;
}

}  // namespace autosim
