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


#include "autosim/episode.hpp"

#include <algorithm>

#include "autosim/bytes.hpp"
#include "autosim/controllers.hpp"
#include "json_util.hpp"

namespace autosim {

using detail::json;

namespace {

struct AssetRuntime {
  std::size_t index = 0;
  EnsemblerState hidden;
  std::vector<Vec2> active_path;
  std::size_t next_waypoint = 0;
  std::optional<std::size_t> role;
};

Entity self_entity(const AssetState& a, Tick tick) {
  Entity e;
  e.id = a.id;
  e.kind = EntityKind::kSelfAsset;
  e.position = a.position;
  e.velocity = Vec2{std::cos(a.heading), std::sin(a.heading)} * a.speed;
  e.heading = a.heading;
  e.classification = "ucav";
  e.last_update_tick = tick;
  e.author = a.id;
  return e;
}

StateMap initial_map(const Scenario& s, const AssetState& own) {
  StateMap map(own.id, self_entity(own, 0), 0);
  auto brief = [&](Entity e) {
    e.author = "brief";
    e.last_update_tick = 0;
    map.upsert(std::move(e));
  };
  for (const auto& t : s.mission.target_list) {
    for (const auto& wt : s.world.targets) {
      if (wt.id != t.id) continue;
      Entity e = wt;
      e.kind = EntityKind::kTarget;
      e.priority = t.priority;
      e.neutralized = false;
      brief(std::move(e));
    }
    for (const auto& sam : s.world.sam_sites) {
      if (sam.id != t.id) continue;
      Entity e;
      e.id = sam.id;
      e.kind = EntityKind::kTarget;
      e.position = sam.position;
      e.classification = "SAM";
      e.priority = t.priority;
      brief(std::move(e));
    }
  }
  for (const auto& z : s.world.zones) {
    Entity e;
    e.id = z.id;
    e.kind = EntityKind::kNoFlyZone;
    e.position = z.area.center;
    e.radius = z.area.radius;
    brief(std::move(e));
  }
  for (std::size_t i = 0; i < s.mission.waypoints.size(); ++i) {
    Entity e;
    e.id = "wp" + std::to_string(i);
    e.kind = EntityKind::kWaypoint;
    e.position = s.mission.waypoints[i];
    brief(std::move(e));
  }
  for (const auto& a : s.world.assets) {
    if (a.id == own.id) continue;
    Entity e = self_entity(a, 0);
    e.kind = EntityKind::kAllied;
    map.upsert(std::move(e));
  }
  return map;
}

// Folds this tick's contact reports into the asset's map; returns touched ids.
void integrate_contacts(StateMap& map, const BusSnapshot& snapshot, std::vector<std::string>& touched) {
  for (const SensorRecord* r : snapshot.of_type<ContactReport>()) {
    const auto& c = std::get<ContactReport>(r->payload);
    const Vec2 vel = Vec2{std::cos(c.heading), std::sin(c.heading)} * c.speed;
    const Entity* known = map.find(c.track_id);
    if (c.type == EntityKind::kAllied || c.type == EntityKind::kHostile) {
      Entity e;
      if (known != nullptr && known->kind == EntityKind::kTarget) {
        e = *known;
      } else {
        e.id = c.track_id;
        e.kind = c.type;
        e.classification = c.classification;
      }
      e.position = c.position;
      e.velocity = vel;
      e.heading = c.heading;
      map.write_local(std::move(e));
      touched.push_back(c.track_id);
    } else if (c.type == EntityKind::kTarget && known != nullptr && known->kind == EntityKind::kTarget) {
      Entity e = *known;
      e.position = c.position;
      map.write_local(std::move(e));
      touched.push_back(c.track_id);
    }
  }
}

ControllerProposal disabled(std::size_t k) {
  ControllerProposal p;
  p.controller_id = std::string(kControllerIds[k]);
  return p;
}

void encode_world(ByteWriter& w, const WorldState& world) {
  w.i64(world.tick);
  w.u32(static_cast<std::uint32_t>(world.assets.size()));
  for (const auto& a : world.assets) {
    w.str(a.id);
    w.f64(a.position.x);
    w.f64(a.position.y);
    w.f64(a.heading);
    w.f64(a.speed);
    w.f64(a.health);
    w.f64(a.fuel);
    w.i64(a.weapons);
    w.i64(a.countermeasures);
    w.u8(a.alive ? 1 : 0);
    w.u8(a.mission_terminated ? 1 : 0);
  }
  w.u32(static_cast<std::uint32_t>(world.hostiles.size()));
  for (const auto& h : world.hostiles) {
    w.str(h.id);
    w.f64(h.position.x);
    w.f64(h.position.y);
    w.f64(h.heading);
    w.u8(h.alive ? 1 : 0);
  }
  w.u32(static_cast<std::uint32_t>(world.sam_sites.size()));
  for (const auto& s : world.sam_sites) {
    w.str(s.id);
    w.i64(s.magazine);
    w.u8(s.neutralized ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(s.lock_progress.size()));
    for (const auto& [id, n] : s.lock_progress) {
      w.str(id);
      w.i64(n);
    }
  }
  w.u32(static_cast<std::uint32_t>(world.missiles.size()));
  for (const auto& m : world.missiles) {
    w.str(m.id);
    w.f64(m.position.x);
    w.f64(m.position.y);
    w.f64(m.velocity.x);
    w.f64(m.velocity.y);
    w.str(m.target);
    w.i64(m.ticks_left);
  }
  w.u32(static_cast<std::uint32_t>(world.targets.size()));
  for (const auto& t : world.targets) {
    w.str(t.id);
    w.u8(t.neutralized ? 1 : 0);
  }
}

json action_json(const ActionVector& a) {
  json discrete = json::array();
  for (const auto& e : a.discrete) {
    json d{{"kind", std::string(to_string(e.action.kind))}, {"controllers", e.controllers},
           {"justifications", e.justifications}};
    if (!e.action.target_id.empty()) d["target"] = e.action.target_id;
    if (!e.action.entity.id.empty()) d["entity"] = e.action.entity.id;
    if (!e.action.path.empty()) {
      json path = json::array();
      for (auto p : e.action.path) path.push_back(detail::to_json(p));
      d["path"] = path;
    }
    discrete.push_back(std::move(d));
  }
  return json{{"heading_rate", a.continuous.heading_rate}, {"speed_cmd", a.continuous.speed_cmd},
              {"discrete", discrete}};
}

json audit_json(const AuditEntry& e, std::size_t index) {
  return json{{"type", "audit"},
              {"index", index},
              {"tick", e.tick},
              {"asset", e.asset},
              {"action", e.action},
              {"verdict", std::string(to_string(e.verdict))},
              {"reason", e.reason},
              {"justifications", e.justifications}};
}

}  // namespace

EnsemblerParams default_params(const Scenario& s) {
  return confidence_gated_params(s.input_size(), s.env_layout().length(), kNumControllers, s.ensembler.hidden);
}

EnsemblerParams random_params(const Scenario& s, std::uint64_t seed) {
  return init_params(seed, s.ensembler.hidden, kNumControllers, s.input_size(), s.ensembler.init_scale,
                     s.ensembler.delta_max);
}

std::string world_digest(const WorldState& world) {
  ByteWriter w;
  encode_world(w, world);
  return to_hex(sha256(w.data()));
}

LedgerDump ledger_dump(const EpisodeResult& result) {
  LedgerDump dump;
  for (const auto& [id, chains] : result.ledgers) {
    if (const auto* own = chains.chain(id)) dump[id] = *own;
  }
  return dump;
}

EpisodeResult run_episode(const Scenario& s, const EnsemblerParams& params, std::uint64_t seed,
                          const EpisodeOptions& options) {
  if (params.dims().d_in != s.input_size() || params.dims().n_controllers != kNumControllers) {
    throw DimensionError("personality input width " + std::to_string(params.dims().d_in) +
                         " does not match scenario input width " + std::to_string(s.input_size()));
  }
  EpisodeResult result;
  WorldState world = s.world;
  const MissionPlan& mission = s.mission;
  const Tick max_ticks = options.max_ticks.value_or(mission.max_ticks);
  const EnvLayout env_layout = s.env_layout();
  const MapEncodingLayout map_layout = s.map_layout();
  const KeyRing keys{s.network.secret};
  const bool exploring = options.explore.sigma > 0.0 || options.explore.epsilon > 0.0;

  std::vector<std::string> roster;
  for (const auto& a : world.assets) roster.push_back(a.id);
  std::sort(roster.begin(), roster.end());

  std::map<std::string, AssetRuntime> runtime;
  for (std::size_t i = 0; i < world.assets.size(); ++i) {
    const AssetState& a = world.assets[i];
    AssetRuntime rt;
    rt.index = i;
    rt.hidden = EnsemblerState::zeros(params.dims().d_h);
    rt.active_path = mission.waypoints;
    runtime.emplace(a.id, std::move(rt));
    CognitiveCorpus corpus(initial_map(s, a));
    corpus.mission = mission;
    corpus.constraints = mission.constraints;
    result.corpora.emplace(a.id, std::move(corpus));
    result.ledgers.emplace(a.id, ChainSet{});
  }

  if (options.record_replay) {
    result.replay.push_back(json{{"type", "header"},
                                 {"scenario", s.name},
                                 {"digest", s.digest},
                                 {"seed", seed},
                                 {"assets", roster},
                                 {"controllers", std::vector<std::string>(kControllerIds.begin(), kControllerIds.end())},
                                 {"max_ticks", max_ticks}}
                                .dump());
  }

  std::int64_t rejections = 0;
  auto summarize = [&](Tick ticks_used) {
    EpisodeSummary sum;
    sum.initial_assets = world.assets.size();
    for (const auto& a : world.assets) sum.surviving_assets += a.alive ? 1 : 0;
    sum.primary_targets_neutralized = count_primary_neutralized(world, mission);
    for (const auto& [id, rt] : runtime) sum.waypoints_captured += rt.next_waypoint;
    sum.waypoints_total = mission.waypoints.size() * world.assets.size();
    sum.audit_rejections = rejections;
    sum.ticks_used = ticks_used;
    return sum;
  };
  auto objectives_met = [&]() {
    if (count_primary_neutralized(world, mission) < mission.target_list.size()) return false;
    for (const auto& a : world.assets) {
      if (a.alive && !a.mission_terminated && runtime.at(a.id).next_waypoint < mission.waypoints.size()) return false;
    }
    return true;
  };

  Tick t = 0;
  for (;; ++t) {
    for (const auto& k : s.kills) {
      if (k.tick != t) continue;
      AssetState* a = world.find_asset(k.asset);
      if (a != nullptr && a->alive) {
        a->alive = false;
        a->speed = 0.0;
        a->death_tick = t;
      }
    }
    const bool any_active = std::any_of(world.assets.begin(), world.assets.end(),
                                        [](const AssetState& a) { return a.alive && !a.mission_terminated; });
    if (t >= max_ticks || !any_active || objectives_met()) break;

    TickTrace trace;
    trace.tick = t;
    if (options.record_replay) trace.world_digest = world_digest(world);
    std::map<std::string, ActionVector> actions;

    for (const auto& id : roster) {
      AssetRuntime& rt = runtime.at(id);
      const AssetState& self = world.assets[rt.index];
      if (!self.alive || self.mission_terminated) continue;
      CognitiveCorpus& corpus = result.corpora.at(id);
      StateMap& map = corpus.state_map;

      Rng sense_rng = make_rng(seed, Stream::kSense, static_cast<std::uint64_t>(t), rt.index);
      const BusSnapshot snapshot = publish(sense(world, id, s.sensors[rt.index], sense_rng));

      map.set_tick(t);
      std::vector<std::string> touched{id};
      {
        Entity me = self_entity(self, t);
        for (const SensorRecord* r : snapshot.of_type<NavReport>()) me.position = std::get<NavReport>(r->payload).position_estimate;
        map.write_local(std::move(me));
      }
      integrate_contacts(map, snapshot, touched);

      std::vector<Vec2> remaining(mission.waypoints.begin() + static_cast<long>(rt.next_waypoint), mission.waypoints.end());
      ControllerInputs in{self, snapshot, map, mission, rt.active_path, remaining, roster, rt.role, world.bounds};
      std::vector<ControllerProposal> proposals = run_controllers(in, s.controllers);
      for (std::size_t k = 0; k < kNumControllers; ++k) {
        if (!s.enabled[k]) proposals[k] = disabled(k);
      }
      const SwarmDecision swarm = swarm_decide({self, map, snapshot, roster, rt.role, remaining}, s.controllers.swarm);

      const std::vector<double> env = build_env_vector(snapshot, env_layout);
      const std::vector<double> map_vec = encode_state_map(map, map_layout);
      ForwardResult fr;
      if (exploring || options.record_policy) {
        Rng explore_rng = make_rng(options.explore_seed, Stream::kExplore, static_cast<std::uint64_t>(t), rt.index);
        PolicyStep step;
        fr = stochastic_forward(params, rt.hidden, env, proposals, map_vec, options.explore, explore_rng,
                                options.record_policy ? &step : nullptr);
        if (options.record_policy) result.policy[id].push_back(std::move(step));
      } else {
        fr = forward(params, rt.hidden, env, proposals, map_vec);
      }
      rt.hidden = fr.state;

      FilterResult filtered =
          filter(fr.action, snapshot, mission.constraints, map, Stores{self.weapons, self.countermeasures}, id);
      AssetTick at;
      at.asset = id;
      at.proposed = fr.action;
      at.gates = fr.gates;
      at.role = swarm.role;
      at.retasked = swarm.retasked;
      for (auto& e : filtered.audit) {
        if (e.verdict == Verdict::kRejected) ++rejections;
        at.audit.push_back(result.audit.size());
        result.audit.push_back(std::move(e));
      }

      for (const auto& e : filtered.action.discrete) {
        const DiscreteAction& a = e.action;
        switch (a.kind) {
          case ActionKind::kChangeCourse:
            rt.active_path = a.path;
            break;
          case ActionKind::kAddObstacle:
          case ActionKind::kAddNewTarget:
            map.write_local(a.entity);
            touched.push_back(a.entity.id);
            break;
          case ActionKind::kDeprioritizeTarget:
          case ActionKind::kUpdateMissionAchievement:
            if (const Entity* known = map.find(a.target_id)) {
              Entity edit = *known;
              if (a.kind == ActionKind::kDeprioritizeTarget) {
                edit.priority = 0.0;
              } else {
                edit.neutralized = true;
              }
              map.write_local(std::move(edit));
              touched.push_back(a.target_id);
            }
            break;
          default:
            break;
        }
      }
      rt.role = swarm.role;

      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      std::vector<Entity> payload;
      for (const auto& tid : touched) {
        if (const Entity* e = map.find(tid)) payload.push_back(*e);
      }
      result.ledgers.at(id).append(id, std::move(payload), t, keys.key(id));

      actions.emplace(id, filtered.action);
      at.action = std::move(filtered.action);
      trace.assets.push_back(std::move(at));
    }

    if (world.assets.size() > 1) {
      std::map<std::string, ChainSet> live;
      for (const auto& a : world.assets) {
        if (a.alive) live.emplace(a.id, std::move(result.ledgers.at(a.id)));
      }
      for (const auto& delivery : sync_round(live, keys, s.network.net, t)) {
        StateMap& map = result.corpora.at(delivery.receiver).state_map;
        for (const auto& b : delivery.blocks) {
          for (const auto& e : b.payload) map.upsert(e);
        }
      }
      if (options.on_ledger_sync) options.on_ledger_sync(t, live);
      for (auto& [id, chains] : live) result.ledgers.at(id) = std::move(chains);
    }

    Rng step_rng = make_rng(seed, Stream::kStep, static_cast<std::uint64_t>(t));
    StepResult stepped = step(world, actions, s.rules, step_rng);
    world = std::move(stepped.world);
    trace.events = std::move(stepped.events);

    for (const auto& id : roster) {
      AssetRuntime& rt = runtime.at(id);
      const AssetState& a = world.assets[rt.index];
      if (!a.alive) continue;
      const double capture = s.controllers.waypoint.capture_radius;
      while (rt.next_waypoint < mission.waypoints.size() &&
             distance(a.position, mission.waypoints[rt.next_waypoint]) <= capture) {
        ++rt.next_waypoint;
      }
      while (!rt.active_path.empty() && distance(a.position, rt.active_path.front()) <= capture) {
        rt.active_path.erase(rt.active_path.begin());
      }
    }

    trace.utility = compute_utility(summarize(t + 1), mission, s.rules);
    for (const auto& at : trace.assets) corpus_record_performance(result.corpora.at(at.asset), t, trace.utility);

    if (options.record_replay) {
      json assets = json::array();
      for (const auto& at : trace.assets) {
        assets.push_back({{"id", at.asset},
                          {"proposed", action_json(at.proposed)},
                          {"action", action_json(at.action)},
                          {"gates", at.gates},
                          {"role", at.role},
                          {"retasked", at.retasked},
                          {"audit", at.audit}});
      }
      json events = json::array();
      for (const auto& e : trace.events) {
        events.push_back({{"kind", e.kind}, {"subject", e.subject}, {"object", e.object}});
      }
      result.replay.push_back(json{{"type", "tick"},
                                   {"tick", t},
                                   {"world", trace.world_digest},
                                   {"assets", assets},
                                   {"utility", detail::to_json(trace.utility)},
                                   {"events", events}}
                                  .dump());
    }
    result.trace.push_back(std::move(trace));
  }

  result.ticks_used = t;
  result.summary = summarize(t);
  result.utility = compute_utility(result.summary, mission, s.rules);
  result.final_world = world;
  if (options.record_replay) {
    result.replay.push_back(json{{"type", "summary"},
                                 {"ticks_used", t},
                                 {"world", world_digest(world)},
                                 {"utility", detail::to_json(result.utility)}}
                                .dump());
  }
  return result;
}

std::string audit_jsonl(const std::vector<AuditEntry>& audit) {
  std::string out;
  for (std::size_t i = 0; i < audit.size(); ++i) out += audit_json(audit[i], i).dump() + "\n";
  return out;
}

}  // namespace autosim
