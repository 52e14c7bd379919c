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


#include "autosim/corpus.hpp"

#include "autosim/scenario.hpp"
#include "json_util.hpp"

namespace autosim {

using detail::json;

void corpus_record_performance(CognitiveCorpus& corpus, Tick tick, const UtilityReport& report) {
  if (!corpus.performance_log.empty() && tick <= corpus.performance_log.back().tick) {
    throw PreconditionError("corpus_record_performance: tick " + std::to_string(tick) + " not after " +
                            std::to_string(corpus.performance_log.back().tick));
  }
  corpus.performance_log.push_back({tick, report});
}

std::string corpus_to_json(const CognitiveCorpus& corpus) {
  json entities = json::array();
  for (const auto& [id, e] : corpus.state_map.entities()) entities.push_back(detail::to_json(e));
  json log = json::array();
  for (const auto& p : corpus.performance_log) log.push_back({{"tick", p.tick}, {"report", detail::to_json(p.report)}});
  json personalities = json::array();
  for (const auto& p : corpus.personalities) {
    personalities.push_back({{"id", p.id},
                             {"mission_type", p.mission_type},
                             {"scenario_digest", p.scenario_digest},
                             {"final_mean_utility", p.final_mean_utility}});
  }
  json doc{{"mission", detail::to_json(corpus.mission)},
           {"state_map",
            {{"own_id", corpus.state_map.own_id()}, {"tick", corpus.state_map.tick()}, {"entities", entities}}},
           {"constraints", detail::to_json(corpus.constraints)},
           {"performance_log", log},
           {"personalities", personalities}};
  return doc.dump(2) + "\n";
}

CognitiveCorpus corpus_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed corpus JSON: ") + e.what());
  }
  detail::check_keys(doc, "", {"mission", "state_map", "constraints", "performance_log", "personalities"});
  if (!doc.contains("state_map")) throw ValidationError("state_map", "required");
  const json& sm = doc.at("state_map");
  detail::check_keys(sm, "state_map", {"own_id", "tick", "entities"});
  const std::string own = detail::required_string(sm, "own_id", "state_map");
  const Tick tick = detail::integer(sm, "tick", "state_map", 0);
  const auto& list = detail::array(sm, "entities", "state_map");

  std::vector<Entity> entities;
  const Entity* self = nullptr;
  for (std::size_t i = 0; i < list.size(); ++i) {
    entities.push_back(detail::entity_from_json(list[i], detail::index("state_map.entities", i)));
  }
  for (const auto& e : entities) {
    if (e.kind == EntityKind::kSelfAsset && e.id == own) self = &e;
  }
  if (self == nullptr) throw ValidationError("state_map.entities", "no SelfAsset entity for own_id");
  StateMap map(own, *self, tick);
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (&entities[i] == self) continue;
    if (entities[i].last_update_tick > tick) {
      throw ValidationError(detail::index("state_map.entities", i) + ".last_update_tick", "after state_map.tick");
    }
    map.upsert(entities[i]);
  }

  CognitiveCorpus corpus(std::move(map));
  if (doc.contains("mission")) corpus.mission = detail::mission_from_json(doc.at("mission"), "mission");
  if (doc.contains("constraints")) corpus.constraints = detail::constraints_from_json(doc.at("constraints"), "constraints");
  const auto& log = detail::array(doc, "performance_log", "");
  for (std::size_t i = 0; i < log.size(); ++i) {
    const std::string p = detail::index("performance_log", i);
    detail::check_keys(log[i], p, {"tick", "report"});
    if (!log[i].contains("report")) throw ValidationError(p + ".report", "required");
    const Tick t = detail::integer(log[i], "tick", p, 0);
    if (!corpus.performance_log.empty() && t <= corpus.performance_log.back().tick) {
      throw ValidationError(p + ".tick", "must be strictly increasing");
    }
    corpus.performance_log.push_back({t, detail::utility_from_json(log[i].at("report"), p + ".report")});
  }
  const auto& ps = detail::array(doc, "personalities", "");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string p = detail::index("personalities", i);
    detail::check_keys(ps[i], p, {"id", "mission_type", "scenario_digest", "final_mean_utility"});
    corpus.personalities.push_back({detail::required_string(ps[i], "id", p), detail::string(ps[i], "mission_type", p, {}),
                                    detail::string(ps[i], "scenario_digest", p, {}),
                                    detail::number(ps[i], "final_mean_utility", p, 0.0)});
  }
  return corpus;
}

void save_corpus(const CognitiveCorpus& corpus, const std::string& path) { write_text_file(path, corpus_to_json(corpus)); }

CognitiveCorpus load_corpus(const std::string& path) { return corpus_from_json(read_text_file(path)); }

}  // namespace autosim
