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

#include <string>
#include <string_view>
#include <vector>

#include "autosim/constraints.hpp"
#include "autosim/statemap.hpp"
#include "autosim/world.hpp"

namespace autosim {

struct PerformanceEntry {
  Tick tick = 0;
  UtilityReport report;
};

/// Registry entry for a personality the asset can load.
struct PersonalityRecord {
  std::string id;
  std::string mission_type;
  std::string scenario_digest;
  double final_mean_utility = 0.0;
};

/// Per-asset store of the mission plan, world picture, constraints,
/// performance history and known personalities.
struct CognitiveCorpus {
  explicit CognitiveCorpus(StateMap map) : state_map(std::move(map)) {}

  MissionPlan mission;
  StateMap state_map;
  ConstraintSet constraints;
  std::vector<PerformanceEntry> performance_log;
  std::vector<PersonalityRecord> personalities;
};

/// Appends to the performance log. Throws PreconditionError unless `tick` is
/// greater than the last recorded tick.
void corpus_record_performance(CognitiveCorpus& corpus, Tick tick, const UtilityReport& report);

std::string corpus_to_json(const CognitiveCorpus& corpus);
/// Throws ParseError or ValidationError.
CognitiveCorpus corpus_from_json(std::string_view text);

void save_corpus(const CognitiveCorpus& corpus, const std::string& path);
CognitiveCorpus load_corpus(const std::string& path);

}  // namespace autosim
