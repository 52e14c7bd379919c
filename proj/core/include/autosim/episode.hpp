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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autosim/actionfilter.hpp"
#include "autosim/corpus.hpp"
#include "autosim/ensembler.hpp"
#include "autosim/scenario.hpp"
#include "autosim/simworld.hpp"
#include "autosim/swarmledger.hpp"

namespace autosim {

struct EpisodeOptions {
  std::optional<Tick> max_ticks;  // overrides mission.max_ticks
  ExplorationParams explore;      // zero: deterministic forward pass
  std::uint64_t explore_seed = 0;
  bool record_policy = false;
  bool record_replay = false;
  // Called after each tick's sync round with the living assets' ledgers.
  std::function<void(Tick, const std::map<std::string, ChainSet>&)> on_ledger_sync;
};

struct AssetTick {
  std::string asset;
  ActionVector proposed;  // ensembler output before filtering
  ActionVector action;    // filtered
  std::vector<double> gates;
  std::size_t role = 0;
  bool retasked = false;
  std::vector<std::size_t> audit;  // indices into EpisodeResult::audit
};

struct TickTrace {
  Tick tick = 0;
  std::string world_digest;  // of the world before this tick's step
  std::vector<AssetTick> assets;
  UtilityReport utility;  // running value after the step
  std::vector<WorldEvent> events;
};

struct EpisodeResult {
  UtilityReport utility;
  EpisodeSummary summary;
  Tick ticks_used = 0;
  WorldState final_world;
  std::vector<AuditEntry> audit;
  std::vector<TickTrace> trace;
  std::vector<std::string> replay;  // JSON lines, when requested
  std::map<std::string, ChainSet> ledgers;
  std::map<std::string, CognitiveCorpus> corpora;
  std::map<std::string, PolicySequence> policy;
};

/// Parameters used when no personality is supplied.
EnsemblerParams default_params(const Scenario& scenario);

/// Random-init parameters for this scenario's dimensions.
EnsemblerParams random_params(const Scenario& scenario, std::uint64_t seed);

/// Runs one episode to termination. Deterministic per (scenario, params,
/// seed, options). Throws DimensionError if params do not fit the scenario.
EpisodeResult run_episode(const Scenario& scenario, const EnsemblerParams& params, std::uint64_t seed,
                          const EpisodeOptions& options = {});

/// SHA-256 hex over a canonical binary encoding of the world.
std::string world_digest(const WorldState& world);

/// Ledger dump built from each author's own chain.
LedgerDump ledger_dump(const EpisodeResult& result);

/// Audit trail as JSON lines, one entry per line in filter order.
std::string audit_jsonl(const std::vector<AuditEntry>& audit);

}  // namespace autosim
