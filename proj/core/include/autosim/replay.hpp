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


// Reader for the line-delimited replay log written by run_episode, and the
// metrics table derived from it.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "autosim/statemap.hpp"
#include "autosim/world.hpp"

namespace autosim {

class ReplayParseError : public std::runtime_error {
 public:
  ReplayParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ReplayAsset {
  std::string id;
  double heading_rate = 0.0;
  double speed_cmd = 0.0;
  std::vector<std::string> discrete;  // filtered action kinds
  std::vector<double> gates;
  std::size_t role = 0;
  std::vector<std::size_t> audit;
};

struct ReplayTick {
  Tick tick = 0;
  std::string world_digest;
  UtilityReport utility;
  std::vector<ReplayAsset> assets;
  std::vector<std::string> events;  // "kind subject object"
};

struct ReplayLog {
  std::string scenario;
  std::string digest;
  std::uint64_t seed = 0;
  std::vector<std::string> controllers;
  std::vector<ReplayTick> ticks;
  std::optional<UtilityReport> final_utility;
};

/// Throws ReplayParseError naming the 1-based line.
ReplayLog parse_replay(std::string_view text);

/// CSV header: tick,asset,targets_frac,waypoints_frac,survival_frac,
/// constraint_score,time_frac,total,gate_<controller>... One row per asset
/// per tick within [from, to].
std::string metrics_csv(const ReplayLog& log, std::optional<Tick> from = std::nullopt,
                        std::optional<Tick> to = std::nullopt);

}  // namespace autosim
