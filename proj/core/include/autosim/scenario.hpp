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
#include <cstdint>
#include <string>
#include <vector>

#include "autosim/controllers.hpp"
#include "autosim/sensorbus.hpp"
#include "autosim/statemap.hpp"
#include "autosim/swarmledger.hpp"
#include "autosim/world.hpp"

namespace autosim {

struct EnsemblerConfig {
  std::size_t hidden = 16;
  double delta_max = 0.25;
  double init_scale = 0.5;
  std::size_t contact_slots = 4;
  std::size_t map_slots = 2;
};

struct TrainConfig {
  std::int64_t iterations = 300;
  std::int64_t episodes_per_iteration = 8;
  double learning_rate = 0.05;
  double sigma = 0.1;
  double epsilon = 0.1;
  double baseline_decay = 0.9;
  std::uint64_t seed = 42;
  double grad_clip = 10.0;  // max L2 norm of one update; 0 disables
  std::int64_t baseline_personalities = 50;
};

struct NetworkConfig {
  NetSim net;
  std::string secret = "autosim";
};

struct Scenario {
  std::string name;
  WorldState world;
  WorldRules rules;
  std::vector<SensorSuite> sensors;  // aligned with world.assets
  std::vector<ScriptedKill> kills;
  MissionPlan mission;
  ControllerConfig controllers;
  std::array<bool, kNumControllers> enabled{true, true, true, true, true};
  EnsemblerConfig ensembler;
  TrainConfig training;
  NetworkConfig network;
  std::string digest;  // SHA-256 hex of the canonical scenario document

  [[nodiscard]] EnvLayout env_layout() const;
  [[nodiscard]] MapEncodingLayout map_layout() const;
  [[nodiscard]] std::size_t input_size() const;
};

/// Missing or unreadable input file.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates a scenario document. Throws ParseError for malformed
/// JSON and ValidationError naming the field path for invalid content.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

std::string read_text_file(const std::string& path);
std::vector<std::uint8_t> read_binary_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);
void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace autosim
