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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "autosim/ensembler.hpp"
#include "autosim/episode.hpp"
#include "autosim/scenario.hpp"

namespace autosim {

/// One stochastic episode: its return and the per-asset decision records
/// needed to recompute ∇ log π.
struct Trajectory {
  double ret = 0.0;
  std::vector<PolicySequence> sequences;  // per asset, roster order
};

struct RolloutResult {
  EpisodeResult episode;
  Trajectory trajectory;
};

/// run_episode with exploration noise. The episode seed is `seed`; noise is
/// drawn from the exploration stream derived from it.
RolloutResult rollout_stochastic(const Scenario& scenario, const EnsemblerParams& params,
                                 const ExplorationParams& explore, std::uint64_t seed);

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UpdateResult {
  EnsemblerParams params;
  double baseline = 0.0;
  double grad_norm = 0.0;  // before clipping
};

/// θ' = θ + lr·g with g = mean over the batch of (R − b)·∇ log π, and
/// b' = β·b + (1 − β)·mean R. `grad_clip` > 0 rescales g to at most that
/// norm. Throws TrainingError on a non-finite gradient and PreconditionError
/// on an empty batch.
UpdateResult reinforce_update(const EnsemblerParams& params, std::span<const Trajectory> batch, double baseline,
                              const ExplorationParams& explore, double learning_rate, double baseline_decay,
                              double grad_clip = 0.0);

/// Sum of ∇ log π over every sequence of a trajectory.
Eigen::VectorXd trajectory_log_prob_grad(const EnsemblerParams& params, const Trajectory& trajectory,
                                         const ExplorationParams& explore);

struct CurvePoint {
  std::int64_t iteration = 0;
  double mean_return = 0.0;
  double baseline = 0.0;
  double best_return = 0.0;
  bool operator==(const CurvePoint&) const = default;
};

struct Personality {
  std::string id;
  std::string mission_type;
  EnsemblerParams params;
  std::string scenario_digest;
  TrainConfig config;
  std::uint64_t eval_seed = 0;
  std::int64_t eval_episodes = 1;
  double final_mean_utility = 0.0;
};

struct TrainResult {
  Personality personality;
  std::vector<CurvePoint> curve;
};

/// Mean deterministic utility over `episodes` seeds starting at `seed`.
double evaluate_params(const Scenario& scenario, const EnsemblerParams& params, std::uint64_t seed,
                       std::int64_t episodes);

/// Mean deterministic survival fraction, same seeds as evaluate_params.
double evaluate_survival(const Scenario& scenario, const EnsemblerParams& params, std::uint64_t seed,
                         std::int64_t episodes);

/// Seeds of the personalities forming the random-init reference distribution.
std::uint64_t baseline_personality_seed(std::uint64_t master_seed, std::int64_t index);

/// REINFORCE from random-init parameters. The personality holds the
/// parameters of the best batch seen.
TrainResult train(const Scenario& scenario, const TrainConfig& config,
                  const std::function<void(const CurvePoint&)>& progress = {});

std::string curve_to_csv(std::span<const CurvePoint> curve);

std::string personality_metadata(const Personality& p);
std::vector<std::uint8_t> serialize_personality(const Personality& p);
/// Throws CheckpointError on a corrupt container or metadata.
Personality deserialize_personality(std::span<const std::uint8_t> bytes);
void save_personality(const Personality& p, const std::string& path);
Personality load_personality(const std::string& path);

}  // namespace autosim
