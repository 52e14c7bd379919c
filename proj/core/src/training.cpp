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


#include "autosim/training.hpp"

#include <cmath>
#include <sstream>

#include "json_util.hpp"

namespace autosim {

using detail::json;

namespace {

constexpr std::uint64_t kTrainTag = 0x545241494eULL;

ExplorationParams exploration(const TrainConfig& c) { return {c.sigma, c.epsilon}; }

}  // namespace

RolloutResult rollout_stochastic(const Scenario& scenario, const EnsemblerParams& params,
                                 const ExplorationParams& explore, std::uint64_t seed) {
  EpisodeOptions options;
  options.explore = explore;
  options.explore_seed = derive_seed(seed, static_cast<std::uint64_t>(Stream::kExplore));
  options.record_policy = true;
  RolloutResult r{run_episode(scenario, params, seed, options), {}};
  r.trajectory.ret = r.episode.utility.total;
  for (auto& [id, seq] : r.episode.policy) r.trajectory.sequences.push_back(seq);
  return r;
}

Eigen::VectorXd trajectory_log_prob_grad(const EnsemblerParams& params, const Trajectory& trajectory,
                                         const ExplorationParams& explore) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(params.flat().size());
  for (const auto& seq : trajectory.sequences) accumulate_log_prob_grad(params, seq, explore, g);
  return g;
}

UpdateResult reinforce_update(const EnsemblerParams& params, std::span<const Trajectory> batch, double baseline,
                              const ExplorationParams& explore, double learning_rate, double baseline_decay,
                              double grad_clip) {
  if (batch.empty()) throw PreconditionError("reinforce_update: empty batch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(params.flat().size());
  double mean_return = 0.0;
  for (const auto& traj : batch) {
    mean_return += traj.ret;
    const double advantage = traj.ret - baseline;
    if (advantage == 0.0) continue;
    g += advantage * trajectory_log_prob_grad(params, traj, explore);
  }
  const double n = static_cast<double>(batch.size());
  g /= n;
  mean_return /= n;
  UpdateResult out{params, baseline_decay * baseline + (1.0 - baseline_decay) * mean_return, g.norm()};
  if (!g.allFinite()) {
    std::ostringstream msg;
    msg << "reinforce_update: non-finite gradient (" << (g.array().isNaN().count()) << " NaN entries, batch of "
        << batch.size() << ", baseline " << baseline << ")";
    throw TrainingError(msg.str());
  }
  if (grad_clip > 0.0 && out.grad_norm > grad_clip) g *= grad_clip / out.grad_norm;
  out.params.flat() += learning_rate * g;
  return out;
}

double evaluate_params(const Scenario& scenario, const EnsemblerParams& params, std::uint64_t seed,
                       std::int64_t episodes) {
  double total = 0.0;
  for (std::int64_t k = 0; k < episodes; ++k) {
    total += run_episode(scenario, params, seed + static_cast<std::uint64_t>(k)).utility.total;
  }
  return episodes > 0 ? total / static_cast<double>(episodes) : 0.0;
}

double evaluate_survival(const Scenario& scenario, const EnsemblerParams& params, std::uint64_t seed,
                         std::int64_t episodes) {
  double total = 0.0;
  for (std::int64_t k = 0; k < episodes; ++k) {
    total += run_episode(scenario, params, seed + static_cast<std::uint64_t>(k)).utility.components.survival_frac;
  }
  return episodes > 0 ? total / static_cast<double>(episodes) : 0.0;
}

std::uint64_t baseline_personality_seed(std::uint64_t master_seed, std::int64_t index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(Stream::kInit), 1, static_cast<std::uint64_t>(index));
}

TrainResult train(const Scenario& scenario, const TrainConfig& config,
                  const std::function<void(const CurvePoint&)>& progress) {
  const ExplorationParams explore = exploration(config);
  EnsemblerParams params =
      random_params(scenario, derive_seed(config.seed, static_cast<std::uint64_t>(Stream::kInit)));
  EnsemblerParams best = params;
  double best_return = -INFINITY;
  std::optional<double> baseline;
  TrainResult result;

  for (std::int64_t it = 0; it < config.iterations; ++it) {
    std::vector<Trajectory> batch;
    double mean = 0.0;
    for (std::int64_t e = 0; e < config.episodes_per_iteration; ++e) {
      const std::uint64_t seed =
          derive_seed(config.seed, kTrainTag, static_cast<std::uint64_t>(it), static_cast<std::uint64_t>(e));
      batch.push_back(rollout_stochastic(scenario, params, explore, seed).trajectory);
      mean += batch.back().ret;
    }
    mean /= static_cast<double>(batch.size());
    if (!baseline) baseline = mean;
    if (mean > best_return) {
      best_return = mean;
      best = params;
    }
    UpdateResult up =
        reinforce_update(params, batch, *baseline, explore, config.learning_rate, config.baseline_decay, config.grad_clip);
    params = std::move(up.params);
    baseline = up.baseline;
    CurvePoint point{it, mean, *baseline, best_return};
    result.curve.push_back(point);
    if (progress) progress(point);
  }

  Personality& p = result.personality;
  p.id = scenario.name + "-" + std::to_string(config.seed);
  p.mission_type = scenario.mission.mission_type;
  p.params = best;
  p.scenario_digest = scenario.digest;
  p.config = config;
  p.eval_seed = config.seed;
  p.eval_episodes = 4;
  p.final_mean_utility = evaluate_params(scenario, p.params, p.eval_seed, p.eval_episodes);
  return result;
}

std::string curve_to_csv(std::span<const CurvePoint> curve) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,mean_return,baseline,best_return\n";
  for (const auto& c : curve) out << c.iteration << ',' << c.mean_return << ',' << c.baseline << ',' << c.best_return << '\n';
  return out.str();
}

std::string personality_metadata(const Personality& p) {
  const auto& c = p.config;
  json doc{{"id", p.id},
           {"mission_type", p.mission_type},
           {"scenario_digest", p.scenario_digest},
           {"eval_seed", p.eval_seed},
           {"eval_episodes", p.eval_episodes},
           {"final_mean_utility", p.final_mean_utility},
           {"config",
            {{"iterations", c.iterations},
             {"episodes_per_iteration", c.episodes_per_iteration},
             {"learning_rate", c.learning_rate},
             {"sigma", c.sigma},
             {"epsilon", c.epsilon},
             {"baseline_decay", c.baseline_decay},
             {"seed", c.seed},
             {"grad_clip", c.grad_clip},
             {"baseline_personalities", c.baseline_personalities}}}};
  return doc.dump();
}

std::vector<std::uint8_t> serialize_personality(const Personality& p) {
  return serialize_params(p.params, personality_metadata(p));
}

Personality deserialize_personality(std::span<const std::uint8_t> bytes) {
  DecodedCheckpoint ck = deserialize_params(bytes);
  Personality p;
  p.params = std::move(ck.params);
  try {
    const json doc = json::parse(ck.metadata);
    p.id = doc.at("id").get<std::string>();
    p.mission_type = doc.at("mission_type").get<std::string>();
    p.scenario_digest = doc.at("scenario_digest").get<std::string>();
    p.eval_seed = doc.at("eval_seed").get<std::uint64_t>();
    p.eval_episodes = doc.at("eval_episodes").get<std::int64_t>();
    p.final_mean_utility = doc.at("final_mean_utility").get<double>();
    const json& c = doc.at("config");
    p.config.iterations = c.at("iterations").get<std::int64_t>();
    p.config.episodes_per_iteration = c.at("episodes_per_iteration").get<std::int64_t>();
    p.config.learning_rate = c.at("learning_rate").get<double>();
    p.config.sigma = c.at("sigma").get<double>();
    p.config.epsilon = c.at("epsilon").get<double>();
    p.config.baseline_decay = c.at("baseline_decay").get<double>();
    p.config.seed = c.at("seed").get<std::uint64_t>();
    p.config.grad_clip = c.at("grad_clip").get<double>();
    p.config.baseline_personalities = c.at("baseline_personalities").get<std::int64_t>();
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("personality metadata invalid: ") + e.what());
  }
  return p;
}

void save_personality(const Personality& p, const std::string& path) {
  write_binary_file(path, serialize_personality(p));
}

Personality load_personality(const std::string& path) { return deserialize_personality(read_binary_file(path)); }

}  // namespace autosim
