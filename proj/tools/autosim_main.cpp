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


#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "autosim/episode.hpp"
#include "autosim/replay.hpp"
#include "autosim/scenario.hpp"
#include "autosim/swarmledger.hpp"
#include "autosim/training.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kValidationError = 2;
constexpr int kLedgerFailure = 3;

void configure_logging() {
  spdlog::set_level(spdlog::level::warn);
  const char* level = std::getenv("AUTOSIM_LOG_LEVEL");
  if (level == nullptr) return;
  const std::string l = level;
  if (l == "error") spdlog::set_level(spdlog::level::err);
  else if (l == "warn") spdlog::set_level(spdlog::level::warn);
  else if (l == "info") spdlog::set_level(spdlog::level::info);
  else if (l == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::warn("ignoring AUTOSIM_LOG_LEVEL='{}'", l);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw autosim::FileError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

struct RunArgs {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string personality;
  std::string out;
  std::optional<std::int64_t> ticks;
};

int cmd_run(const RunArgs& a) {
  const autosim::Scenario scenario = autosim::load_scenario(a.scenario);
  autosim::EnsemblerParams params = autosim::default_params(scenario);
  if (!a.personality.empty()) {
    params = autosim::load_personality(a.personality).params;
  }
  autosim::EpisodeOptions options;
  options.record_replay = true;
  if (a.ticks) options.max_ticks = *a.ticks;
  spdlog::info("running '{}' seed {}", scenario.name, a.seed);
  const autosim::EpisodeResult r = autosim::run_episode(scenario, params, a.seed, options);

  ensure_dir(a.out);
  std::string replay;
  for (const auto& line : r.replay) replay += line + "\n";
  autosim::write_text_file(join_path(a.out, "replay.jsonl"), replay);

  autosim::write_text_file(join_path(a.out, "audit.jsonl"), autosim::audit_jsonl(r.audit));
  autosim::write_text_file(join_path(a.out, "metrics.csv"), autosim::metrics_csv(autosim::parse_replay(replay)));

  const auto& c = r.utility.components;
  json utility{{"scenario", scenario.name},
               {"seed", a.seed},
               {"ticks_used", r.ticks_used},
               {"components",
                {{"targets_frac", c.targets_frac},
                 {"waypoints_frac", c.waypoints_frac},
                 {"survival_frac", c.survival_frac},
                 {"constraint_score", c.constraint_score},
                 {"time_frac", c.time_frac}}},
               {"total", r.utility.total}};
  autosim::write_text_file(join_path(a.out, "utility.json"), utility.dump(2) + "\n");
  autosim::write_binary_file(join_path(a.out, "ledger.asld"), autosim::encode_dump(autosim::ledger_dump(r)));
  std::cout << "utility " << r.utility.total << " after " << r.ticks_used << " ticks; outputs in " << a.out << "\n";
  return kOk;
}

struct TrainArgs {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::int64_t> iterations;
  std::optional<std::int64_t> episodes;
  std::optional<double> learning_rate;
};

int cmd_train(const TrainArgs& a) {
  const autosim::Scenario scenario = autosim::load_scenario(a.scenario);
  autosim::TrainConfig config = scenario.training;
  config.seed = a.seed;
  if (a.iterations) config.iterations = *a.iterations;
  if (a.episodes) config.episodes_per_iteration = *a.episodes;
  if (a.learning_rate) config.learning_rate = *a.learning_rate;
  if (config.iterations < 0 || config.episodes_per_iteration <= 0 || !(config.learning_rate > 0.0)) {
    throw autosim::ValidationError("training", "iterations >= 0, episodes > 0 and learning rate > 0 required");
  }
  auto result = autosim::train(scenario, config, [](const autosim::CurvePoint& p) {
    spdlog::info("iteration {} mean {:.4f} baseline {:.4f}", p.iteration, p.mean_return, p.baseline);
  });
  ensure_dir(a.out);
  autosim::save_personality(result.personality, join_path(a.out, "personality.aspk"));
  autosim::write_text_file(join_path(a.out, "learning_curve.csv"), autosim::curve_to_csv(result.curve));
  std::cout << "personality " << result.personality.id << " final mean utility "
            << result.personality.final_mean_utility << "\n";
  return kOk;
}

struct ReplayArgs {
  std::string log;
  std::optional<std::int64_t> from;
  std::optional<std::int64_t> to;
  std::string format = "text";
};

int cmd_replay(const ReplayArgs& a) {
  const auto log = autosim::parse_replay(autosim::read_text_file(a.log));
  if (a.format == "csv") {
    std::cout << autosim::metrics_csv(log, a.from, a.to);
    return kOk;
  }
  std::cout << "scenario " << log.scenario << " seed " << log.seed << "\n";
  for (const auto& t : log.ticks) {
    if ((a.from && t.tick < *a.from) || (a.to && t.tick > *a.to)) continue;
    std::cout << "tick " << t.tick << " U=" << t.utility.total << "\n";
    for (const auto& as : t.assets) {
      std::cout << "  " << as.id << " hr=" << as.heading_rate << " v=" << as.speed_cmd;
      for (const auto& d : as.discrete) std::cout << " " << d;
      std::cout << "\n";
    }
    for (const auto& e : t.events) std::cout << "  event " << e << "\n";
  }
  if (log.final_utility) std::cout << "final U=" << log.final_utility->total << "\n";
  return kOk;
}

int cmd_verify(const std::string& path, const std::string& secret) {
  const auto bytes = autosim::read_binary_file(path);
  std::vector<autosim::LedgerFailure> failures;
  try {
    failures = autosim::verify_dump(bytes, autosim::KeyRing{secret});
  } catch (const autosim::DecodeError& e) {
    std::cerr << "unreadable ledger dump '" << path << "': " << e.what() << "\n";
    return kInputError;
  }
  if (failures.empty()) {
    std::cout << "ledger ok\n";
    return kOk;
  }
  for (const auto& f : failures) std::cout << f.author << " " << f.seq << " " << f.reason << "\n";
  return kLedgerFailure;
}

int cmd_export(const std::string& log_path, const std::string& csv, std::optional<std::int64_t> from,
               std::optional<std::int64_t> to) {
  const auto log = autosim::parse_replay(autosim::read_text_file(log_path));
  autosim::write_text_file(csv, autosim::metrics_csv(log, from, to));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Multi-agent autonomy simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one mission episode");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON")->required();
  run_cmd->add_option("--seed", run.seed, "Episode seed")->required();
  run_cmd->add_option("--personality", run.personality, "Personality checkpoint");
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--ticks", run.ticks, "Override mission max_ticks")->check(CLI::PositiveNumber);

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train a personality");
  train_cmd->add_option("--scenario", tr.scenario, "Scenario JSON")->required();
  train_cmd->add_option("--seed", tr.seed, "Master seed")->required();
  train_cmd->add_option("--out", tr.out, "Output directory")->required();
  train_cmd->add_option("--iterations", tr.iterations, "Override training.iterations");
  train_cmd->add_option("--episodes", tr.episodes, "Override training.episodes_per_iteration");
  train_cmd->add_option("--learning-rate", tr.learning_rate, "Override training.learning_rate");

  ReplayArgs rp;
  auto* replay_cmd = app.add_subcommand("replay", "Print a replay log");
  replay_cmd->add_option("log,--log", rp.log, "Replay log")->required();
  replay_cmd->add_option("--from", rp.from, "First tick");
  replay_cmd->add_option("--to", rp.to, "Last tick");
  replay_cmd->add_option("--format", rp.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  std::string ledger_path;
  std::string secret = "autosim";
  auto* verify_cmd = app.add_subcommand("verify-ledger", "Verify a ledger dump");
  verify_cmd->add_option("ledger,--ledger", ledger_path, "Ledger dump")->required();
  verify_cmd->add_option("--secret", secret, "Pre-shared key secret");

  std::string export_log;
  std::string export_csv;
  std::optional<std::int64_t> export_from;
  std::optional<std::int64_t> export_to;
  auto* export_cmd = app.add_subcommand("export-metrics", "Write metrics CSV from a replay log");
  export_cmd->add_option("log,--log", export_log, "Replay log")->required();
  export_cmd->add_option("--out", export_csv, "CSV path")->required();
  export_cmd->add_option("--from", export_from, "First tick");
  export_cmd->add_option("--to", export_to, "Last tick");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*train_cmd) return cmd_train(tr);
    if (*replay_cmd) return cmd_replay(rp);
    if (*verify_cmd) return cmd_verify(ledger_path, secret);
    if (*export_cmd) return cmd_export(export_log, export_csv, export_from, export_to);
  } catch (const autosim::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const autosim::DimensionError& e) {
    std::cerr << "personality does not fit scenario: " << e.what() << "\n";
    return kValidationError;
  } catch (const autosim::FileError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const autosim::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const autosim::ReplayParseError& e) {
    std::cerr << "replay parse error at " << e.what() << "\n";
    return kInputError;
  } catch (const autosim::CheckpointError& e) {
    std::cerr << "personality error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
