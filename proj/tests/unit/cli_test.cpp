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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "autosim/replay.hpp"
#include "autosim/scenario.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace autosim {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string output;
};

Run cli(const std::string& args) {
  const fs::path log = fs::path(::testing::TempDir()) / "cli_output.txt";
  const std::string cmd = std::string(AUTOSIM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = read_text_file(log.string());
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Cli, RunWritesOutputs) {
  const auto out = fresh_dir("run");
  const auto r = cli("run --scenario " + testing::scenario_path("swarm.json") + " --seed 1 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  for (const char* f : {"replay.jsonl", "audit.jsonl", "metrics.csv", "utility.json", "ledger.asld"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const auto util = nlohmann::json::parse(read_text_file((out / "utility.json").string()));
  EXPECT_TRUE(util.contains("total"));
}

TEST(Cli, RunIsByteReproducible) {
  const auto a = fresh_dir("rep_a");
  const auto b = fresh_dir("rep_b");
  const std::string scn = testing::scenario_path("partition.json");
  ASSERT_EQ(cli("run --scenario " + scn + " --seed 4 --ticks 60 --out " + a.string()).code, 0);
  ASSERT_EQ(cli("run --scenario " + scn + " --seed 4 --ticks 60 --out " + b.string()).code, 0);
  EXPECT_EQ(read_text_file((a / "replay.jsonl").string()), read_text_file((b / "replay.jsonl").string()));
  EXPECT_EQ(read_binary_file((a / "ledger.asld").string()), read_binary_file((b / "ledger.asld").string()));
}

TEST(Cli, ValidationErrorExitsTwoNamingField) {
  auto doc = nlohmann::json::parse(read_text_file(testing::scenario_path("waypoint.json")));
  doc["assets"][0]["sensors"]["radar_range"] = -1;
  const auto dir = fresh_dir("invalid");
  const auto path = dir / "bad.json";
  write_text_file(path.string(), doc.dump());
  const auto r = cli("run --scenario " + path.string() + " --seed 1 --out " + (dir / "out").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("assets[0].sensors.radar_range"), std::string::npos) << r.output;
}

TEST(Cli, MissingFileExitsOneNamingPath) {
  const auto dir = fresh_dir("missing");
  const auto r = cli("run --scenario /no/such/file.json --seed 1 --out " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("/no/such/file.json"), std::string::npos) << r.output;
  EXPECT_NE(cli("run --scenario " + testing::scenario_path("waypoint.json") + " --out " + dir.string()).code, 0);
}

TEST(Cli, VerifyLedger) {
  const auto out = fresh_dir("ledger");
  ASSERT_EQ(cli("run --scenario " + testing::scenario_path("swarm.json") + " --seed 2 --ticks 20 --out " +
                out.string())
                .code,
            0);
  const auto dump = out / "ledger.asld";
  EXPECT_EQ(cli("verify-ledger " + dump.string()).code, 0);

  auto bytes = read_binary_file(dump.string());
  ASSERT_GT(bytes.size(), 200u);
  bytes[bytes.size() - 45] ^= 0x01;
  const auto bad = out / "flipped.asld";
  write_binary_file(bad.string(), bytes);
  const auto r = cli("verify-ledger " + bad.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.output.find("uav-"), std::string::npos) << r.output;

  const auto empty = out / "empty.asld";
  write_binary_file(empty.string(), {});
  EXPECT_EQ(cli("verify-ledger " + empty.string()).code, 0);
  EXPECT_EQ(cli("verify-ledger " + (out / "absent.asld").string()).code, 1);
  EXPECT_EQ(cli("verify-ledger " + dump.string() + " --secret other").code, 3);
}

TEST(Cli, ExportMetrics) {
  const auto out = fresh_dir("metrics");
  ASSERT_EQ(cli("run --scenario " + testing::scenario_path("partition.json") + " --seed 3 --ticks 100 --out " +
                out.string())
                .code,
            0);
  const auto replay = out / "replay.jsonl";
  const ReplayLog log = parse_replay(read_text_file(replay.string()));
  ASSERT_EQ(log.ticks.size(), 100u);

  const auto csv = out / "all.csv";
  ASSERT_EQ(cli("export-metrics " + replay.string() + " --out " + csv.string()).code, 0);
  const auto rows = lines_of(read_text_file(csv.string()));
  std::size_t expected = 1;
  for (const auto& t : log.ticks) expected += t.assets.size();
  EXPECT_EQ(rows.size(), expected);
  EXPECT_EQ(rows.size(), 1u + 100u * 3u);

  const auto header = rows[0];
  std::vector<std::size_t> gate_cols;
  {
    std::istringstream in(header);
    std::size_t i = 0;
    for (std::string col; std::getline(in, col, ','); ++i) {
      if (col.rfind("gate_", 0) == 0) gate_cols.push_back(i);
    }
  }
  ASSERT_EQ(gate_cols.size(), log.controllers.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::vector<std::string> cells;
    std::istringstream in(rows[r]);
    for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
    double sum = 0.0;
    for (auto c : gate_cols) sum += std::stod(cells[c]);
    EXPECT_NEAR(sum, 1.0, 1e-9) << r;
  }

  const auto range = out / "range.csv";
  ASSERT_EQ(cli("export-metrics " + replay.string() + " --from 10 --to 20 --out " + range.string()).code, 0);
  const auto ranged = lines_of(read_text_file(range.string()));
  std::set<std::string> ticks;
  for (std::size_t r = 1; r < ranged.size(); ++r) ticks.insert(ranged[r].substr(0, ranged[r].find(',')));
  EXPECT_EQ(ticks.size(), 11u);
  EXPECT_TRUE(ticks.contains("10"));
  EXPECT_TRUE(ticks.contains("20"));
}

TEST(Cli, ReplayParseErrorNamesLine) {
  const auto out = fresh_dir("parse");
  ASSERT_EQ(cli("run --scenario " + testing::scenario_path("waypoint.json") + " --seed 1 --ticks 10 --out " +
                out.string())
                .code,
            0);
  auto lines = lines_of(read_text_file((out / "replay.jsonl").string()));
  ASSERT_GT(lines.size(), 4u);
  lines[3] = "{not json";
  std::string broken;
  for (const auto& l : lines) broken += l + "\n";
  const auto bad = out / "broken.jsonl";
  write_text_file(bad.string(), broken);
  const auto r = cli("export-metrics " + bad.string() + " --out " + (out / "x.csv").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("line 4"), std::string::npos) << r.output;
  EXPECT_EQ(cli("replay " + bad.string()).code, 1);
}

TEST(Cli, ReplayFormats) {
  const auto out = fresh_dir("replayfmt");
  ASSERT_EQ(cli("run --scenario " + testing::scenario_path("waypoint.json") + " --seed 1 --ticks 12 --out " +
                out.string())
                .code,
            0);
  const auto replay = (out / "replay.jsonl").string();
  const auto text = cli("replay " + replay + " --from 2 --to 4");
  EXPECT_EQ(text.code, 0);
  EXPECT_FALSE(text.output.empty());
  const auto csv = cli("replay " + replay + " --format csv --from 2 --to 4");
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(lines_of(csv.output).size(), 4u);
  EXPECT_NE(cli("replay " + replay + " --format pdf").code, 0);
}

TEST(Cli, TrainWritesPersonalityUsableByRun) {
  const auto out = fresh_dir("train");
  const std::string scn = testing::scenario_path("waypoint.json");
  ASSERT_EQ(cli("train --scenario " + scn + " --seed 3 --iterations 2 --episodes 2 --out " + out.string()).code, 0);
  EXPECT_TRUE(fs::exists(out / "learning_curve.csv"));
  EXPECT_EQ(lines_of(read_text_file((out / "learning_curve.csv").string())).size(), 3u);
  const auto pk = out / "personality.aspk";
  ASSERT_TRUE(fs::exists(pk));
  EXPECT_EQ(cli("run --scenario " + scn + " --seed 1 --personality " + pk.string() + " --out " +
                (out / "run").string())
                .code,
            0);
  const auto corrupt = out / "corrupt.aspk";
  auto bytes = read_binary_file(pk.string());
  bytes.resize(bytes.size() / 2);
  write_binary_file(corrupt.string(), bytes);
  EXPECT_EQ(cli("run --scenario " + scn + " --seed 1 --personality " + corrupt.string() + " --out " +
                (out / "run2").string())
                .code,
            1);
}

}  // namespace
}  // namespace autosim
