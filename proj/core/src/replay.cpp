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


#include "autosim/replay.hpp"

#include <sstream>

#include "json_util.hpp"

namespace autosim {

using detail::json;

ReplayLog parse_replay(std::string_view text) {
  ReplayLog log;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line.begin(), line.end());
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        log.scenario = j.at("scenario").get<std::string>();
        log.digest = j.at("digest").get<std::string>();
        log.seed = j.at("seed").get<std::uint64_t>();
        log.controllers = j.at("controllers").get<std::vector<std::string>>();
        header = true;
      } else if (type == "tick") {
        if (!header) throw ReplayParseError(line_no, "tick record before header");
        ReplayTick t;
        t.tick = j.at("tick").get<Tick>();
        t.world_digest = j.at("world").get<std::string>();
        t.utility = detail::utility_from_json(j.at("utility"), "utility");
        for (const auto& a : j.at("assets")) {
          ReplayAsset ra;
          ra.id = a.at("id").get<std::string>();
          const json& act = a.at("action");
          ra.heading_rate = act.at("heading_rate").get<double>();
          ra.speed_cmd = act.at("speed_cmd").get<double>();
          for (const auto& d : act.at("discrete")) ra.discrete.push_back(d.at("kind").get<std::string>());
          ra.gates = a.at("gates").get<std::vector<double>>();
          ra.role = a.at("role").get<std::size_t>();
          ra.audit = a.at("audit").get<std::vector<std::size_t>>();
          t.assets.push_back(std::move(ra));
        }
        for (const auto& e : j.at("events")) {
          t.events.push_back(e.at("kind").get<std::string>() + " " + e.at("subject").get<std::string>() + " " +
                             e.at("object").get<std::string>());
        }
        log.ticks.push_back(std::move(t));
      } else if (type == "summary") {
        log.final_utility = detail::utility_from_json(j.at("utility"), "utility");
      } else {
        throw ReplayParseError(line_no, "unknown record type '" + type + "'");
      }
    } catch (const ReplayParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ReplayParseError(line_no, e.what());
    }
  }
  if (!header) throw ReplayParseError(line_no, "missing header record");
  return log;
}

std::string metrics_csv(const ReplayLog& log, std::optional<Tick> from, std::optional<Tick> to) {
  std::ostringstream out;
  out.precision(17);
  out << "tick,asset,targets_frac,waypoints_frac,survival_frac,constraint_score,time_frac,total";
  for (const auto& c : log.controllers) out << ",gate_" << c;
  out << '\n';
  for (const auto& t : log.ticks) {
    if ((from && t.tick < *from) || (to && t.tick > *to)) continue;
    const auto& c = t.utility.components;
    for (const auto& a : t.assets) {
      out << t.tick << ',' << a.id << ',' << c.targets_frac << ',' << c.waypoints_frac << ',' << c.survival_frac << ','
          << c.constraint_score << ',' << c.time_frac << ',' << t.utility.total;
      for (double g : a.gates) out << ',' << g;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace autosim
