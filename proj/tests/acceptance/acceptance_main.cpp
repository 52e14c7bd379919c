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


// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "autosim/actionfilter.hpp"
#include "autosim/astar.hpp"
#include "autosim/controllers.hpp"
#include "autosim/ensembler.hpp"
#include "autosim/episode.hpp"
#include "autosim/swarmledger.hpp"
#include "autosim/training.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace autosim;
using namespace autosim::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// 1. Every (action, category) cell of the provenance check against the table.
Outcome permission_matrix() {
  int mismatches = 0;
  int cells = 0;
  for (std::size_t a = 0; a < kNumActionKinds; ++a) {
    for (std::size_t c = 0; c < kNumSensorCategories; ++c) {
      ++cells;
      DiscreteAction action;
      action.kind = static_cast<ActionKind>(a);
      const std::vector<SensorRecord> just{make_record(0, 0, static_cast<SensorCategory>(c))};
      const bool ok = std::holds_alternative<ProvenanceOk>(check_provenance(action, just));
      const bool expected = table_permits(action.kind, static_cast<SensorCategory>(c));
      if (ok != expected || PermissionMatrix::permits(action.kind, static_cast<SensorCategory>(c)) != expected) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(cells) + " cells, " + std::to_string(mismatches) + " mismatches"};
}

// 2. Fuzzed filter: no post-filter violation, and filtering is idempotent.
Outcome filter_hardness() {
  Rng rng(20260101);
  int violations = 0;
  int non_idempotent = 0;
  std::size_t kept = 0;
  std::size_t rejected = 0;
  std::string first;
  constexpr int kCases = 10000;
  for (int i = 0; i < kCases; ++i) {
    const FuzzCase c = random_fuzz_case(rng);
    const FilterResult once = filter(c.action, c.snapshot, c.constraints, c.map, c.stores, "self");
    kept += once.action.discrete.size();
    rejected += c.action.discrete.size() - once.action.discrete.size();
    const std::string why = post_filter_violation(c, once.action);
    if (!why.empty()) {
      if (first.empty()) first = why;
      ++violations;
    }
    const FilterResult twice = filter(once.action, c.snapshot, c.constraints, c.map, c.stores, "self");
    if (!(twice.action == once.action)) ++non_idempotent;
  }
  std::string detail = std::to_string(kCases) + " cases, " + std::to_string(violations) + " violations, " +
                       std::to_string(non_idempotent) + " non-idempotent, " + std::to_string(kept) + " discrete kept, " +
                       std::to_string(rejected) + " rejected";
  if (!first.empty()) detail += " (first: " + first + ")";
  return {violations == 0 && non_idempotent == 0 && kept > 0 && rejected > 0, detail};
}

// 3. Gate simplex, zero-parameter symmetry, dual-implementation agreement.
Outcome ensembler_math() {
  Rng rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> dh_pick(1, 12);
  std::uniform_int_distribution<int> n_pick(1, 6);
  std::uniform_int_distribution<int> din_pick(1, 40);
  double worst_sum = 0.0;
  double worst_dual = 0.0;
  bool negative_gate = false;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t dh = static_cast<std::size_t>(dh_pick(rng));
    const std::size_t n = static_cast<std::size_t>(n_pick(rng));
    const std::size_t din = static_cast<std::size_t>(din_pick(rng));
    const double scale = i % 10 == 0 ? 20.0 : 1.5;
    const EnsemblerParams p = init_params(rng(), dh, n, din, scale, 0.25);
    Eigen::VectorXd x(static_cast<Eigen::Index>(din));
    for (auto& v : x) v = 3.0 * u(rng);
    Eigen::VectorXd h(static_cast<Eigen::Index>(dh));
    for (auto& v : h) v = u(rng);
    Eigen::MatrixXd props(2, static_cast<Eigen::Index>(n));
    for (Eigen::Index k = 0; k < props.cols(); ++k) {
      props(0, k) = u(rng);
      props(1, k) = 0.5 + 0.5 * u(rng);
    }
    const EnsemblerStep s = ensembler_step(p, h, x, props, EligibleMask{});
    worst_sum = std::max(worst_sum, std::abs(s.gates.sum() - 1.0));
    if ((s.gates.array() < 0.0).any()) negative_gate = true;

    if (i < 2000) {
      std::vector<std::vector<double>> pv(n);
      for (std::size_t k = 0; k < n; ++k) pv[k] = {props(0, static_cast<Eigen::Index>(k)), props(1, static_cast<Eigen::Index>(k))};
      const ReferenceStep ref = reference_forward(p, std::vector<double>(h.data(), h.data() + h.size()),
                                                  std::vector<double>(x.data(), x.data() + x.size()), pv);
      for (std::size_t j = 0; j < dh; ++j) worst_dual = std::max(worst_dual, std::abs(ref.hidden[j] - s.hidden[static_cast<Eigen::Index>(j)]));
      for (std::size_t k = 0; k < n; ++k) worst_dual = std::max(worst_dual, std::abs(ref.gates[k] - s.gates[static_cast<Eigen::Index>(k)]));
      for (std::size_t c = 0; c < 2; ++c) worst_dual = std::max(worst_dual, std::abs(ref.mean[c] - s.mean[c]));
      for (std::size_t d = 0; d < kNumActionKinds; ++d) worst_dual = std::max(worst_dual, std::abs(ref.logits[d] - s.logits[d]));
    }
  }

  // Zero parameters, two opposite proposals.
  std::vector<ControllerProposal> props(2);
  props[0].controller_id = "a";
  props[0].continuous = {0.4, 0.5};
  props[0].discrete.push_back({DiscreteAction::evasive_maneuvers(), {1}});
  props[1].controller_id = "b";
  props[1].continuous = {-0.4, 0.5};
  const std::vector<double> env(3, 0.25);
  const std::vector<double> map(2, 0.5);
  const EnsemblerParams zero({env.size() + 2 * kProposalFeatures + map.size(), 4, 2}, 0.25, 0);
  const ForwardResult f = forward(zero, EnsemblerState::zeros(4), env, props, map);
  const bool symmetric = f.gates.size() == 2 && f.gates[0] == 0.5 && f.gates[1] == 0.5 &&
                         f.action.continuous.heading_rate == 0.0 && f.action.discrete.empty();

  const bool pass = worst_sum <= 1e-9 && !negative_gate && symmetric && worst_dual <= 1e-10;
  return {pass, "max |sum(g)-1| " + fmt_double(worst_sum) + ", symmetry " + (symmetric ? "exact" : "broken") +
                    ", max dual-implementation gap " + fmt_double(worst_dual)};
}

// 4. Analytic gradient of the sequence log-probability vs central differences.
Outcome gradient_check() {
  double worst = 0.0;
  for (std::size_t dh : {2, 4, 8}) {
    for (int trial = 0; trial < 3; ++trial) {
      Rng rng(1000 + dh * 10 + static_cast<std::size_t>(trial));
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const std::size_t n = 3;
      const std::vector<double> env(4, 0.0);
      const std::vector<double> map(3, 0.0);
      const std::size_t din = env.size() + n * kProposalFeatures + map.size();
      const EnsemblerParams p = init_params(rng(), dh, n, din, 0.6, 0.25);
      const ExplorationParams ex{0.15, 0.3};
      PolicySequence seq;
      EnsemblerState state = EnsemblerState::zeros(dh);
      for (int t = 0; t < 6; ++t) {
        std::vector<double> e(env.size());
        for (auto& v : e) v = u(rng);
        std::vector<double> m(map.size());
        for (auto& v : m) v = u(rng);
        std::vector<ControllerProposal> props(n);
        for (std::size_t k = 0; k < n; ++k) {
          props[k].controller_id = "c" + std::to_string(k);
          props[k].continuous = {u(rng), 0.5 + 0.5 * u(rng)};
          props[k].confidence = 0.5 + 0.5 * u(rng);
          if (k == t % n) props[k].discrete.push_back({DiscreteAction::evasive_maneuvers(), {1}});
          if (k == 0) props[k].discrete.push_back({DiscreteAction::engage_countermeasures(), {2}});
        }
        PolicyStep rec;
        state = stochastic_forward(p, state, e, props, m, ex, rng, &rec).state;
        seq.push_back(std::move(rec));
      }
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(p.flat().size());
      accumulate_log_prob_grad(p, seq, ex, grad);
      std::vector<double> x(p.flat().data(), p.flat().data() + p.flat().size());
      auto f = [&](const std::vector<double>& v) {
        EnsemblerParams q = p;
        for (std::size_t i = 0; i < v.size(); ++i) q.flat()[static_cast<Eigen::Index>(i)] = v[i];
        return sequence_log_prob(q, seq, ex);
      };
      const std::vector<double> num = central_difference(f, x, 1e-6);
      double diff2 = 0.0;
      double a2 = 0.0;
      double n2 = 0.0;
      for (std::size_t i = 0; i < num.size(); ++i) {
        const double a = grad[static_cast<Eigen::Index>(i)];
        diff2 += (a - num[i]) * (a - num[i]);
        a2 += a * a;
        n2 += num[i] * num[i];
      }
      const double rel = std::sqrt(diff2) / std::max(std::sqrt(std::max(a2, n2)), 1e-12);
      worst = std::max(worst, rel);
    }
  }
  return {worst <= 1e-4, "d_h {2,4,8}, 9 nets, worst relative error " + fmt_double(worst)};
}

// 5. Trained personalities vs the spread of 50 random initial personalities.
Outcome learning() {
  const Scenario wp = pinned_scenario("waypoint.json");
  const std::int64_t n_base = wp.training.baseline_personalities;
  double wp_baseline = 0.0;
  for (std::int64_t i = 0; i < n_base; ++i) {
    const EnsemblerParams p = random_params(wp, baseline_personality_seed(wp.training.seed, i));
    wp_baseline += evaluate_params(wp, p, wp.training.seed, 4) / static_cast<double>(n_base);
  }
  const TrainResult wt = train(wp, wp.training);
  double tail = 0.0;
  const std::size_t from = wt.curve.size() >= 20 ? wt.curve.size() - 20 : 0;
  for (std::size_t i = from; i < wt.curve.size(); ++i) tail += wt.curve[i].mean_return;
  tail /= static_cast<double>(std::max<std::size_t>(wt.curve.size() - from, 1));
  const bool wp_ok = wt.curve.size() == static_cast<std::size_t>(wp.training.iterations) && tail >= wp_baseline + 0.2;

  const Scenario ev = pinned_scenario("evasion.json");
  double ev_baseline = 0.0;
  for (std::int64_t i = 0; i < ev.training.baseline_personalities; ++i) {
    const EnsemblerParams p = random_params(ev, baseline_personality_seed(ev.training.seed, i));
    ev_baseline += evaluate_survival(ev, p, ev.training.seed, 4) / static_cast<double>(ev.training.baseline_personalities);
  }
  const TrainResult et = train(ev, ev.training);
  const double ev_trained = evaluate_survival(ev, et.personality.params, ev.training.seed, 4);
  const bool ev_ok = ev_trained >= ev_baseline + 0.3;

  return {wp_ok && ev_ok, "waypoint final-20 mean " + fmt_double(tail) + " vs baseline " + fmt_double(wp_baseline) +
                              "; evasion survival " + fmt_double(ev_trained) + " vs baseline " + fmt_double(ev_baseline)};
}

// 6. A* against Dijkstra on random and handcrafted grids.
Outcome astar_optimality() {
  int cases = 0;
  int cost_mismatch = 0;
  int nopath_mismatch = 0;
  int invalid = 0;
  auto check = [&](const PlanGrid& g, Cell s, Cell t) {
    ++cases;
    const auto path = plan_path_astar(g, s, t);
    const auto oracle = dijkstra_cost(g, s, t);
    if (path.has_value() != oracle.has_value()) {
      ++nopath_mismatch;
      return;
    }
    if (!path) return;
    double walked = 0.0;
    if (!valid_grid_path(g, path->cells, s, t, &walked)) ++invalid;
    if (std::abs(path->cost - *oracle) > 1e-9 || std::abs(walked - *oracle) > 1e-9) ++cost_mismatch;
  };

  Rng rng(612);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> coord(0, 11);
  for (int i = 0; i < 500; ++i) {
    PlanGrid g(12, 12);
    const double density = 0.1 + 0.4 * u01(rng);
    for (int r = 0; r < 12; ++r) {
      for (int c = 0; c < 12; ++c) {
        if (u01(rng) < density) g.set_blocked({r, c});
      }
    }
    Cell s{coord(rng), coord(rng)};
    Cell t{coord(rng), coord(rng)};
    g.set_blocked(s, false);
    if (i % 3 != 0) g.set_blocked(t, false);
    check(g, s, t);
  }

  {  // 5×5 wall column with a single gap.
    PlanGrid g(5, 5);
    for (int r = 0; r < 5; ++r) g.set_blocked({r, 2}, r != 4);
    check(g, {0, 0}, {0, 4});
  }
  {  // Serpentine corridors.
    PlanGrid g(12, 12);
    for (int c = 1; c < 12; c += 2) {
      for (int r = 0; r < 12; ++r) g.set_blocked({r, c});
      g.set_blocked({(c / 2) % 2 == 0 ? 11 : 0, c}, false);
    }
    check(g, {0, 0}, {0, 11});
  }
  {  // Goal sealed inside a ring.
    PlanGrid g(12, 12);
    for (int r = 4; r <= 8; ++r) {
      for (int c = 4; c <= 8; ++c) g.set_blocked({r, c}, r == 4 || r == 8 || c == 4 || c == 8);
    }
    check(g, {0, 0}, {6, 6});
  }
  {  // Diagonal squeeze that corner cutting would exploit.
    PlanGrid g(12, 12);
    for (int i = 0; i < 11; ++i) {
      g.set_blocked({i, i + 1});
      g.set_blocked({i + 1, i});
    }
    check(g, {0, 0}, {11, 11});
    check(g, {11, 0}, {0, 11});
  }
  {  // Start equals goal.
    PlanGrid g(12, 12);
    check(g, {3, 3}, {3, 3});
  }
  return {cost_mismatch == 0 && nopath_mismatch == 0 && invalid == 0,
          std::to_string(cases) + " grids, " + std::to_string(cost_mismatch) + " cost mismatches, " +
              std::to_string(nopath_mismatch) + " NoPath disagreements, " + std::to_string(invalid) + " invalid paths"};
}

Entity random_observation(Rng& rng, const std::vector<std::string>& authors, int ids, int ticks) {
  std::uniform_int_distribution<int> id(0, ids - 1);
  std::uniform_int_distribution<int> tick(0, ticks - 1);
  std::uniform_int_distribution<std::size_t> author(0, authors.size() - 1);
  std::uniform_real_distribution<double> pos(0.0, 5000.0);
  Entity e;
  e.id = "e" + std::to_string(id(rng));
  e.kind = EntityKind::kHostile;
  e.position = {pos(rng), pos(rng)};
  e.classification = "SAM";
  e.last_update_tick = tick(rng);
  e.author = authors[author(rng)];
  return e;
}

// 7. Chain mutation detection, partition/heal convergence, merge order independence.
Outcome ledger() {
  // (a) every single-byte mutation of every block in chains of 1..16 blocks.
  const KeyRing keys;
  Rng rng(7007);
  std::size_t mutations = 0;
  std::size_t missed = 0;
  for (std::size_t len = 1; len <= 16; ++len) {
    std::vector<Block> chain;
    for (std::size_t i = 0; i < len; ++i) {
      append_block(chain, "a1", {random_observation(rng, {"a1"}, 3, 100)}, static_cast<Tick>(i), keys.key("a1"));
    }
    for (std::size_t b = 0; b < len; ++b) {
      const std::vector<std::uint8_t> bytes = encode_block(chain[b]);
      for (std::size_t off = 0; off < bytes.size(); ++off) {
        for (std::uint8_t mask : {0x01, 0x10, 0x80, 0xff}) {
          ++mutations;
          std::vector<std::uint8_t> mutated = bytes;
          mutated[off] ^= mask;
          try {
            std::vector<Block> tampered = chain;
            tampered[b] = decode_block(mutated);
            if (!verify_chain(tampered, keys.key("a1"))) ++missed;
          } catch (const DecodeError&) {
          }
        }
      }
    }
  }

  // (b) three assets, 50-tick partition, 20% message loss.
  const Scenario part = pinned_scenario("partition.json");
  const auto& window = part.network.net.partitions.at(0);
  Tick converged_at = -1;
  EpisodeOptions opts;
  opts.on_ledger_sync = [&](Tick t, const std::map<std::string, ChainSet>& peers) {
    if (converged_at >= 0 || t < window.end || peers.size() != 3) return;
    bool same = true;
    const auto& first = peers.begin()->second;
    for (const auto& [id, chains] : peers) same = same && chains == first;
    if (same) converged_at = t;
  };
  run_episode(part, default_params(part), 3, opts);
  const bool heal_ok = converged_at >= window.end && converged_at <= window.end + 100;

  // (c) 4 authors, 200 observations, 1000 application orders.
  const std::vector<std::string> authors{"a1", "a2", "a3", "a4"};
  std::vector<Entity> obs;
  for (int i = 0; i < 200; ++i) obs.push_back(random_observation(rng, authors, 12, 15));
  auto apply = [&](const std::vector<Entity>& order) {
    StateMap m("own", Entity{});
    for (const auto& e : order) m.upsert(e);
    return m;
  };
  const StateMap reference = apply(obs);
  ChainSet chains;
  std::map<std::string, std::vector<Entity>> by_author;
  for (const auto& e : obs) by_author[e.author].push_back(e);
  for (auto& [a, list] : by_author) {
    std::sort(list.begin(), list.end(), [](const Entity& x, const Entity& y) { return x.last_update_tick < y.last_update_tick; });
    for (const auto& e : list) chains.append(a, {e}, e.last_update_tick, keys.key(a));
  }
  int disagreements = merge_into_statemap(chains, StateMap("own", Entity{})) == reference ? 0 : 1;
  std::vector<Entity> shuffled = obs;
  for (int s = 0; s < 1000; ++s) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (!(apply(shuffled) == reference)) ++disagreements;
  }

  std::string detail = std::to_string(mutations) + " mutations, " + std::to_string(missed) + " undetected; ";
  detail += converged_at >= 0 ? "identical chain sets " + std::to_string(converged_at - window.end) + " ticks after heal"
                              : "no convergence after heal";
  detail += "; " + std::to_string(disagreements) + " merge-order disagreements";
  return {missed == 0 && heal_ok && disagreements == 0, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// 8. Repeated CLI invocations produce identical artifacts.
Outcome determinism(const std::string& cli, const fs::path& work) {
  const std::string scen = scenario_path("swarm.json");
  const fs::path r1 = work / "run1";
  const fs::path r2 = work / "run2";
  const int a = run_cli(cli, "run --scenario " + scen + " --seed 11 --out " + r1.string());
  const int b = run_cli(cli, "run --scenario " + scen + " --seed 11 --out " + r2.string());
  const std::string l1 = slurp(r1 / "replay.jsonl");
  const bool runs_equal = a == 0 && b == 0 && !l1.empty() && l1 == slurp(r2 / "replay.jsonl");

  const std::string wscen = scenario_path("waypoint.json");
  const fs::path t1 = work / "train1";
  const fs::path t2 = work / "train2";
  const int c = run_cli(cli, "train --scenario " + wscen + " --seed 5 --iterations 40 --out " + t1.string());
  const int d = run_cli(cli, "train --scenario " + wscen + " --seed 5 --iterations 40 --out " + t2.string());
  const std::string c1 = slurp(t1 / "learning_curve.csv");
  const bool curves_equal = c == 0 && d == 0 && !c1.empty() && c1 == slurp(t2 / "learning_curve.csv");
  return {runs_equal && curves_equal, std::string("replay logs ") + (runs_equal ? "identical" : "differ") +
                                          ", learning curves " + (curves_equal ? "identical" : "differ")};
}

bool filtered_has(const AssetTick& a, ActionKind kind, const std::string& id = {}) {
  for (const auto& e : a.action.discrete) {
    if (e.action.kind != kind) continue;
    if (id.empty() || e.action.target_id == id || e.action.entity.id == id) return true;
  }
  return false;
}

// 9. Scripted scenarios exercising warning response, target handling and re-tasking.
Outcome capabilities() {
  std::vector<std::string> notes;
  bool all = true;

  {
    const Scenario s = pinned_scenario("maw.json");
    const EpisodeResult r = run_episode(s, default_params(s), 1, {});
    Tick first = -1;
    for (const auto& t : r.trace) {
      const auto& a = t.assets.at(0);
      if (filtered_has(a, ActionKind::kEvasiveManeuvers) && filtered_has(a, ActionKind::kEngageCountermeasures)) {
        first = t.tick;
        break;
      }
    }
    const bool ok = first >= 0 && first <= 1;
    all = all && ok;
    notes.push_back("(a) MAW response at tick " + std::to_string(first));
  }
  {
    const Scenario s = pinned_scenario("sam_contact.json");
    const EpisodeResult r = run_episode(s, default_params(s), 1, {});
    bool found = false;
    for (const auto& t : r.trace) found = found || filtered_has(t.assets.at(0), ActionKind::kAddNewTarget, "sam-east");
    all = all && found;
    notes.push_back(std::string("(b) AddNewTarget ") + (found ? "emitted" : "missing"));
  }
  {
    const Scenario s = pinned_scenario("bda.json");
    const EpisodeResult r = run_episode(s, default_params(s), 1, {});
    bool found = false;
    for (const auto& t : r.trace) {
      found = found || filtered_has(t.assets.at(0), ActionKind::kDeprioritizeTarget, "depot") ||
              filtered_has(t.assets.at(0), ActionKind::kUpdateMissionAchievement, "depot");
    }
    all = all && found;
    notes.push_back(std::string("(c) neutralized-target update ") + (found ? "emitted" : "missing"));
  }
  {
    const Scenario s = pinned_scenario("swarm.json");
    const EpisodeResult r1 = run_episode(s, default_params(s), 1, {});
    const EpisodeResult r2 = run_episode(s, default_params(s), 1, {});
    const auto roles = effective_roles(s.controllers.swarm, s.world.assets.size());
    const std::string victim = s.kills.at(0).asset;
    std::vector<std::string> survivors;
    for (const auto& a : s.world.assets) {
      if (a.id != victim) survivors.push_back(a.id);
    }
    const auto oracle = enumerate_assignment(survivors, roles);
    bool retasked = false;
    bool matches = true;
    for (const auto& t : r1.trace) {
      if (t.tick < s.kills.at(0).tick) continue;
      bool any = false;
      for (const auto& a : t.assets) any = any || a.retasked;
      if (!any) continue;
      retasked = true;
      for (const auto& [id, role] : oracle) {
        auto it = std::find_if(t.assets.begin(), t.assets.end(), [&](const AssetTick& a) { return a.asset == id; });
        matches = matches && it != t.assets.end() && it->role == role;
      }
      break;
    }
    bool same = r1.trace.size() == r2.trace.size();
    for (std::size_t i = 0; same && i < r1.trace.size(); ++i) {
      for (std::size_t j = 0; same && j < r1.trace[i].assets.size(); ++j) {
        same = r1.trace[i].assets[j].role == r2.trace[i].assets[j].role;
      }
    }
    const bool ok = retasked && matches && same;
    all = all && ok;
    notes.push_back(std::string("(d) re-tasking ") + (ok ? "matches assignment oracle" : "does not match oracle"));
  }
  std::string detail;
  for (const auto& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {all, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }
  if (cli.empty()) {
    std::cerr << "usage: autosim_acceptance --cli <path to autosim>\n";
    return 2;
  }
  const fs::path work = fs::temp_directory_path() / ("autosim-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"permission matrix", permission_matrix},
      {"filter hardness", filter_hardness},
      {"ensembler math", ensembler_math},
      {"gradient check", gradient_check},
      {"learning", learning},
      {"A* optimality", astar_optimality},
      {"ledger", ledger},
      {"determinism", [&] { return determinism(cli, work); }},
      {"scenario capabilities", capabilities},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::error_code ec;
  fs::remove_all(work, ec);
  return failed == 0 ? 0 : 1;
}
