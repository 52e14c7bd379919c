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

#include <algorithm>
#include <random>

#include "autosim/corpus.hpp"
#include "autosim/statemap.hpp"
#include "oracles.hpp"

namespace autosim {
namespace {

Entity hostile(const std::string& id, Vec2 p, Tick tick, const std::string& author = "a1") {
  Entity e;
  e.id = id;
  e.kind = EntityKind::kHostile;
  e.position = p;
  e.last_update_tick = tick;
  e.author = author;
  e.classification = "SAM";
  return e;
}

StateMap empty_map() { return StateMap("self", Entity{}); }

TEST(StateMap, InsertIntoEmpty) {
  StateMap m = upsert_entity(empty_map(), hostile("h1", {1, 2}, 5));
  EXPECT_EQ(m.size(), 2u);
  ASSERT_NE(m.find("h1"), nullptr);
  EXPECT_EQ(m.find("h1")->last_update_tick, 5);
}

TEST(StateMap, StaleWriteIgnored) {
  StateMap m = upsert_entity(empty_map(), hostile("h1", {1, 2}, 5));
  StateMap after = upsert_entity(m, hostile("h1", {9, 9}, 3));
  EXPECT_EQ(after, m);
}

TEST(StateMap, SameTickTieGoesToLaterAuthorInEitherOrder) {
  const Entity a2 = hostile("h1", {1, 1}, 5, "a2");
  const Entity a3 = hostile("h1", {2, 2}, 5, "a3");
  StateMap forward = upsert_entity(upsert_entity(empty_map(), a2), a3);
  StateMap reverse = upsert_entity(upsert_entity(empty_map(), a3), a2);
  EXPECT_EQ(forward, reverse);
  EXPECT_EQ(forward.find("h1")->author, "a3");
}

TEST(StateMap, EncodingOfSelfOnlyMap) {
  MapEncodingLayout layout;
  Entity self;
  self.position = {5000, 5000};
  const std::vector<double> v = encode_state_map(StateMap("self", self), layout);
  ASSERT_EQ(v.size(), 98u);
  const std::size_t self_slot = static_cast<std::size_t>(EntityKind::kSelfAsset) * layout.per_kind_slots *
                                MapEncodingLayout::kFieldsPerSlot;
  double nonzero_outside = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < self_slot || i >= self_slot + MapEncodingLayout::kFieldsPerSlot) nonzero_outside += std::abs(v[i]);
  }
  EXPECT_EQ(nonzero_outside, 0.0);
  EXPECT_EQ(v[self_slot], 1.0);
}

TEST(StateMap, EncodingSlotsHoldNearestHostiles) {
  MapEncodingLayout layout;
  Entity self;
  self.position = {1000, 1000};
  StateMap m("self", self);
  std::vector<Entity> all{hostile("far", {4000, 4000}, 1), hostile("mid", {2000, 1500}, 1),
                          hostile("near", {1100, 1000}, 1)};
  for (const auto& e : all) m.upsert(e);
  const auto expected = testing::brute_nearest_ids(all, EntityKind::kHostile, self.position, 2);
  const auto got = query_nearest(m, EntityKind::kHostile, self.position, 2);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].id, expected[0]);
  EXPECT_EQ(got[1].id, expected[1]);

  // The far hostile must not influence the encoding.
  StateMap without("self", self);
  without.upsert(all[1]);
  without.upsert(all[2]);
  EXPECT_EQ(encode_state_map(m, layout), encode_state_map(without, layout));
}

TEST(StateMap, EncodingIsTranslationInvariant) {
  MapEncodingLayout layout;
  Entity self;
  self.position = {1000, 1200};
  StateMap a("self", self);
  a.upsert(hostile("h1", {1500, 1600}, 1));
  a.upsert(hostile("h2", {800, 2000}, 1));

  const Vec2 d{300, 300};
  MapEncodingLayout shifted = layout;
  shifted.normalization.min += d;
  shifted.normalization.max += d;
  Entity self2 = self;
  self2.position += d;
  StateMap b("self", self2);
  b.upsert(hostile("h1", Vec2{1500, 1600} + d, 1));
  b.upsert(hostile("h2", Vec2{800, 2000} + d, 1));

  const auto va = encode_state_map(a, layout);
  const auto vb = encode_state_map(b, shifted);
  ASSERT_EQ(va.size(), vb.size());
  for (std::size_t i = 0; i < va.size(); ++i) EXPECT_NEAR(va[i], vb[i], 1e-12) << i;
}

TEST(StateMap, QueryNearestCornerCases) {
  StateMap m = empty_map();
  Entity t1 = hostile("tb", {10, 0}, 1);
  t1.kind = EntityKind::kTarget;
  Entity t2 = hostile("ta", {-10, 0}, 1);
  t2.kind = EntityKind::kTarget;
  m.upsert(t1);
  m.upsert(t2);
  EXPECT_TRUE(query_nearest(m, EntityKind::kTarget, {0, 0}, 0).empty());
  const auto both = query_nearest(m, EntityKind::kTarget, {0, 0}, 5);
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both[0].id, "ta");
  EXPECT_EQ(both[1].id, "tb");
}

TEST(StateMap, QueryNearestMatchesExhaustiveSort) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(0, 5000);
  for (int trial = 0; trial < 50; ++trial) {
    StateMap m = empty_map();
    std::vector<Entity> all;
    for (int i = 0; i < 5; ++i) {
      all.push_back(hostile("h" + std::to_string(i), {c(rng), c(rng)}, 1));
      m.upsert(all.back());
    }
    const Vec2 o{c(rng), c(rng)};
    const auto expected = testing::brute_nearest_ids(all, EntityKind::kHostile, o, 3);
    const auto got = query_nearest(m, EntityKind::kHostile, o, 3);
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].id, expected[i]);
  }
}

TEST(StateMap, SelfCannotBeOverwrittenByPeers) {
  StateMap m = empty_map();
  Entity forged = hostile("self", {9, 9}, 100, "intruder");
  EXPECT_FALSE(m.upsert(forged));
  EXPECT_EQ(m.self().kind, EntityKind::kSelfAsset);
}

TEST(StateMap, RejectsNegativeTick) { EXPECT_THROW(StateMap("x", Entity{}, -1), InvalidObservation); }

TEST(Corpus, PerformanceLogIsStrictlyOrdered) {
  CognitiveCorpus c(empty_map());
  UtilityReport r;
  r.total = 0.5;
  corpus_record_performance(c, 1, r);
  EXPECT_EQ(c.performance_log.size(), 1u);
  corpus_record_performance(c, 9, r);
  EXPECT_THROW(corpus_record_performance(c, 9, r), PreconditionError);
}

TEST(Corpus, HundredAppendsKeepOrder) {
  CognitiveCorpus c(empty_map());
  for (Tick t = 0; t < 100; ++t) {
    UtilityReport r;
    r.total = static_cast<double>(t) / 100.0;
    corpus_record_performance(c, t, r);
  }
  ASSERT_EQ(c.performance_log.size(), 100u);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(c.performance_log[i].tick, static_cast<Tick>(i));
    EXPECT_DOUBLE_EQ(c.performance_log[i].report.total, static_cast<double>(i) / 100.0);
  }
}

TEST(Corpus, JsonRoundTrip) {
  StateMap m = empty_map();
  m.upsert(hostile("h1", {3, 4}, 2, "peer"));
  CognitiveCorpus c(m);
  c.mission.waypoints = {{1, 2}, {3, 4}};
  c.mission.max_ticks = 77;
  c.constraints.no_strike_ids = {"church"};
  c.constraints.geofence.push_back({{10, 10}, 5});
  UtilityReport r;
  r.total = 1.25;
  r.components.survival_frac = 1.0;
  corpus_record_performance(c, 3, r);
  c.personalities.push_back({"p1", "strike", "abc", 0.75});
  const CognitiveCorpus back = corpus_from_json(corpus_to_json(c));
  EXPECT_EQ(back.state_map, c.state_map);
  EXPECT_EQ(back.constraints, c.constraints);
  EXPECT_EQ(back.mission.waypoints, c.mission.waypoints);
  EXPECT_EQ(back.mission.max_ticks, 77);
  ASSERT_EQ(back.performance_log.size(), 1u);
  EXPECT_EQ(back.performance_log[0].report.total, 1.25);
  ASSERT_EQ(back.personalities.size(), 1u);
  EXPECT_EQ(back.personalities[0].id, "p1");
  EXPECT_EQ(corpus_to_json(back), corpus_to_json(c));
}

TEST(Corpus, RejectsUnknownKeys) { EXPECT_THROW(corpus_from_json(R"({"bogus": 1})"), ValidationError); }

}  // namespace
}  // namespace autosim
