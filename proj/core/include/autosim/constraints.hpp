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
#include <set>
#include <string>
#include <vector>

#include "autosim/common.hpp"

namespace autosim {

struct Circle {
  Vec2 center;
  double radius = 0.0;
  bool operator==(const Circle&) const = default;
};

/// Not-to-violate parameters applied to every ensembler output.
struct ConstraintSet {
  double max_speed_cmd = 1.0;     // [0, 1]
  double max_heading_rate = 1.0;  // [0, 1]
  std::vector<Circle> geofence;
  std::set<std::string> no_strike_ids;
  bool weapons_free = true;
  std::int64_t min_countermeasures_reserve = 0;

  bool operator==(const ConstraintSet&) const = default;
};

/// Throws ValidationError naming the offending field.
void validate(const ConstraintSet& c, const std::string& prefix = "constraints");

}  // namespace autosim
