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


#include "autosim/constraints.hpp"

#include <cmath>

namespace autosim {

void validate(const ConstraintSet& c, const std::string& prefix) {
  if (!(c.max_speed_cmd >= 0.0 && c.max_speed_cmd <= 1.0)) {
    throw ValidationError(prefix + ".max_speed_cmd", "must be in [0, 1]");
  }
  if (!(c.max_heading_rate >= 0.0 && c.max_heading_rate <= 1.0)) {
    throw ValidationError(prefix + ".max_heading_rate", "must be in [0, 1]");
  }
  for (std::size_t i = 0; i < c.geofence.size(); ++i) {
    const Circle& g = c.geofence[i];
    if (!g.center.finite() || !(g.radius > 0.0) || !std::isfinite(g.radius)) {
      throw ValidationError(prefix + ".geofence[" + std::to_string(i) + "]", "needs a finite center and radius > 0");
    }
  }
  if (c.min_countermeasures_reserve < 0) {
    throw ValidationError(prefix + ".min_countermeasures_reserve", "must be >= 0");
  }
}

}  // namespace autosim
