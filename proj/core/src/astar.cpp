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

#include "autosim/astar.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace autosim {

PlanGrid::PlanGrid(int width, int height, double cell_size, Vec2 origin)
    : width_(width), height_(height), cell_size_(cell_size), origin_(origin) {
  if (width <= 0 || height <= 0) throw PreconditionError("PlanGrid: dimensions must be positive");
  if (!(cell_size > 0.0)) throw PreconditionError("PlanGrid: cell size must be positive");
  blocked_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

Cell PlanGrid::cell_of(Vec2 p) const {
  const int col = static_cast<int>(std::floor((p.x - origin_.x) / cell_size_));
  const int row = static_cast<int>(std::floor((p.y - origin_.y) / cell_size_));
  return {std::clamp(row, 0, height_ - 1), std::clamp(col, 0, width_ - 1)};
}

Vec2 PlanGrid::center_of(Cell c) const {
  return {origin_.x + (c.col + 0.5) * cell_size_, origin_.y + (c.row + 0.5) * cell_size_};
}

void PlanGrid::block_circles(std::span<const Circle> circles, double margin) {
  for (const auto& circle : circles) {
    const double r = circle.radius + margin;
    const Cell lo = cell_of(circle.center - Vec2{r, r});
    const Cell hi = cell_of(circle.center + Vec2{r, r});
    for (int row = lo.row; row <= hi.row; ++row) {
      for (int col = lo.col; col <= hi.col; ++col) {
        if (distance(center_of({row, col}), circle.center) <= r) set_blocked({row, col});
      }
    }
  }
}

double octile_distance(Cell a, Cell b) {
  const double dx = std::abs(a.col - b.col);
  const double dy = std::abs(a.row - b.row);
  return std::max(dx, dy) + (kDiagonalCost - 1.0) * std::min(dx, dy);
}

std::optional<GridPath> plan_path_astar(const PlanGrid& grid, Cell start, Cell goal) {
  if (!grid.inside(start) || !grid.inside(goal)) {
    throw PreconditionError("plan_path_astar: start or goal outside grid");
  }
  if (grid.blocked(start)) throw PreconditionError("plan_path_astar: start cell is blocked");
  if (grid.blocked(goal)) return std::nullopt;

  const std::size_t n = static_cast<std::size_t>(grid.width()) * static_cast<std::size_t>(grid.height());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> g(n, kInf);
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);

  // (f, h, row-major index)
  using Key = std::tuple<double, double, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> open;

  const std::size_t s = grid.index(start);
  g[s] = 0.0;
  const double h0 = octile_distance(start, goal);
  open.emplace(h0, h0, s);

  auto cell_at = [&](std::size_t idx) {
    return Cell{static_cast<int>(idx / static_cast<std::size_t>(grid.width())),
                static_cast<int>(idx % static_cast<std::size_t>(grid.width()))};
  };

  const std::size_t goal_idx = grid.index(goal);
  while (!open.empty()) {
    const auto [f, h, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = 1;
    if (idx == goal_idx) break;
    const Cell cur = cell_at(idx);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const Cell next{cur.row + dr, cur.col + dc};
        if (!grid.inside(next) || grid.blocked(next)) continue;
        const bool diagonal = dr != 0 && dc != 0;
        if (diagonal && (grid.blocked({cur.row + dr, cur.col}) || grid.blocked({cur.row, cur.col + dc}))) {
          continue;
        }
        const std::size_t ni = grid.index(next);
        if (closed[ni]) continue;
        const double cand = g[idx] + (diagonal ? kDiagonalCost : 1.0);
        if (cand < g[ni]) {
          g[ni] = cand;
          parent[ni] = static_cast<std::int64_t>(idx);
          const double nh = octile_distance(next, goal);
          open.emplace(cand + nh, nh, ni);
        }
      }
    }
  }
  if (!closed[goal_idx]) return std::nullopt;

  GridPath path;
  path.cost = g[goal_idx];
  for (auto idx = static_cast<std::int64_t>(goal_idx); idx >= 0; idx = parent[static_cast<std::size_t>(idx)]) {
    path.cells.push_back(cell_at(static_cast<std::size_t>(idx)));
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

std::vector<Cell> compress_path(const std::vector<Cell>& cells) {
  if (cells.size() <= 2) return cells;
  std::vector<Cell> out{cells.front()};
  for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
    const int dr0 = cells[i].row - cells[i - 1].row;
    const int dc0 = cells[i].col - cells[i - 1].col;
    const int dr1 = cells[i + 1].row - cells[i].row;
    const int dc1 = cells[i + 1].col - cells[i].col;
    if (dr0 != dr1 || dc0 != dc1) out.push_back(cells[i]);
  }
  out.push_back(cells.back());
  return out;
}

}  // namespace autosim
