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
#include <optional>
#include <span>
#include <vector>

#include "autosim/common.hpp"
#include "autosim/constraints.hpp"

namespace autosim {

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

/// Occupancy grid over a planar region. Row r, column c covers
/// [origin + (c, r) * cell_size, origin + (c + 1, r + 1) * cell_size).
class PlanGrid {
 public:
  PlanGrid(int width, int height, double cell_size = 1.0, Vec2 origin = {});

  [[nodiscard]] int width() const { return width_; }
  [[nodiscard]] int height() const { return height_; }
  [[nodiscard]] double cell_size() const { return cell_size_; }
  [[nodiscard]] Vec2 origin() const { return origin_; }

  [[nodiscard]] bool inside(Cell c) const {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  [[nodiscard]] bool blocked(Cell c) const { return blocked_[index(c)] != 0; }
  void set_blocked(Cell c, bool value = true) { blocked_[index(c)] = value ? 1 : 0; }

  [[nodiscard]] std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.col);
  }
  [[nodiscard]] Cell cell_of(Vec2 p) const;
  [[nodiscard]] Vec2 center_of(Cell c) const;

  /// Blocks every cell whose center lies within radius + margin of a circle.
  void block_circles(std::span<const Circle> circles, double margin);

 private:
  int width_;
  int height_;
  double cell_size_;
  Vec2 origin_;
  std::vector<std::uint8_t> blocked_;
};

struct GridPath {
  std::vector<Cell> cells;
  double cost = 0.0;
};

inline constexpr double kDiagonalCost = 1.4142135623730951;

/// Octile distance between cells (straight 1, diagonal √2).
double octile_distance(Cell a, Cell b);

/// 8-connected A* under the octile metric. Diagonal steps may not cut a
/// blocked corner. Open-list ties resolve by f, then h, then row-major index.
/// Returns nullopt when the goal is blocked or unreachable; throws
/// PreconditionError if start or goal lies outside the grid or start is blocked.
std::optional<GridPath> plan_path_astar(const PlanGrid& grid, Cell start, Cell goal);

/// Drops interior cells that are collinear with their neighbours.
std::vector<Cell> compress_path(const std::vector<Cell>& cells);

}  // namespace autosim
