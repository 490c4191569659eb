/*
 * Copyright 2026 The Birdseye Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BIRDSEYE_GRID_HPP_
#define BIRDSEYE_GRID_HPP_

#include <cassert>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace birdseye {

// Cell codes shared by every observation matrix.
//   -1 unknown (outside the camera FOV), 0 passable, 1 obstacle,
//    2 target (only when the target is inside the FOV).
enum class CellCode : std::int8_t {
  kUnknown = -1,
  kFree = 0,
  kObstacle = 1,
  kTarget = 2,
};

inline bool is_passable(CellCode c) {
  return c == CellCode::kFree || c == CellCode::kTarget;
}

// Grid position. Row-major, origin at the top-left corner.
struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline int manhattan(Cell a, Cell b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {
    assert(rows > 0 && cols > 0);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool in_bounds(int r, int c) const {
    return r >= 0 && r < rows_ && c >= 0 && c < cols_;
  }
  bool in_bounds(Cell c) const { return in_bounds(c.row, c.col); }

  T& operator()(int r, int c) {
    assert(in_bounds(r, c));
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) +
                 static_cast<size_t>(c)];
  }
  T operator()(int r, int c) const {
    assert(in_bounds(r, c));
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) +
                 static_cast<size_t>(c)];
  }
  T& operator()(Cell c) { return (*this)(c.row, c.col); }
  T operator()(Cell c) const { return (*this)(c.row, c.col); }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using CodeGrid = Grid<CellCode>;

// Camera footprint, in cells. Both extents odd so the vehicle can sit at the
// exact center.
struct FovSize {
  int rows = 0;
  int cols = 0;
  friend bool operator==(const FovSize&, const FovSize&) = default;
};

// Ground-truth environment. `cells` holds only kFree / kObstacle; the target
// marker appears only in masked observations.
struct GlobalMap {
  CodeGrid cells;
  Cell start;
  Cell target;
  std::uint64_t seed = 0;

  int rows() const { return cells.rows(); }
  int cols() const { return cells.cols(); }
};

// Validates the GlobalMap invariants: codes restricted to free/obstacle,
// start and target passable and distinct. Throws std::invalid_argument.
GlobalMap make_global_map(CodeGrid cells, Cell start, Cell target,
                          std::uint64_t seed = 0);

// 4-connected shortest-path length over passable cells (unknown cells are
// blocked). Empty when unreachable.
std::optional<int> bfs_distance(const CodeGrid& cells, Cell from, Cell to);

inline bool is_feasible(const GlobalMap& map) {
  return bfs_distance(map.cells, map.start, map.target).has_value();
}

// Masked view of a GlobalMap from a UAV pose.
struct MaskedObservation {
  CodeGrid o_g;     // global scale; kUnknown outside the FOV
  CodeGrid o_p;     // FOV window; kUnknown pads cells beyond the map edge
  Cell fov_origin;  // top-left of the (unclipped) FOV in map coordinates
};

// True when `cell` lies inside the FOV rectangle centered on `uav` (the
// rectangle is conceptually clipped at map edges, but a map cell inside the
// unclipped rectangle is always visible).
bool fov_contains(Cell uav, FovSize fov, Cell cell);

// Masks the map from the given UAV pose. FOV extents must be odd; the UAV
// must be inside the map. The target is re-coded to kTarget only when inside
// the FOV.
MaskedObservation mask(const GlobalMap& map, Cell uav, FovSize fov);

// Collapses a binary label image to an m-by-n grid by per-tile majority vote.
// Ties resolve to 1 (obstacle). Inputs must be exactly {0, 1}.
Grid<std::uint8_t> reduce_labels(const Grid<std::uint8_t>& labels, int grid_rows,
                                 int grid_cols);

}  // namespace birdseye

#endif  // BIRDSEYE_GRID_HPP_
