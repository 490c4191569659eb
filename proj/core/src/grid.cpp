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

#include "birdseye/grid.hpp"

#include <deque>
#include <stdexcept>

namespace birdseye {

GlobalMap make_global_map(CodeGrid cells, Cell start, Cell target,
                          std::uint64_t seed) {
  if (cells.rows() == 0 || cells.cols() == 0) {
    throw std::invalid_argument("empty map");
  }
  for (CellCode c : cells.data()) {
    if (c != CellCode::kFree && c != CellCode::kObstacle) {
      throw std::invalid_argument("global map cells must be free or obstacle");
    }
  }
  if (!cells.in_bounds(start) || !cells.in_bounds(target)) {
    throw std::invalid_argument("start/target out of bounds");
  }
  if (cells(start) != CellCode::kFree || cells(target) != CellCode::kFree) {
    throw std::invalid_argument("start/target must be passable");
  }
  if (start == target) throw std::invalid_argument("start equals target");
  return GlobalMap{std::move(cells), start, target, seed};
}

std::optional<int> bfs_distance(const CodeGrid& cells, Cell from, Cell to) {
  if (!cells.in_bounds(from) || !cells.in_bounds(to)) return std::nullopt;
  if (!is_passable(cells(from)) || !is_passable(cells(to))) return std::nullopt;
  if (from == to) return 0;
  Grid<int> dist(cells.rows(), cells.cols(), -1);
  dist(from) = 0;
  std::deque<Cell> queue{from};
  static constexpr int kDr[4] = {-1, 1, 0, 0};
  static constexpr int kDc[4] = {0, 0, -1, 1};
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    for (int a = 0; a < 4; ++a) {
      const Cell next{cur.row + kDr[a], cur.col + kDc[a]};
      if (!cells.in_bounds(next) || !is_passable(cells(next))) continue;
      if (dist(next) >= 0) continue;
      dist(next) = dist(cur) + 1;
      if (next == to) return dist(next);
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

bool fov_contains(Cell uav, FovSize fov, Cell cell) {
  const int half_r = (fov.rows - 1) / 2;
  const int half_c = (fov.cols - 1) / 2;
  return std::abs(cell.row - uav.row) <= half_r &&
         std::abs(cell.col - uav.col) <= half_c;
}

MaskedObservation mask(const GlobalMap& map, Cell uav, FovSize fov) {
  if (!map.cells.in_bounds(uav)) throw std::invalid_argument("UAV out of bounds");
  if (fov.rows <= 0 || fov.cols <= 0 || fov.rows % 2 == 0 || fov.cols % 2 == 0) {
    throw std::invalid_argument("FOV extents must be positive and odd");
  }
  MaskedObservation obs;
  obs.fov_origin = Cell{uav.row - (fov.rows - 1) / 2, uav.col - (fov.cols - 1) / 2};
  obs.o_g = CodeGrid(map.rows(), map.cols(), CellCode::kUnknown);
  obs.o_p = CodeGrid(fov.rows, fov.cols, CellCode::kUnknown);
  for (int i = 0; i < fov.rows; ++i) {
    for (int j = 0; j < fov.cols; ++j) {
      const Cell world{obs.fov_origin.row + i, obs.fov_origin.col + j};
      if (!map.cells.in_bounds(world)) continue;  // edge padding stays unknown
      CellCode code = map.cells(world);
      if (world == map.target) code = CellCode::kTarget;
      obs.o_p(i, j) = code;
      obs.o_g(world) = code;
    }
  }
  return obs;
}

Grid<std::uint8_t> reduce_labels(const Grid<std::uint8_t>& labels, int grid_rows,
                                 int grid_cols) {
  if (grid_rows <= 0 || grid_cols <= 0 || labels.rows() < grid_rows ||
      labels.cols() < grid_cols) {
    throw std::invalid_argument("grid must be no larger than the label image");
  }
  for (std::uint8_t v : labels.data()) {
    if (v > 1) throw std::invalid_argument("labels must be binary");
  }
  Grid<std::uint8_t> out(grid_rows, grid_cols, 0);
  const int h = labels.rows();
  const int w = labels.cols();
  for (int i = 0; i < grid_rows; ++i) {
    const int r0 = i * h / grid_rows;
    const int r1 = (i + 1) * h / grid_rows;
    for (int j = 0; j < grid_cols; ++j) {
      const int c0 = j * w / grid_cols;
      const int c1 = (j + 1) * w / grid_cols;
      int ones = 0;
      for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) ones += labels(r, c);
      }
      const int total = (r1 - r0) * (c1 - c0);
      out(i, j) = (2 * ones >= total) ? 1 : 0;  // tie -> obstacle
    }
  }
  return out;
}

}  // namespace birdseye
