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

#include "birdseye/astar.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <queue>
#include <stdexcept>

namespace birdseye {

namespace {

bool traversable(CellCode code, const AstarOptions& opts) {
  if (code == CellCode::kObstacle) return false;
  if (code == CellCode::kUnknown) return opts.unknown_traversable;
  return true;
}

struct OpenEntry {
  int f;
  int h;
  std::uint64_t order;  // push counter; earlier pushes win ties
  int index;            // row * cols + col

  bool operator>(const OpenEntry& other) const {
    if (f != other.f) return f > other.f;
    if (h != other.h) return h > other.h;
    return order > other.order;
  }
};

}  // namespace

std::optional<Path> astar(const CodeGrid& cells, Cell start, Cell goal,
                          const AstarOptions& opts) {
  if (!cells.in_bounds(start) || !cells.in_bounds(goal)) {
    throw std::invalid_argument("astar endpoints out of bounds");
  }
  if (!traversable(cells(start), opts) || !traversable(cells(goal), opts)) {
    return std::nullopt;
  }
  const int cols = cells.cols();
  auto to_index = [cols](Cell c) { return c.row * cols + c.col; };

  Grid<int> g_cost(cells.rows(), cells.cols(), -1);
  Grid<int> parent(cells.rows(), cells.cols(), -1);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open;
  std::uint64_t push_counter = 0;

  g_cost(start) = 0;
  open.push({manhattan(start, goal), manhattan(start, goal), push_counter++,
             to_index(start)});

  static constexpr int kDr[4] = {-1, 1, 0, 0};
  static constexpr int kDc[4] = {0, 0, -1, 1};

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const Cell cur{top.index / cols, top.index % cols};
    const int cur_g = top.f - top.h;
    if (cur_g != g_cost(cur)) continue;  // stale entry
    if (cur == goal) break;
    for (int a = 0; a < 4; ++a) {
      const Cell next{cur.row + kDr[a], cur.col + kDc[a]};
      if (!cells.in_bounds(next) || !traversable(cells(next), opts)) continue;
      const int tentative = cur_g + 1;
      if (g_cost(next) >= 0 && g_cost(next) <= tentative) continue;
      g_cost(next) = tentative;
      parent(next) = top.index;
      const int h = manhattan(next, goal);
      open.push({tentative + h, h, push_counter++, to_index(next)});
    }
  }

  if (g_cost(goal) < 0) return std::nullopt;
  Path path;
  for (int idx = to_index(goal); idx >= 0; idx = parent(Cell{idx / cols, idx % cols})) {
    path.push_back({idx / cols, idx % cols});
    if (Cell{idx / cols, idx % cols} == start) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Action> path_actions(const Path& path) {
  std::vector<Action> actions;
  actions.reserve(path.size() > 0 ? path.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int dr = path[i + 1].row - path[i].row;
    const int dc = path[i + 1].col - path[i].col;
    if (dr == -1 && dc == 0) actions.push_back(Action::kUp);
    else if (dr == 1 && dc == 0) actions.push_back(Action::kDown);
    else if (dr == 0 && dc == -1) actions.push_back(Action::kLeft);
    else if (dr == 0 && dc == 1) actions.push_back(Action::kRight);
    else throw std::invalid_argument("path cells are not 4-adjacent");
  }
  return actions;
}

std::optional<Cell> search_min_dis_to_target(const CodeGrid& masked, Cell current,
                                             Cell target) {
  if (!masked.in_bounds(current)) {
    throw std::invalid_argument("current cell out of bounds");
  }
  if (!is_passable(masked(current))) return std::nullopt;

  // Flood the visible passable region, then take the argmin by (distance to
  // target, row, col).
  Grid<std::uint8_t> seen(masked.rows(), masked.cols(), 0);
  std::deque<Cell> queue{current};
  seen(current) = 1;
  Cell best = current;
  int best_dist = manhattan(current, target);
  static constexpr int kDr[4] = {-1, 1, 0, 0};
  static constexpr int kDc[4] = {0, 0, -1, 1};
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    const int d = manhattan(cur, target);
    if (d < best_dist || (d == best_dist && cur < best)) {
      best = cur;
      best_dist = d;
    }
    for (int a = 0; a < 4; ++a) {
      const Cell next{cur.row + kDr[a], cur.col + kDc[a]};
      if (!masked.in_bounds(next) || seen(next) || !is_passable(masked(next))) {
        continue;
      }
      seen(next) = 1;
      queue.push_back(next);
    }
  }
  return best;
}

}  // namespace birdseye
