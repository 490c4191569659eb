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

#ifndef BIRDSEYE_ASTAR_HPP_
#define BIRDSEYE_ASTAR_HPP_

#include <optional>
#include <vector>

#include "birdseye/episode.hpp"
#include "birdseye/grid.hpp"

namespace birdseye {

using Path = std::vector<Cell>;  // start cell included; consecutive cells 4-adjacent

struct AstarOptions {
  // Unknown cells are blocked by default; the expert runs on fully known maps
  // and the baselines plan conservatively inside the visible region.
  bool unknown_traversable = false;
};

// 4-connected A* with Manhattan heuristic and unit step cost. Deterministic
// tie-breaking: lower f, then lower h, then first-pushed (neighbors expand in
// action order up, down, left, right). Returns nullopt when unreachable.
std::optional<Path> astar(const CodeGrid& cells, Cell start, Cell goal,
                          const AstarOptions& opts = {});

// Action sequence along a path (path[k] -> path[k+1]).
std::vector<Action> path_actions(const Path& path);

// Among visible passable cells reachable from `current` without leaving the
// visible region, returns the one with the smallest Manhattan distance to
// `target`; ties resolve row-major. The target itself may be outside the
// visible region. Returns nullopt when even `current` is not a visible
// passable cell.
std::optional<Cell> search_min_dis_to_target(const CodeGrid& masked, Cell current,
                                             Cell target);

}  // namespace birdseye

#endif  // BIRDSEYE_ASTAR_HPP_
