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

#include "birdseye/episode.hpp"

#include <stdexcept>

namespace birdseye {

EpisodeState make_episode(const GlobalMap& map, const EpisodeParams& params) {
  EpisodeState state;
  state.ugv = map.start;
  state.uav = map.start;
  state.mode = params.hover_on_sight &&
                       fov_contains(state.uav, params.fov, map.target)
                   ? Mode::kHover
                   : Mode::kJoint;
  return state;
}

EpisodeState step(const EpisodeState& state, const GlobalMap& map,
                  const EpisodeParams& params, Action action) {
  if (state.done) throw std::logic_error("step() on a finished episode");
  EpisodeState next = state;
  const Cell moved = apply_action(state.ugv, action);
  if (!map.cells.in_bounds(moved) || map.cells(moved) == CellCode::kObstacle) {
    ++next.collisions;  // blocked move: stay in place
  } else {
    next.ugv = moved;
    if (state.mode == Mode::kJoint) next.uav = moved;
  }
  ++next.step;
  if (next.ugv == map.target) {
    next.done = true;
    next.reached = true;
  } else if (next.step >= params.step_cap) {
    next.done = true;
  }
  if (params.hover_on_sight && next.mode == Mode::kJoint &&
      fov_contains(next.uav, params.fov, map.target)) {
    next.mode = Mode::kHover;
  }
  return next;
}

}  // namespace birdseye
