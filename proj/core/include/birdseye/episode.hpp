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

#ifndef BIRDSEYE_EPISODE_HPP_
#define BIRDSEYE_EPISODE_HPP_

#include <array>
#include <vector>

#include "birdseye/grid.hpp"

namespace birdseye {

// Discrete motion commands. The convention is fixed project-wide:
// up = row-1, down = row+1, left = col-1, right = col+1.
enum class Action : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

inline constexpr std::array<Action, 4> kAllActions = {
    Action::kUp, Action::kDown, Action::kLeft, Action::kRight};

inline Cell apply_action(Cell c, Action a) {
  switch (a) {
    case Action::kUp:
      return {c.row - 1, c.col};
    case Action::kDown:
      return {c.row + 1, c.col};
    case Action::kLeft:
      return {c.row, c.col - 1};
    case Action::kRight:
      return {c.row, c.col + 1};
  }
  return c;
}

// Planning phases. kJoint: UAV and UGV move together, UGV at the FOV center.
// kHover: the target has entered the FOV, the UAV stays put and the UGV
// finishes alone. Serialized as "I" / "II".
enum class Mode { kJoint, kHover };

inline constexpr int kDefaultStepCap = 40;

struct EpisodeParams {
  FovSize fov;
  int step_cap = kDefaultStepCap;
  // When false the sight-triggered switch to kHover is suppressed and the
  // UAV shadows the UGV for the whole episode (the memory-always ablation).
  bool hover_on_sight = true;
};

struct EpisodeState {
  Cell ugv;
  Cell uav;
  int step = 0;
  int collisions = 0;
  Mode mode = Mode::kJoint;
  bool done = false;
  bool reached = false;  // done via target arrival, not via the step cap
};

// Why an episode ended. kNoModeSwitch marks step-cap failures where the
// target never entered the FOV; kNoLocalPath marks a visible target with no
// route inside the current FOV; kLeftFov marks a UGV that walked out of the
// hovering camera's view.
enum class FailureReason {
  kNone,
  kStepCap,
  kNoModeSwitch,
  kDeadEnd,
  kNoLocalPath,
  kLeftFov,
};

struct EpisodeOutcome {
  bool success = false;
  int steps = 0;
  int collisions = 0;
  std::vector<Cell> trajectory;  // UGV cells, start included
  FailureReason reason = FailureReason::kNone;
};

// Fresh episode at the map's start cell. Switches straight to kHover when the
// target is already visible from the start pose.
EpisodeState make_episode(const GlobalMap& map, const EpisodeParams& params);

// Advances one time step. Blocked moves (obstacle or map edge) keep the
// position and count a collision. The UAV follows the UGV in kJoint mode and
// freezes in kHover mode. The mode switch is monotone: once the target is in
// view, the episode stays in kHover. Throws std::logic_error on a done state.
EpisodeState step(const EpisodeState& state, const GlobalMap& map,
                  const EpisodeParams& params, Action action);

}  // namespace birdseye

#endif  // BIRDSEYE_EPISODE_HPP_
