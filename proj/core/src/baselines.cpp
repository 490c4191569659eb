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

#include "birdseye/baselines.hpp"

#include <stdexcept>

#include "birdseye/astar.hpp"

namespace birdseye {

namespace {

struct Runner {
  const GlobalMap& map;
  EpisodeParams params;
  EpisodeState state;
  EpisodeOutcome outcome;

  Runner(const GlobalMap& m, FovSize fov, int step_cap)
      : map(m), params{fov, step_cap}, state(make_episode(m, params)) {
    outcome.trajectory.push_back(state.ugv);
  }

  MaskedObservation observe() const { return mask(map, state.uav, params.fov); }

  // Executes actions until the list ends or the episode finishes.
  void execute(const std::vector<Action>& actions) {
    for (const Action a : actions) {
      if (state.done) return;
      state = step(state, map, params, a);
      outcome.trajectory.push_back(state.ugv);
    }
  }

  EpisodeOutcome finish(FailureReason reason_if_failed) {
    outcome.success = state.reached;
    outcome.steps = state.step;
    outcome.collisions = state.collisions;
    if (!state.reached) {
      if (reason_if_failed != FailureReason::kNone) {
        outcome.reason = reason_if_failed;
      } else {
        outcome.reason = state.mode == Mode::kJoint ? FailureReason::kNoModeSwitch
                                                    : FailureReason::kStepCap;
      }
    }
    return outcome;
  }
};

bool target_visible(const MaskedObservation& obs, const GlobalMap& map) {
  return obs.o_g(map.target) == CellCode::kTarget;
}

// Final approach once the target is inside the FOV: plan within the current
// view only (past observations are discarded) and run the path out.
EpisodeOutcome approach_visible_target(Runner& run) {
  const MaskedObservation obs = run.observe();
  const auto plan = astar(obs.o_g, run.state.ugv, run.map.target);
  if (!plan) return run.finish(FailureReason::kNoLocalPath);
  run.execute(path_actions(*plan));
  return run.finish(FailureReason::kNone);
}

}  // namespace

EpisodeOutcome run_tb1(const GlobalMap& map, FovSize fov, int step_cap) {
  Runner run(map, fov, step_cap);

  int stalled_iterations = 0;
  // The first leg runs before any visibility check; afterwards re-observe and
  // repeat while the target stays out of view.
  bool first_leg = true;
  while (!run.state.done) {
    const MaskedObservation obs = run.observe();
    if (!first_leg && target_visible(obs, map)) {
      return approach_visible_target(run);
    }
    first_leg = false;

    const auto midpoint =
        search_min_dis_to_target(obs.o_g, run.state.ugv, map.target);
    if (!midpoint) return run.finish(FailureReason::kDeadEnd);
    if (*midpoint == run.state.ugv) {
      if (++stalled_iterations >= 2) return run.finish(FailureReason::kDeadEnd);
      continue;
    }
    stalled_iterations = 0;
    const auto plan = astar(obs.o_g, run.state.ugv, *midpoint);
    if (!plan) return run.finish(FailureReason::kDeadEnd);
    run.execute(path_actions(*plan));
  }
  return run.finish(FailureReason::kNone);
}

EpisodeOutcome run_tb2(const GlobalMap& map, FovSize fov, int step_cap) {
  Runner run(map, fov, step_cap);

  // Single-step replanning from the vehicle's true position. Greedy
  // midpoint reselection under a moving view is what produces the circular
  // decisions on trap maps: a freshly revealed cell near the view edge
  // pulls the plan one way, the first step of the detour hides it again,
  // and the vehicle flip-flops until the cap. A midpoint equal to the
  // vehicle gives an empty sub-path, which would repeat forever without
  // consuming steps; it ends the episode as kDeadEnd instead.
  bool first_leg = true;
  while (!run.state.done) {
    const MaskedObservation obs = run.observe();
    if (!first_leg && target_visible(obs, map)) {
      return approach_visible_target(run);
    }
    first_leg = false;

    const auto midpoint =
        search_min_dis_to_target(obs.o_g, run.state.ugv, map.target);
    if (!midpoint) return run.finish(FailureReason::kDeadEnd);
    const auto plan = astar(obs.o_g, run.state.ugv, *midpoint);
    if (!plan || plan->size() < 2) return run.finish(FailureReason::kDeadEnd);
    run.execute({path_actions(*plan).front()});
  }
  return run.finish(FailureReason::kNone);
}

EpisodeOutcome run_expert(const GlobalMap& map, FovSize fov, int step_cap) {
  Runner run(map, fov, step_cap);
  const auto plan = astar(map.cells, map.start, map.target);
  if (!plan) throw std::invalid_argument("expert run on an infeasible map");
  run.execute(path_actions(*plan));
  return run.finish(FailureReason::kNone);
}

}  // namespace birdseye
