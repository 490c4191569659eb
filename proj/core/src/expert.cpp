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

#include "birdseye/expert.hpp"

#include <stdexcept>

namespace birdseye {

std::vector<ExpertSample> expert_samples(const GlobalMap& map, FovSize fov,
                                         std::uint64_t scenario_id) {
  const auto plan = astar(map.cells, map.start, map.target);
  if (!plan) {
    throw std::runtime_error("expert rollout on an infeasible map");
  }
  const auto actions = path_actions(*plan);

  // The expert ignores the step cap; give it room for the full plan.
  EpisodeParams params{fov, static_cast<int>(actions.size()) + 1};
  EpisodeState state = make_episode(map, params);

  std::vector<ExpertSample> samples;
  samples.reserve(actions.size());
  for (const Action action : actions) {
    const MaskedObservation obs = mask(map, state.uav, fov);
    ExpertSample sample;
    sample.scenario_id = scenario_id;
    sample.step_index = state.step;
    sample.mode = state.mode;
    sample.action = action;
    if (state.mode == Mode::kJoint) {
      sample.obs = obs.o_g;
    } else {
      sample.obs = obs.o_p;
      sample.ugv_local = Cell{state.ugv.row - obs.fov_origin.row,
                              state.ugv.col - obs.fov_origin.col};
    }
    samples.push_back(std::move(sample));
    state = step(state, map, params, action);
  }
  if (!state.reached) {
    throw std::logic_error("expert replay did not reach the target");
  }
  return samples;
}

std::vector<ExpertSample> generate_dataset(const std::vector<GlobalMap>& suite,
                                           FovSize fov) {
  std::vector<ExpertSample> dataset;
  std::uint64_t scenario_id = 0;
  for (const GlobalMap& map : suite) {
    auto samples = expert_samples(map, fov, scenario_id++);
    dataset.insert(dataset.end(), std::make_move_iterator(samples.begin()),
                   std::make_move_iterator(samples.end()));
  }
  return dataset;
}

}  // namespace birdseye
