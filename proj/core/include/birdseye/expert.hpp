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

#ifndef BIRDSEYE_EXPERT_HPP_
#define BIRDSEYE_EXPERT_HPP_

#include <cstdint>
#include <vector>

#include "birdseye/astar.hpp"
#include "birdseye/episode.hpp"
#include "birdseye/grid.hpp"

namespace birdseye {

// One imitation-learning sample. In kJoint mode `obs` is the masked global
// matrix; after the switch it is the FOV window, and `ugv_local` locates the
// vehicle inside that window (the window no longer tracks it).
struct ExpertSample {
  std::uint64_t scenario_id = 0;
  int step_index = 0;
  Mode mode = Mode::kJoint;
  CodeGrid obs;
  Cell ugv_local;  // kHover only; {0,0} placeholder in kJoint samples
  Action action = Action::kUp;
};

// Rolls the optimal full-map path forward through the masked dynamics and
// records (observation, optimal action) at every step. The plan is computed
// once on the full map; observations are re-masked per pose as the pair
// advances. Maps must be feasible.
std::vector<ExpertSample> expert_samples(const GlobalMap& map, FovSize fov,
                                         std::uint64_t scenario_id);

std::vector<ExpertSample> generate_dataset(const std::vector<GlobalMap>& suite,
                                           FovSize fov);

}  // namespace birdseye

#endif  // BIRDSEYE_EXPERT_HPP_
